#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aml/model.hpp"
#include "aml/pattern.hpp"
#include "aml/semantics.hpp"
#include "aml/syntax.hpp"

namespace aml {

enum class Rule {
  Taut,
  Hyp,
  AxExists,
  AxPropBotL,
  AxPropBotR,
  AxPropOrL,
  AxPropOrR,
  AxPropExistsL,
  AxPropExistsR,
  AxPreFixpoint,
  AxExistence,
  AxSingleton,
  MP,
  GenExists,
  FrameL,
  FrameR,
  SubstSet,
  KT,
};

/// Script keyword, e.g. "ax.prop-or-l".
std::string_view keyword(Rule r);
bool is_axiom(Rule r);

struct Justification {
  Rule rule = Rule::Taut;
  std::string hyp;                 // Hyp
  std::uint32_t x = 0;             // AxExists bound variable, AxSingleton variable
  std::uint32_t y = 0;             // AxExists witness
  std::uint32_t set_var = 0;       // SubstSet
  std::optional<Pattern> pattern;  // AxSingleton body (optional), SubstSet replacement
  std::size_t i = 0;               // 1-based line references
  std::size_t j = 0;

  std::vector<std::size_t> references() const;
  std::string text() const;
};

struct ProofLine {
  std::size_t number;
  Pattern pattern;
  Justification just;
  std::size_t source_line = 0;  // line in the script file, 0 if synthesized
};

struct Hypothesis {
  std::string name;
  Pattern pattern;
};

struct ProofScript {
  std::vector<Hypothesis> hypotheses;
  std::vector<ProofLine> lines;

  const Hypothesis* find_hypothesis(std::string_view name) const;
  std::vector<Pattern> gamma() const;
};

/// Throws SyntaxError, ForwardReference or UnknownHypothesis with the file
/// line; pattern errors keep their own code and gain the line. `preset`
/// hypotheses (e.g. from separate files) are visible to `hyp` steps.
ProofScript parse_proof(std::string_view text, const Signature& sig,
                        const std::vector<Hypothesis>& preset = {});
std::string render_proof(const ProofScript& script);

/// Constants used anywhere in the script.
Signature signature_of(const ProofScript& script);

enum class Level { Strong, Local, Global };
std::string_view to_string(Level l);
ConsequenceKind consequence_kind(Level l);

/// Stable rejection reason codes.
namespace reason {
inline constexpr std::string_view kShapeMismatch = "shape-mismatch";
inline constexpr std::string_view kNotTautology = "not-tautology";
inline constexpr std::string_view kSkeletonTooLarge = "skeleton-too-large";
inline constexpr std::string_view kNotFreeFor = "not-free-for";
inline constexpr std::string_view kSideConditionFv = "side-condition-fv";
inline constexpr std::string_view kNotPositive = "not-positive";
inline constexpr std::string_view kPremiseMismatch = "premise-mismatch";
inline constexpr std::string_view kPremiseRejected = "premise-rejected";
inline constexpr std::string_view kBadReference = "bad-reference";
inline constexpr std::string_view kNoSingletonContext = "no-singleton-context";
inline constexpr std::string_view kUnknownHypothesis = "unknown-hypothesis";
}  // namespace reason

struct LineVerdict {
  std::size_t number;
  bool accepted;
  std::string reason;  // empty when accepted
  std::string detail;
};

struct CheckReport {
  std::vector<LineVerdict> lines;
  bool overall = true;
  Level level = Level::Strong;
};

/// Checks an axiom instance. nullopt means accepted.
std::optional<LineVerdict> check_axiom(const Pattern& p, const Justification& j,
                                       const ProofScript& script);
/// Checks a rule application against earlier lines. `earlier[k]` holds line
/// k+1 and `accepted[k]` its verdict.
std::optional<LineVerdict> check_rule(const Pattern& p, const Justification& j,
                                      const std::vector<Pattern>& earlier,
                                      const std::vector<bool>& accepted);

Level level_of(const ProofScript& script);
CheckReport check_proof(const ProofScript& script);

std::string render_report(const CheckReport& report);
nlohmann::json report_to_json(const CheckReport& report);

/// Appends taut φ↔ψ; taut (φ↔ψ)→(φ→ψ); mp; mp, proving ψ from line i.
/// Throws NotTautEquiv when φ↔ψ is not a tautology, OutOfRange for a bad i.
ProofScript derived_taut_equiv(const ProofScript& script, std::size_t i, const Pattern& psi);

struct Violation {
  std::size_t line;
  Pattern pattern;
  Counterexample counterexample;
};

struct AuditReport {
  ConsequenceKind kind = ConsequenceKind::Strong;
  std::size_t lines_audited = 0;
  std::size_t structures = 0;
  std::vector<Violation> violations;
};

/// For each line the report marks accepted, checks Γ ⊨ φ for the report's
/// level over the suite. The report is taken as given, so a tampered report
/// exercises the auditor itself.
AuditReport audit_soundness(const ProofScript& script, const CheckReport& report,
                            const std::vector<Structure>& suite);

}  // namespace aml
