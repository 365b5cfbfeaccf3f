#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "aml/model.hpp"
#include "aml/pattern.hpp"
#include "aml/syntax.hpp"

namespace aml {

struct EvalResult {
  Subset value;
  bool satisfied;
};

/// ē(p) under structure s and valuation e. Mu is the intersection of all
/// prefixpoints over every subset, with no positivity requirement.
Subset evaluate(const Structure& s, const Valuation& e, const Pattern& p,
                std::size_t cap = kDefaultEnumerationCap);
EvalResult evaluate_result(const Structure& s, const Valuation& e, const Pattern& p,
                           std::size_t cap = kDefaultEnumerationCap);

/// Union of all D with D ⊆ ē_{X↦D}(body).
Subset evaluate_nu_direct(const Structure& s, const Valuation& e, std::uint32_t X,
                          const Pattern& body, std::size_t cap = kDefaultEnumerationCap);

/// B ↦ ē_{X↦B}(body).
SetFunction set_function(const Structure& s, const Valuation& e, std::uint32_t X,
                         const Pattern& body, std::size_t cap = kDefaultEnumerationCap);

bool satisfies(const Structure& s, const Valuation& e, const Pattern& p);

/// Calls `visit` with every valuation that differs from `base` only on the
/// given variables, ranging over all of A / 2^A. Stops when visit returns false.
/// Returns false iff stopped early.
bool for_each_valuation(const Structure& s, const VarSets& vars, const Valuation& base,
                        const std::function<bool(const Valuation&)>& visit,
                        std::size_t cap = kDefaultEnumerationCap);

/// A ⊨ p: satisfied under every assignment to FV(p).
bool models(const Structure& s, const Pattern& p);
/// First FV-assignment under which p is not satisfied.
std::optional<Valuation> find_unsatisfying(const Structure& s, const Pattern& p);

bool is_predicate(const Structure& s, const Pattern& p);

// ---------------------------------------------------------------------------
// Tautologies

/// Propositional skeleton over → and ⊥. Atoms are the maximal subpatterns that
/// are neither implications nor μX.X shapes.
struct Skeleton {
  enum class Op : std::uint8_t { Bot, Atom, Imp };
  struct Node {
    Op op;
    std::uint32_t atom = 0;     // Atom
    std::uint32_t left = 0;     // Imp, index into nodes
    std::uint32_t right = 0;
  };
  std::vector<Pattern> atoms;
  std::vector<Node> nodes;  // children precede parents; root is last
};

inline constexpr std::size_t kMaxSkeletonAtoms = 20;

Skeleton skeleton(const Pattern& p);
/// Value of the skeleton under a truth assignment (bit i = atom i).
bool skeleton_value(const Skeleton& sk, std::uint64_t assignment);
/// Throws SkeletonTooLarge above kMaxSkeletonAtoms atoms.
bool is_tautology(const Pattern& p);

// ---------------------------------------------------------------------------
// Consequence

enum class ConsequenceKind { Global, Local, Strong };
std::string_view to_string(ConsequenceKind k);
std::optional<ConsequenceKind> consequence_kind_from(std::string_view text);

struct Counterexample {
  std::size_t structure_index;
  Structure structure;
  Valuation valuation;
};

struct Verdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  std::size_t structures_checked = 0;
};

/// Decides Γ ⊨ Δ (each δ in Δ) relative to the given structures only.
Verdict consequence(ConsequenceKind kind, const std::vector<Pattern>& gamma,
                    const std::vector<Pattern>& delta, const std::vector<Structure>& suite);

/// Re-checks that a counterexample really violates the relation.
bool violates(ConsequenceKind kind, const std::vector<Pattern>& gamma,
              const std::vector<Pattern>& delta, const Structure& s, const Valuation& e);

// ---------------------------------------------------------------------------
// Definedness

enum class DefinednessOp { Ceil, Floor, Eq, Mem };

/// Closed-form value of ⌈φ⌉, ⌊φ⌋, φ=ψ, x∈φ. For Mem, args[0] must be an
/// element variable. Throws NotADefinednessStructure when the law fails.
Subset eval_definedness(const Structure& s, const Valuation& e, DefinednessOp op,
                        const std::vector<Pattern>& args);
/// The desugared pattern the closed form stands for.
Pattern definedness_pattern(DefinednessOp op, const std::vector<Pattern>& args);

}  // namespace aml
