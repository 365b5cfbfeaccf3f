#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aml/pattern.hpp"

namespace aml {

/// Constant symbols of a signature. Element and set variables are the fixed
/// families `x<n>` / `X<n>` and are never declared.
class Signature {
 public:
  Signature() = default;
  explicit Signature(const std::vector<std::string>& constants);

  /// Throws Error(Malformed) on an invalid or duplicate name.
  void add(const std::string& name);
  bool contains(std::string_view name) const;
  const std::vector<std::string>& constants() const { return constants_; }
  bool has_definedness() const { return contains(kDefinedness); }

  /// One constant per line; `#` starts a comment.
  static Signature parse(std::string_view text);
  /// Every identifier in pattern text that can only be a constant.
  static Signature infer(std::string_view text);

  static constexpr std::string_view kDefinedness = "def";

 private:
  std::vector<std::string> constants_;
};

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);
bool is_valid_constant_name(std::string_view word);

enum class TokenKind : std::uint8_t { Appl, Imp, Exists, Mu, EVar, SVar, Const };

struct Token {
  TokenKind kind;
  std::uint32_t index = 0;
  std::string name;

  std::string text() const;
  friend bool operator==(const Token&, const Token&) = default;
};

using TokenString = std::vector<Token>;
using Position = std::size_t;

enum class Syntax { Core, Sugar };

enum class OccurrenceKind { FreeElement, BoundElement, FreeSet, BoundSet, NotAVariable };

std::string_view to_string(OccurrenceKind kind);

struct VarSets {
  std::set<std::uint32_t> element;
  std::set<std::uint32_t> set;

  bool empty() const { return element.empty() && set.empty(); }
  friend bool operator==(const VarSets&, const VarSets&) = default;
};

// ---------------------------------------------------------------------------
// Parsing and printing

Pattern parse(std::string_view text, const Signature& sig, Syntax mode);

/// Core Polish reading of an already tokenized string. Throws like parse().
Pattern parse_tokens(std::span<const Token> tokens);
/// nullopt unless the whole token range is exactly one pattern.
std::optional<Pattern> try_parse_tokens(std::span<const Token> tokens);

/// Splits core text into tokens, resolving symbols against `sig`.
TokenString tokenize_core(std::string_view text, const Signature& sig);

std::string render(const Pattern& p, Syntax mode);

/// Name of the placeholder constant used for context holes (`[]`) in sugar
/// text. It is not a valid identifier, so it never collides with a constant.
inline constexpr std::string_view kHoleName = "[]";

/// Sugar parse that also accepts `[]`, producing Pattern::constant("[]").
Pattern parse_sugar_with_holes(std::string_view text, const Signature& sig);

// ---------------------------------------------------------------------------
// Structural and positional analysis

TokenString tokens(const Pattern& p);

std::set<Pattern> subpatterns(const Pattern& p);

VarSets free_vars(const Pattern& p);
/// Every variable occurring anywhere (free, bound or as a binder head).
VarSets all_vars(const Pattern& p);

/// End position of the scope of the binder at position i.
Position binder_scope(const Pattern& p, Position i);
/// End positions of the left and right operands of the binary at position i.
std::pair<Position, Position> binary_scopes(const Pattern& p, Position i);

OccurrenceKind occurrence_kind(const Pattern& p, Position k);
/// occurrence_kind for every position at once.
std::vector<OccurrenceKind> occurrence_kinds(const Pattern& p);

/// Number of enclosing left implication scopes at position k, counted with
/// the reset-under-mu-X rule. Zero outside the token range.
std::uint32_t n_left(const Pattern& p, std::uint32_t set_var, Position k);

bool is_positive_in(const Pattern& p, std::uint32_t set_var);
bool is_negative_in(const Pattern& p, std::uint32_t set_var);

Pattern fold_conj(std::span<const Pattern> ps);
Pattern fold_disj(std::span<const Pattern> ps);

}  // namespace aml
