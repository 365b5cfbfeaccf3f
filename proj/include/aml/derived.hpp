#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "aml/pattern.hpp"

// Derived connectives as abbreviations over the core syntax, plus the
// inverse recognizers used by the sugar printer and the proof checker.
namespace aml::derived {

/// mu X0 . X0
Pattern bot();
Pattern top();
Pattern neg(Pattern p);
Pattern disj(Pattern a, Pattern b);
Pattern conj(Pattern a, Pattern b);
Pattern iff(Pattern a, Pattern b);
Pattern forall(std::uint32_t x, Pattern body);
Pattern nu(std::uint32_t X, Pattern body);

Pattern ceil(Pattern p);
Pattern floor(Pattern p);
Pattern equals(Pattern a, Pattern b);
Pattern member(std::uint32_t x, Pattern p);

/// Any mu Xk . Xk, whatever k.
bool is_bottom_shape(const Pattern& p);

using Pair = std::pair<Pattern, Pattern>;
struct Bound {
  std::uint32_t var;
  Pattern body;
};

std::optional<Pattern> as_neg(const Pattern& p);
std::optional<Pair> as_disj(const Pattern& p);
std::optional<Pair> as_conj(const Pattern& p);
std::optional<Pair> as_iff(const Pattern& p);
std::optional<Bound> as_forall(const Pattern& p);
std::optional<Bound> as_nu(const Pattern& p);

std::optional<Pattern> as_ceil(const Pattern& p);
std::optional<Pattern> as_floor(const Pattern& p);
std::optional<Pair> as_equals(const Pattern& p);
struct Membership {
  std::uint32_t var;
  Pattern body;
};
std::optional<Membership> as_member(const Pattern& p);

}  // namespace aml::derived
