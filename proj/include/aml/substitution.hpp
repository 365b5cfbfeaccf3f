#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aml/pattern.hpp"

namespace aml {

enum class VarKind : std::uint8_t { Element, Set };

struct VarRef {
  VarKind kind;
  std::uint32_t index;

  static VarRef element(std::uint32_t i) { return {VarKind::Element, i}; }
  static VarRef set(std::uint32_t i) { return {VarKind::Set, i}; }

  Pattern as_pattern() const;
  std::string text() const;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

/// True iff no free variable of `delta` would be captured by a binder of
/// `phi` whose scope contains a free occurrence of `v`.
bool is_free_for(VarRef v, const Pattern& delta, const Pattern& phi);

/// Replaces the free occurrences of v by delta. No capture check.
Pattern subst_free(const Pattern& phi, VarRef v, const Pattern& delta);

/// Renames the bound occurrences of v (including binder heads) to w.
/// Throws Error(KindMismatch) when the kinds differ.
Pattern subst_bound(const Pattern& phi, VarRef v, VarRef w);

/// used_max+1 ... used_max+count of the given kind.
std::vector<VarRef> fresh_variables(std::uint32_t used_max, std::uint32_t count,
                                    VarKind kind);

/// Free substitution after renaming every variable that is bound in phi and
/// occurs in delta to a fresh one.
Pattern subst_capture_avoiding(const Pattern& phi, VarRef v,
                               const Pattern& delta);

/// True iff the variable occurs anywhere in p (free, bound or binder head).
bool occurs(VarRef v, const Pattern& p);

}  // namespace aml
