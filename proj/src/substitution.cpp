#include "aml/substitution.hpp"

#include <algorithm>

#include "aml/error.hpp"
#include "aml/syntax.hpp"

namespace aml {

namespace {

bool is_var(const Pattern& p, VarRef v) {
  return p.kind() == (v.kind == VarKind::Element ? Kind::EVar : Kind::SVar) &&
         p.var() == v.index;
}

bool binds(const Pattern& p, VarRef v) {
  return p.kind() == (v.kind == VarKind::Element ? Kind::Exists : Kind::Mu) &&
         p.var() == v.index;
}

bool token_is(const Token& t, VarRef v) {
  return t.kind == (v.kind == VarKind::Element ? TokenKind::EVar : TokenKind::SVar) &&
         t.index == v.index;
}

Pattern rebuild_binder(const Pattern& p, std::uint32_t var, Pattern body) {
  return p.kind() == Kind::Exists ? Pattern::exists(var, std::move(body))
                                  : Pattern::mu(var, std::move(body));
}

const std::set<std::uint32_t>& family(const VarSets& s, VarKind k) {
  return k == VarKind::Element ? s.element : s.set;
}

}  // namespace

Pattern VarRef::as_pattern() const {
  return kind == VarKind::Element ? Pattern::evar(index) : Pattern::svar(index);
}

std::string VarRef::text() const {
  return (kind == VarKind::Element ? "x" : "X") + std::to_string(index);
}

bool occurs(VarRef v, const Pattern& p) {
  return family(all_vars(p), v.kind).contains(v.index);
}

bool is_free_for(VarRef v, const Pattern& delta, const Pattern& phi) {
  VarSets fv = free_vars(delta);
  if (fv.empty()) return true;
  auto ts = tokens(phi);
  auto kinds = occurrence_kinds(phi);
  for (Position i = 0; i + 1 < ts.size(); ++i) {
    const bool ex = ts[i].kind == TokenKind::Exists;
    if (!ex && ts[i].kind != TokenKind::Mu) continue;
    const auto& captured = ex ? fv.element : fv.set;
    if (!captured.contains(ts[i + 1].index)) continue;
    Position j = binder_scope(phi, i);
    for (Position k = i + 2; k <= j; ++k) {
      if (!token_is(ts[k], v)) continue;
      if (kinds[k] == OccurrenceKind::FreeElement ||
          kinds[k] == OccurrenceKind::FreeSet)
        return false;
    }
  }
  return true;
}

Pattern subst_free(const Pattern& phi, VarRef v, const Pattern& delta) {
  switch (phi.kind()) {
    case Kind::EVar:
    case Kind::SVar:
      return is_var(phi, v) ? delta : phi;
    case Kind::Const:
      return phi;
    case Kind::Appl:
      return Pattern::appl(subst_free(phi.left(), v, delta),
                           subst_free(phi.right(), v, delta));
    case Kind::Imp:
      return Pattern::imp(subst_free(phi.left(), v, delta),
                          subst_free(phi.right(), v, delta));
    case Kind::Exists:
    case Kind::Mu:
      if (binds(phi, v)) return phi;
      return rebuild_binder(phi, phi.var(), subst_free(phi.body(), v, delta));
  }
  return phi;
}

Pattern subst_bound(const Pattern& phi, VarRef v, VarRef w) {
  if (v.kind != w.kind)
    throw Error(ErrorCode::KindMismatch,
                "cannot rename " + v.text() + " to " + w.text());
  if (v == w) return phi;
  switch (phi.kind()) {
    case Kind::EVar:
    case Kind::SVar:
    case Kind::Const:
      return phi;
    case Kind::Appl:
      return Pattern::appl(subst_bound(phi.left(), v, w),
                           subst_bound(phi.right(), v, w));
    case Kind::Imp:
      return Pattern::imp(subst_bound(phi.left(), v, w),
                          subst_bound(phi.right(), v, w));
    case Kind::Exists:
    case Kind::Mu: {
      Pattern inner = subst_bound(phi.body(), v, w);
      if (binds(phi, v))
        return rebuild_binder(phi, w.index,
                              subst_free(inner, v, w.as_pattern()));
      return rebuild_binder(phi, phi.var(), std::move(inner));
    }
  }
  return phi;
}

std::vector<VarRef> fresh_variables(std::uint32_t used_max, std::uint32_t count,
                                    VarKind kind) {
  std::vector<VarRef> out;
  out.reserve(count);
  for (std::uint32_t i = 1; i <= count; ++i) out.push_back({kind, used_max + i});
  return out;
}

Pattern subst_capture_avoiding(const Pattern& phi, VarRef v,
                               const Pattern& delta) {
  if (is_free_for(v, delta, phi)) return subst_free(phi, v, delta);

  auto ts = tokens(phi);
  auto kinds = occurrence_kinds(phi);
  VarSets bound;
  for (Position k = 0; k < ts.size(); ++k) {
    if (kinds[k] == OccurrenceKind::BoundElement) bound.element.insert(ts[k].index);
    if (kinds[k] == OccurrenceKind::BoundSet) bound.set.insert(ts[k].index);
  }
  VarSets in_phi = all_vars(phi);
  VarSets in_delta = all_vars(delta);

  auto plan = [&](VarKind kind) {
    std::vector<std::uint32_t> offending;
    for (auto u : family(bound, kind))
      if (family(in_delta, kind).contains(u)) offending.push_back(u);
    std::uint32_t used_max = 0;
    for (const VarSets* s : {&in_phi, &in_delta})
      if (!family(*s, kind).empty())
        used_max = std::max(used_max, *family(*s, kind).rbegin());
    auto fresh = fresh_variables(used_max, static_cast<std::uint32_t>(offending.size()), kind);
    std::vector<std::pair<VarRef, VarRef>> renames;
    for (std::size_t i = 0; i < offending.size(); ++i)
      renames.emplace_back(VarRef{kind, offending[i]}, fresh[i]);
    return renames;
  };

  auto element_renames = plan(VarKind::Element);
  auto set_renames = plan(VarKind::Set);

  // Innermost renaming first: u_k ... u_1, then U_p ... U_1.
  Pattern theta = phi;
  for (auto it = element_renames.rbegin(); it != element_renames.rend(); ++it)
    theta = subst_bound(theta, it->first, it->second);
  for (auto it = set_renames.rbegin(); it != set_renames.rend(); ++it)
    theta = subst_bound(theta, it->first, it->second);
  return subst_free(theta, v, delta);
}

}  // namespace aml
