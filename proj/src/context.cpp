#include "aml/context.hpp"

#include "aml/derived.hpp"
#include "aml/error.hpp"

namespace aml {

namespace {

const Pattern& hole() {
  static const Pattern h = Pattern::constant(std::string(kHoleName));
  return h;
}

std::size_t count_holes(const Pattern& p) {
  if (p == hole()) return 1;
  if (p.is_binary()) return count_holes(p.left()) + count_holes(p.right());
  if (p.is_binder()) return count_holes(p.body());
  return 0;
}

void union_into(VarSets& acc, const VarSets& more) {
  acc.element.insert(more.element.begin(), more.element.end());
  acc.set.insert(more.set.begin(), more.set.end());
}

// Conjunctions x /\ psi at every application-spine position of p.
std::vector<std::pair<Context, derived::Pair>> conj_sites(const Pattern& p) {
  std::vector<std::pair<Context, derived::Pair>> out;
  if (auto c = derived::as_conj(p); c && c->first.kind() == Kind::EVar)
    out.emplace_back(Context::box(), *c);
  if (p.kind() == Kind::Appl) {
    for (auto& [c, xb] : conj_sites(p.left()))
      out.emplace_back(Context::appl_l(c, p.right()), xb);
    for (auto& [c, xb] : conj_sites(p.right()))
      out.emplace_back(Context::appl_r(p.left(), c), xb);
  }
  return out;
}

}  // namespace

Context Context::appl_l(const Context& c, Pattern arg) {
  Context out;
  out.steps_.reserve(c.steps_.size() + 1);
  out.steps_.push_back({Side::Left, std::move(arg)});
  out.steps_.insert(out.steps_.end(), c.steps_.begin(), c.steps_.end());
  return out;
}

Context Context::appl_r(Pattern arg, const Context& c) {
  Context out;
  out.steps_.reserve(c.steps_.size() + 1);
  out.steps_.push_back({Side::Right, std::move(arg)});
  out.steps_.insert(out.steps_.end(), c.steps_.begin(), c.steps_.end());
  return out;
}

Pattern plug(const Context& c, const Pattern& delta) {
  Pattern acc = delta;
  const auto& steps = c.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    acc = it->side == Context::Side::Left ? Pattern::appl(acc, it->arg)
                                          : Pattern::appl(it->arg, acc);
  }
  return acc;
}

VarSets context_fv(const Context& c) {
  VarSets acc;
  for (const auto& s : c.steps()) union_into(acc, free_vars(s.arg));
  return acc;
}

std::vector<Context> find_contexts(const Pattern& p, const Pattern& target) {
  std::vector<Context> out;
  if (p == target) out.push_back(Context::box());
  if (p.kind() == Kind::Appl) {
    for (const auto& c : find_contexts(p.left(), target))
      out.push_back(Context::appl_l(c, p.right()));
    for (const auto& c : find_contexts(p.right(), target))
      out.push_back(Context::appl_r(p.left(), c));
  }
  return out;
}

std::vector<ContextPair> match_singleton(const Pattern& phi, std::uint32_t x,
                                         const Pattern& body) {
  std::vector<ContextPair> out;
  auto inner = derived::as_neg(phi);
  if (!inner) return out;
  auto parts = derived::as_conj(*inner);
  if (!parts) return out;
  Pattern xv = Pattern::evar(x);
  auto firsts = find_contexts(parts->first, derived::conj(xv, body));
  if (firsts.empty()) return out;
  auto seconds = find_contexts(parts->second, derived::conj(xv, derived::neg(body)));
  for (const auto& c1 : firsts)
    for (const auto& c2 : seconds) out.emplace_back(c1, c2);
  return out;
}

std::vector<SingletonWitness> find_singleton(const Pattern& phi) {
  std::vector<SingletonWitness> out;
  auto inner = derived::as_neg(phi);
  if (!inner) return out;
  auto parts = derived::as_conj(*inner);
  if (!parts) return out;
  for (const auto& [c1, xb] : conj_sites(parts->first)) {
    std::uint32_t x = xb.first.var();
    for (const auto& c2 :
         find_contexts(parts->second, derived::conj(xb.first, derived::neg(xb.second))))
      out.push_back({x, xb.second, c1, c2});
  }
  return out;
}

Context parse_context(std::string_view text, const Signature& sig) {
  Pattern p = parse_sugar_with_holes(text, sig);
  std::size_t holes = count_holes(p);
  if (holes != 1)
    throw Error(ErrorCode::Malformed, "a context needs exactly one '[]', found " +
                                          std::to_string(holes));
  auto found = find_contexts(p, hole());
  if (found.empty())
    throw Error(ErrorCode::Malformed,
                "the hole must sit on an application spine, not under a binder "
                "or connective");
  return found.front();
}

std::string render_context(const Context& c) {
  return render(plug(c, hole()), Syntax::Sugar);
}

}  // namespace aml
