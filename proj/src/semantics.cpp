#include "aml/semantics.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "aml/derived.hpp"
#include "aml/error.hpp"

namespace aml {

namespace {

std::uint32_t max_index(const std::set<std::uint32_t>& s) { return s.empty() ? 0 : *s.rbegin(); }

// Valuation flattened into vectors so binders can update it in place.
class Evaluator {
 public:
  Evaluator(const Structure& s, const Valuation& e, const Pattern& p, std::size_t cap)
      : s_(s), cap_(cap), full_(s.full()) {
    VarSets vars = all_vars(p);
    std::uint32_t ne = max_index(vars.element);
    std::uint32_t ns = max_index(vars.set);
    if (!e.element.empty()) ne = std::max(ne, e.element.rbegin()->first);
    if (!e.set.empty()) ns = std::max(ns, e.set.rbegin()->first);
    ev_.assign(ne + 1, 0);
    sv_.assign(ns + 1, Subset());
    for (const auto& [x, a] : e.element) {
      if (a >= s.size())
        throw Error(ErrorCode::DanglingElement,
                    "x" + std::to_string(x) + " is assigned an element outside the universe");
      ev_[x] = a;
    }
    for (const auto& [X, b] : e.set) sv_[X] = b & full_;
  }

  Subset eval(const Pattern& p) {
    switch (p.kind()) {
      case Kind::EVar: return Subset::singleton(ev_[p.var()]);
      case Kind::SVar: return sv_[p.var()];
      case Kind::Const: {
        auto c = s_.constant(p.name());
        if (!c)
          throw Error(ErrorCode::UnassignedConstant,
                      "constant '" + p.name() + "' has no denotation in the structure");
        return *c;
      }
      case Kind::Appl: {
        Subset l = eval(p.left());
        if (l.empty()) return l;
        return apply_sets(s_, l, eval(p.right()));
      }
      case Kind::Imp: return full_ - (eval(p.left()) - eval(p.right()));
      case Kind::Exists: {
        std::size_t saved = ev_[p.var()];
        Subset acc;
        for (std::size_t a = 0; a < s_.size() && acc != full_; ++a) {
          ev_[p.var()] = a;
          acc |= eval(p.body());
        }
        ev_[p.var()] = saved;
        return acc;
      }
      case Kind::Mu: {
        require_enumerable(s_.size(), cap_);
        Subset saved = sv_[p.var()];
        Subset acc = full_;
        const std::uint64_t count = std::uint64_t{1} << s_.size();
        for (std::uint64_t bits = 0; bits < count; ++bits) {
          Subset b(bits);
          // Only sets smaller than the current meet can shrink it.
          if (acc.subset_of(b)) continue;
          sv_[p.var()] = b;
          if (eval(p.body()).subset_of(b)) acc &= b;
        }
        sv_[p.var()] = saved;
        return acc;
      }
    }
    return Subset();
  }

  Subset eval_with_set(const Pattern& body, std::uint32_t X, Subset b) {
    if (X >= sv_.size()) sv_.resize(X + 1);
    Subset saved = sv_[X];
    sv_[X] = b;
    Subset out = eval(body);
    sv_[X] = saved;
    return out;
  }

 private:
  const Structure& s_;
  std::size_t cap_;
  Subset full_;
  std::vector<std::size_t> ev_;
  std::vector<Subset> sv_;
};

}  // namespace

Subset evaluate(const Structure& s, const Valuation& e, const Pattern& p, std::size_t cap) {
  return Evaluator(s, e, p, cap).eval(p);
}

EvalResult evaluate_result(const Structure& s, const Valuation& e, const Pattern& p,
                           std::size_t cap) {
  Subset v = evaluate(s, e, p, cap);
  return {v, v == s.full()};
}

SetFunction set_function(const Structure& s, const Valuation& e, std::uint32_t X,
                         const Pattern& body, std::size_t cap) {
  auto ev = std::make_shared<Evaluator>(s, e, Pattern::mu(X, body), cap);
  return [ev, X, body](Subset b) { return ev->eval_with_set(body, X, b); };
}

Subset evaluate_nu_direct(const Structure& s, const Valuation& e, std::uint32_t X,
                          const Pattern& body, std::size_t cap) {
  return kt_gfp(set_function(s, e, X, body, cap), s.size(), cap);
}

bool satisfies(const Structure& s, const Valuation& e, const Pattern& p) {
  return evaluate(s, e, p) == s.full();
}

bool for_each_valuation(const Structure& s, const VarSets& vars, const Valuation& base,
                        const std::function<bool(const Valuation&)>& visit, std::size_t cap) {
  if (!vars.set.empty()) require_enumerable(s.size(), cap);
  std::vector<std::uint32_t> xs(vars.element.begin(), vars.element.end());
  std::vector<std::uint32_t> Xs(vars.set.begin(), vars.set.end());
  const std::uint64_t set_base = std::uint64_t{1} << s.size();
  std::vector<std::uint64_t> digits(xs.size() + Xs.size(), 0);
  Valuation e = base;
  while (true) {
    for (std::size_t i = 0; i < xs.size(); ++i) e.element[xs[i]] = digits[i];
    for (std::size_t j = 0; j < Xs.size(); ++j) e.set[Xs[j]] = Subset(digits[xs.size() + j]);
    if (!visit(e)) return false;
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      std::uint64_t limit = k < xs.size() ? s.size() : set_base;
      if (++digits[k] < limit) break;
      digits[k] = 0;
    }
    if (k == digits.size()) return true;
  }
}

std::optional<Valuation> find_unsatisfying(const Structure& s, const Pattern& p) {
  std::optional<Valuation> bad;
  for_each_valuation(s, free_vars(p), Valuation{}, [&](const Valuation& e) {
    if (satisfies(s, e, p)) return true;
    bad = e;
    return false;
  });
  return bad;
}

bool models(const Structure& s, const Pattern& p) { return !find_unsatisfying(s, p); }

bool is_predicate(const Structure& s, const Pattern& p) {
  return for_each_valuation(s, free_vars(p), Valuation{}, [&](const Valuation& e) {
    Subset v = evaluate(s, e, p);
    return v.empty() || v == s.full();
  });
}

// ---------------------------------------------------------------------------
// Tautologies

namespace {

class SkeletonBuilder {
 public:
  std::uint32_t build(const Pattern& p) {
    if (derived::is_bottom_shape(p)) return push({Skeleton::Op::Bot});
    if (p.kind() == Kind::Imp) {
      std::uint32_t l = build(p.left());
      std::uint32_t r = build(p.right());
      return push({Skeleton::Op::Imp, 0, l, r});
    }
    auto [it, fresh] = atom_index_.try_emplace(p, static_cast<std::uint32_t>(sk_.atoms.size()));
    if (fresh) sk_.atoms.push_back(p);
    return push({Skeleton::Op::Atom, it->second});
  }

  Skeleton take() { return std::move(sk_); }

 private:
  std::uint32_t push(Skeleton::Node n) {
    sk_.nodes.push_back(n);
    return static_cast<std::uint32_t>(sk_.nodes.size() - 1);
  }

  Skeleton sk_;
  std::unordered_map<Pattern, std::uint32_t, PatternHash> atom_index_;
};

constexpr std::array<std::uint64_t, 6> kAtomMasks = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

}  // namespace

Skeleton skeleton(const Pattern& p) {
  SkeletonBuilder b;
  b.build(p);
  return b.take();
}

bool skeleton_value(const Skeleton& sk, std::uint64_t assignment) {
  std::vector<bool> v(sk.nodes.size());
  for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
    const auto& n = sk.nodes[i];
    switch (n.op) {
      case Skeleton::Op::Bot: v[i] = false; break;
      case Skeleton::Op::Atom: v[i] = (assignment >> n.atom) & 1U; break;
      case Skeleton::Op::Imp: v[i] = !v[n.left] || v[n.right]; break;
    }
  }
  return v.back();
}

bool is_tautology(const Pattern& p) {
  Skeleton sk = skeleton(p);
  const std::size_t k = sk.atoms.size();
  if (k > kMaxSkeletonAtoms)
    throw Error(ErrorCode::SkeletonTooLarge,
                "propositional skeleton has " + std::to_string(k) + " atoms; the limit is " +
                    std::to_string(kMaxSkeletonAtoms));
  // 64 truth-table rows per word: row r = 64*w + bit.
  const std::uint64_t rows = std::uint64_t{1} << k;
  const std::uint64_t words = (rows + 63) / 64;
  const std::uint64_t valid = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  std::vector<std::uint64_t> v(sk.nodes.size());
  for (std::uint64_t w = 0; w < words; ++w) {
    for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
      const auto& n = sk.nodes[i];
      switch (n.op) {
        case Skeleton::Op::Bot: v[i] = 0; break;
        case Skeleton::Op::Atom:
          v[i] = n.atom < 6 ? kAtomMasks[n.atom]
                            : (((w >> (n.atom - 6)) & 1U) ? ~std::uint64_t{0} : 0);
          break;
        case Skeleton::Op::Imp: v[i] = ~v[n.left] | v[n.right]; break;
      }
    }
    if ((v.back() & valid) != valid) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Consequence

std::string_view to_string(ConsequenceKind k) {
  switch (k) {
    case ConsequenceKind::Global: return "global";
    case ConsequenceKind::Local: return "local";
    case ConsequenceKind::Strong: return "strong";
  }
  return "?";
}

std::optional<ConsequenceKind> consequence_kind_from(std::string_view text) {
  if (text == "global") return ConsequenceKind::Global;
  if (text == "local") return ConsequenceKind::Local;
  if (text == "strong") return ConsequenceKind::Strong;
  return std::nullopt;
}

namespace {

VarSets joint_free_vars(const std::vector<Pattern>& a, const std::vector<Pattern>& b) {
  VarSets acc;
  for (const auto* list : {&a, &b})
    for (const auto& p : *list) {
      auto fv = free_vars(p);
      acc.element.insert(fv.element.begin(), fv.element.end());
      acc.set.insert(fv.set.begin(), fv.set.end());
    }
  return acc;
}

Subset meet(const Structure& s, const Valuation& e, const std::vector<Pattern>& ps) {
  Subset acc = s.full();
  for (const auto& p : ps) acc &= evaluate(s, e, p);
  return acc;
}

bool pointwise_ok(ConsequenceKind kind, const std::vector<Pattern>& gamma,
                  const std::vector<Pattern>& delta, const Structure& s, const Valuation& e) {
  if (kind == ConsequenceKind::Strong) return meet(s, e, gamma).subset_of(meet(s, e, delta));
  for (const auto& g : gamma)
    if (!satisfies(s, e, g)) return true;
  return std::all_of(delta.begin(), delta.end(),
                     [&](const Pattern& d) { return satisfies(s, e, d); });
}

}  // namespace

Verdict consequence(ConsequenceKind kind, const std::vector<Pattern>& gamma,
                    const std::vector<Pattern>& delta, const std::vector<Structure>& suite) {
  Verdict v;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Structure& s = suite[i];
    ++v.structures_checked;
    if (kind == ConsequenceKind::Global) {
      bool premises = std::all_of(gamma.begin(), gamma.end(),
                                  [&](const Pattern& g) { return models(s, g); });
      if (!premises) continue;
      for (const auto& d : delta) {
        if (auto e = find_unsatisfying(s, d)) {
          v.holds = false;
          v.counterexample = Counterexample{i, s, *e};
          return v;
        }
      }
      continue;
    }
    std::optional<Valuation> bad;
    for_each_valuation(s, joint_free_vars(gamma, delta), Valuation{}, [&](const Valuation& e) {
      if (pointwise_ok(kind, gamma, delta, s, e)) return true;
      bad = e;
      return false;
    });
    if (bad) {
      v.holds = false;
      v.counterexample = Counterexample{i, s, *bad};
      return v;
    }
  }
  return v;
}

bool violates(ConsequenceKind kind, const std::vector<Pattern>& gamma,
              const std::vector<Pattern>& delta, const Structure& s, const Valuation& e) {
  if (kind == ConsequenceKind::Global) {
    bool premises = std::all_of(gamma.begin(), gamma.end(),
                                [&](const Pattern& g) { return models(s, g); });
    return premises && std::any_of(delta.begin(), delta.end(),
                                   [&](const Pattern& d) { return !satisfies(s, e, d); });
  }
  return !pointwise_ok(kind, gamma, delta, s, e);
}

// ---------------------------------------------------------------------------
// Definedness

Pattern definedness_pattern(DefinednessOp op, const std::vector<Pattern>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorCode::ArityError, "definedness operator expects " + std::to_string(n) +
                                             " argument(s), got " + std::to_string(args.size()));
  };
  switch (op) {
    case DefinednessOp::Ceil: need(1); return derived::ceil(args[0]);
    case DefinednessOp::Floor: need(1); return derived::floor(args[0]);
    case DefinednessOp::Eq: need(2); return derived::equals(args[0], args[1]);
    case DefinednessOp::Mem:
      need(2);
      if (args[0].kind() != Kind::EVar)
        throw Error(ErrorCode::KindMismatch, "membership needs an element variable on the left");
      return derived::member(args[0].var(), args[1]);
  }
  throw Error(ErrorCode::Malformed, "unknown definedness operator");
}

Subset eval_definedness(const Structure& s, const Valuation& e, DefinednessOp op,
                        const std::vector<Pattern>& args) {
  if (!s.constant(std::string(Signature::kDefinedness)) || definedness_violation(s))
    throw Error(ErrorCode::NotADefinednessStructure,
                "the structure does not satisfy def * {a} = A for every a");
  (void)definedness_pattern(op, args);  // arity and kind checks
  const Subset all = s.full();
  auto when = [&](bool b) { return b ? all : Subset(); };
  switch (op) {
    case DefinednessOp::Ceil: return when(!evaluate(s, e, args[0]).empty());
    case DefinednessOp::Floor: return when(evaluate(s, e, args[0]) == all);
    case DefinednessOp::Eq: return when(evaluate(s, e, args[0]) == evaluate(s, e, args[1]));
    case DefinednessOp::Mem:
      return when(evaluate(s, e, args[1]).contains(e.element_of(args[0].var())));
  }
  return Subset();
}

}  // namespace aml
