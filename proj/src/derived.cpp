#include "aml/derived.hpp"

#include <string>

#include "aml/substitution.hpp"
#include "aml/syntax.hpp"

namespace aml::derived {

Pattern bot() {
  static const Pattern b = Pattern::mu(0, Pattern::svar(0));
  return b;
}

Pattern top() { return neg(bot()); }

Pattern neg(Pattern p) { return Pattern::imp(std::move(p), bot()); }

Pattern disj(Pattern a, Pattern b) {
  return Pattern::imp(neg(std::move(a)), std::move(b));
}

Pattern conj(Pattern a, Pattern b) {
  return neg(disj(neg(std::move(a)), neg(std::move(b))));
}

Pattern iff(Pattern a, Pattern b) {
  return conj(Pattern::imp(a, b), Pattern::imp(b, a));
}

Pattern forall(std::uint32_t x, Pattern body) {
  return neg(Pattern::exists(x, neg(std::move(body))));
}

Pattern nu(std::uint32_t X, Pattern body) {
  Pattern flipped = subst_free(body, VarRef::set(X), neg(Pattern::svar(X)));
  return neg(Pattern::mu(X, neg(std::move(flipped))));
}

Pattern ceil(Pattern p) {
  return Pattern::appl(Pattern::constant(std::string(Signature::kDefinedness)),
                       std::move(p));
}

Pattern floor(Pattern p) { return neg(ceil(neg(std::move(p)))); }

Pattern equals(Pattern a, Pattern b) {
  return floor(iff(std::move(a), std::move(b)));
}

Pattern member(std::uint32_t x, Pattern p) {
  return ceil(conj(Pattern::evar(x), std::move(p)));
}

bool is_bottom_shape(const Pattern& p) {
  return p.kind() == Kind::Mu && p.body().kind() == Kind::SVar &&
         p.body().var() == p.var();
}

std::optional<Pattern> as_neg(const Pattern& p) {
  if (p.kind() == Kind::Imp && p.right() == bot()) return p.left();
  return std::nullopt;
}

std::optional<Pair> as_disj(const Pattern& p) {
  if (p.kind() != Kind::Imp) return std::nullopt;
  auto a = as_neg(p.left());
  if (!a) return std::nullopt;
  return Pair{*a, p.right()};
}

std::optional<Pair> as_conj(const Pattern& p) {
  auto inner = as_neg(p);
  if (!inner) return std::nullopt;
  auto d = as_disj(*inner);
  if (!d) return std::nullopt;
  auto a = as_neg(d->first);
  auto b = as_neg(d->second);
  if (!a || !b) return std::nullopt;
  return Pair{*a, *b};
}

std::optional<Pair> as_iff(const Pattern& p) {
  auto c = as_conj(p);
  if (!c || c->first.kind() != Kind::Imp || c->second.kind() != Kind::Imp)
    return std::nullopt;
  const Pattern& ab = c->first;
  const Pattern& ba = c->second;
  if (ab.left() != ba.right() || ab.right() != ba.left()) return std::nullopt;
  return Pair{ab.left(), ab.right()};
}

std::optional<Bound> as_forall(const Pattern& p) {
  auto inner = as_neg(p);
  if (!inner || inner->kind() != Kind::Exists) return std::nullopt;
  auto body = as_neg(inner->body());
  if (!body) return std::nullopt;
  return Bound{inner->var(), *body};
}

namespace {

// Undo subst_free(body, X, neg X): each free `X -> bot` becomes X again.
Pattern unflip(const Pattern& p, std::uint32_t X) {
  switch (p.kind()) {
    case Kind::EVar:
    case Kind::SVar:
    case Kind::Const:
      return p;
    case Kind::Imp:
      if (p.left().kind() == Kind::SVar && p.left().var() == X &&
          p.right() == bot())
        return p.left();
      return Pattern::imp(unflip(p.left(), X), unflip(p.right(), X));
    case Kind::Appl:
      return Pattern::appl(unflip(p.left(), X), unflip(p.right(), X));
    case Kind::Exists:
      return Pattern::exists(p.var(), unflip(p.body(), X));
    case Kind::Mu:
      if (p.var() == X) return p;
      return Pattern::mu(p.var(), unflip(p.body(), X));
  }
  return p;
}

}  // namespace

std::optional<Bound> as_nu(const Pattern& p) {
  auto inner = as_neg(p);
  if (!inner || inner->kind() != Kind::Mu) return std::nullopt;
  auto flipped = as_neg(inner->body());
  if (!flipped) return std::nullopt;
  std::uint32_t X = inner->var();
  Pattern body = unflip(*flipped, X);
  if (subst_free(body, VarRef::set(X), neg(Pattern::svar(X))) != *flipped)
    return std::nullopt;
  return Bound{X, body};
}

std::optional<Pattern> as_ceil(const Pattern& p) {
  if (p.kind() == Kind::Appl && p.left().kind() == Kind::Const &&
      p.left().name() == Signature::kDefinedness)
    return p.right();
  return std::nullopt;
}

std::optional<Pattern> as_floor(const Pattern& p) {
  auto inner = as_neg(p);
  if (!inner) return std::nullopt;
  auto c = as_ceil(*inner);
  if (!c) return std::nullopt;
  return as_neg(*c);
}

std::optional<Pair> as_equals(const Pattern& p) {
  auto f = as_floor(p);
  if (!f) return std::nullopt;
  return as_iff(*f);
}

std::optional<Membership> as_member(const Pattern& p) {
  auto c = as_ceil(p);
  if (!c) return std::nullopt;
  auto parts = as_conj(*c);
  if (!parts || parts->first.kind() != Kind::EVar) return std::nullopt;
  return Membership{parts->first.var(), parts->second};
}

}  // namespace aml::derived
