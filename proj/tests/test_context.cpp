#include <doctest.h>

#include "aml/context.hpp"
#include "aml/derived.hpp"
#include "aml/error.hpp"
#include "aml/syntax.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/print.hpp"

using namespace aml;
using namespace aml::derived;

namespace {

const Signature kSig({"c", "d"});
const Pattern c = Pattern::constant("c");
const Pattern d = Pattern::constant("d");
Pattern x(std::uint32_t i) { return Pattern::evar(i); }
Pattern X(std::uint32_t i) { return Pattern::svar(i); }

Context random_context(testing::Rng& rng, int depth) {
  Context ctx = Context::box();
  for (int k = 0; k < depth; ++k) {
    Pattern arg = testing::random_pattern_upto(rng, 4);
    ctx = testing::coin(rng) ? Context::appl_l(ctx, arg) : Context::appl_r(arg, ctx);
  }
  return ctx;
}

}  // namespace

TEST_CASE("plugging") {
  Pattern delta = Pattern::imp(x(0), c);
  CHECK(plug(Context::box(), delta) == delta);
  CHECK(plug(Context::appl_l(Context::box(), d), delta) == Pattern::appl(delta, d));
  Context nested = Context::appl_r(d, Context::appl_l(Context::box(), c));
  CHECK(plug(nested, delta) == Pattern::appl(d, Pattern::appl(delta, c)));
}

TEST_CASE("context free variables") {
  CHECK(context_fv(Context::box()).empty());
  auto l = context_fv(Context::appl_l(Context::box(), x(0)));
  CHECK(l.element == std::set<std::uint32_t>{0});
  CHECK(l.set.empty());
  auto r = context_fv(Context::appl_r(X(1), Context::box()));
  CHECK(r.element.empty());
  CHECK(r.set == std::set<std::uint32_t>{1});
}

TEST_CASE("singleton matching") {
  Pattern psi = Pattern::appl(d, x(1));
  Pattern both_root = neg(conj(conj(x(0), psi), conj(x(0), neg(psi))));
  auto m = match_singleton(both_root, 0, psi);
  REQUIRE(m.size() == 1);
  CHECK(m[0].first.is_box());
  CHECK(m[0].second.is_box());

  Pattern left_in_c = neg(conj(Pattern::appl(c, conj(x(0), psi)), conj(x(0), neg(psi))));
  auto m2 = match_singleton(left_in_c, 0, psi);
  REQUIRE(m2.size() == 1);
  CHECK(m2[0].first == Context::appl_r(c, Context::box()));
  CHECK(m2[0].second.is_box());

  CHECK(match_singleton(top(), 0, psi).empty());
  CHECK(match_singleton(both_root, 1, psi).empty());

  auto found = find_singleton(left_in_c);
  REQUIRE_FALSE(found.empty());
  CHECK(found[0].x == 0);
  CHECK(found[0].body == psi);
}

TEST_CASE("context text") {
  Context ctx = parse_context("c ([] x0)", kSig);
  CHECK(ctx == Context::appl_r(c, Context::appl_l(Context::box(), x(0))));
  CHECK(parse_context(render_context(ctx), kSig) == ctx);
  CHECK(parse_context("[]", kSig).is_box());
  CHECK_THROWS_AS(parse_context("c x0", kSig), Error);
  CHECK_THROWS_AS(parse_context("[] []", kSig), Error);
  CHECK_THROWS_AS(parse_context("!([])", kSig), Error);
  CHECK_THROWS_AS(parse_context("exists x0 . []", kSig), Error);
}

TEST_CASE("property: matches are exactly the spine decompositions") {
  testing::Rng rng(31);
  for (int n = 0; n < 1500; ++n) {
    Pattern body = testing::random_pattern_upto(rng, 5);
    auto xi = static_cast<std::uint32_t>(testing::pick(rng, 2));
    Context c1 = random_context(rng, static_cast<int>(testing::pick(rng, 3)));
    Context c2 = random_context(rng, static_cast<int>(testing::pick(rng, 3)));
    Pattern phi = neg(conj(plug(c1, conj(x(xi), body)), plug(c2, conj(x(xi), neg(body)))));
    auto got = match_singleton(phi, xi, body);
    auto want = oracle::singleton_pairs(phi, xi, body);
    CHECK(got.size() == want.size());
    for (const auto& pr : want)
      CHECK(std::find(got.begin(), got.end(), pr) != got.end());
    for (const auto& [a, b] : got)
      CHECK(neg(conj(plug(a, conj(x(xi), body)), plug(b, conj(x(xi), neg(body))))) == phi);
    CHECK(std::find(got.begin(), got.end(), std::pair{c1, c2}) != got.end());
  }
}

TEST_CASE("property: context free variables follow plugging a fresh constant") {
  testing::Rng rng(32);
  const Pattern hole = Pattern::constant("fresh_hole");
  for (int n = 0; n < 1000; ++n) {
    Context ctx = random_context(rng, static_cast<int>(testing::pick(rng, 4)));
    CHECK(context_fv(ctx) == free_vars(plug(ctx, hole)));
    Pattern delta = testing::random_pattern_upto(rng, 6);
    CHECK(find_contexts(plug(ctx, delta), delta).size() >= 1);
  }
}
