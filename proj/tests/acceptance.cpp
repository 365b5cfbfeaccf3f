// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails or overruns its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aml/context.hpp"
#include "aml/derived.hpp"
#include "aml/error.hpp"
#include "aml/model.hpp"
#include "aml/proof.hpp"
#include "aml/semantics.hpp"
#include "aml/substitution.hpp"
#include "aml/syntax.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace aml;
using namespace aml::testing;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checks;
    if (!ok && failures++ == 0) first = describe();
  }
  bool ok() const { return failures == 0; }
  std::string summary(const std::string& extra) const {
    std::string s = extra + ", " + std::to_string(checks) + " checks";
    if (!ok()) s += ", " + std::to_string(failures) + " failed; first: " + first;
    return s;
  }
};

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome outcome(const Tally& t, const std::string& extra) { return {t.ok(), t.summary(extra)}; }

bool run_criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = r.ok && secs < limit_s;
  std::printf("%s %d %-24s %.2f s (limit %.0f s)  %s\n", pass ? "PASS" : "FAIL", id, name, secs,
              limit_s, r.detail.c_str());
  std::fflush(stdout);
  return pass;
}

std::string show(const Pattern& p) { return render(p, Syntax::Sugar); }

Valuation with_element(Valuation e, std::uint32_t x, std::size_t a) {
  e.element[x] = a;
  return e;
}

Valuation with_set(Valuation e, std::uint32_t X, Subset b) {
  e.set[X] = b;
  return e;
}

double valuation_count(const Structure& s, const VarSets& fv) {
  auto n = static_cast<double>(s.size());
  return std::pow(n, static_cast<double>(fv.element.size())) *
         std::pow(2.0, n * static_cast<double>(fv.set.size()));
}

// A ⊨ p, over every FV assignment when there are few, else over samples.
bool valid_in(const Structure& s, const Pattern& p, Rng& rng, double exhaustive_limit = 256,
              int samples = 12) {
  auto fv = free_vars(p);
  if (valuation_count(s, fv) <= exhaustive_limit) return models(s, p);
  for (int k = 0; k < samples; ++k)
    if (!satisfies(s, random_valuation(rng, s, 5, 4), p)) return false;
  return true;
}

std::vector<Structure> exhaustive_suite(const Signature& sig, std::size_t max_size) {
  SuiteOptions o;
  o.max_size = max_size;
  o.exhaustive_max = max_size;
  o.samples = 0;
  return enumerate_structures(sig, o);
}

Context random_context(Rng& rng, int depth, const PatternShape& shape) {
  Context ctx = Context::box();
  for (int i = 0; i < depth; ++i) {
    Pattern arg = random_pattern_upto(rng, 3, shape);
    ctx = coin(rng) ? Context::appl_l(ctx, arg) : Context::appl_r(arg, ctx);
  }
  return ctx;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> scripts(const std::string& sub) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(AML_CORPUS_DIR) / "proofs" / sub))
    if (e.path().extension() == ".prf") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// 1. Unique readability

// Random pattern mixing core and derived constructors.
Pattern sugar_pattern(Rng& rng, int depth) {
  static const PatternShape shape{3, 2, {"c", "d"}, true, true};
  if (depth == 0 || coin(rng, 0.2)) return coin(rng, 0.15) ? bot() : random_pattern(rng, 1, shape);
  auto sub = [&] { return sugar_pattern(rng, depth - 1); };
  auto x = [&] { return static_cast<std::uint32_t>(pick(rng, 3)); };
  switch (pick(rng, 14)) {
    case 0: return neg(sub());
    case 1: return disj(sub(), sub());
    case 2: return conj(sub(), sub());
    case 3: return iff(sub(), sub());
    case 4: return forall(x(), sub());
    case 5: return nu(x(), sub());
    case 6: return ceil(sub());
    case 7: return floor(sub());
    case 8: return equals(sub(), sub());
    case 9: return member(x(), sub());
    case 10: return Pattern::appl(sub(), sub());
    case 11: return Pattern::imp(sub(), sub());
    case 12: return Pattern::exists(x(), sub());
    default: return Pattern::mu(x(), sub());
  }
}

Outcome readability() {
  Signature sig({"c", "d", "def"});
  Rng rng(101);
  Tally t;
  std::size_t patterns = 0, scoped = 0;
  auto check = [&](const Pattern& p) {
    ++patterns;
    for (auto mode : {Syntax::Core, Syntax::Sugar}) {
      std::string text = render(p, mode);
      t.expect(parse(text, sig, mode) == p, [&] { return "round trip: " + text; });
    }
    auto ts = tokens(p);
    std::span<const Token> all(ts);
    for (std::size_t k = 1; k < ts.size(); ++k)
      t.expect(!try_parse_tokens(all.first(k)), [&] {
        return "prefix " + std::to_string(k) + " parses: " + render(p, Syntax::Core);
      });
    if (ts.size() > 12) return;
    ++scoped;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto k = ts[i].kind;
      if (k == TokenKind::Exists || k == TokenKind::Mu) {
        auto want = oracle::binder_scope(all, i);
        t.expect(want && *want == binder_scope(p, i), [&] {
          return "binder scope at " + std::to_string(i) + ": " + render(p, Syntax::Core);
        });
      } else if (k == TokenKind::Appl || k == TokenKind::Imp) {
        auto want = oracle::binary_scopes(all, i);
        t.expect(want && *want == binary_scopes(p, i), [&] {
          return "binary scopes at " + std::to_string(i) + ": " + render(p, Syntax::Core);
        });
      }
    }
  };
  for (std::size_t i = 0; i < 8000; ++i) check(random_pattern(rng, 1 + i % 20));
  for (std::size_t made = 0; made < 4000;) {
    Pattern p = sugar_pattern(rng, 3);
    if (p.size() > 20) continue;
    check(p);
    ++made;
  }
  return outcome(t, std::to_string(patterns) + " patterns (<= 20 tokens), " +
                        std::to_string(scoped) + " scope-checked");
}

// ---------------------------------------------------------------------------
// 2. Polarity

Outcome polarity() {
  Rng rng(202);
  Tally t;
  PatternShape shape;
  shape.set_vars = 3;
  std::size_t patterns = 0;
  auto check = [&](const Pattern& p) {
    ++patterns;
    for (std::uint32_t X = 0; X < 3; ++X) {
      t.expect(is_positive_in(p, X) == oracle::positive_in(p, X),
               [&] { return "positive in X" + std::to_string(X) + ": " + show(p); });
      t.expect(is_negative_in(p, X) == oracle::negative_in(p, X),
               [&] { return "negative in X" + std::to_string(X) + ": " + show(p); });
    }
  };
  for (std::size_t i = 0; i < 8000; ++i) check(random_pattern(rng, 1 + i % 20, shape));
  for (std::size_t i = 0; i < 4000; ++i) check(random_polar(rng, 4, 0, i % 2 == 0, shape));

  // Worked examples: imp X0 imp X0 bot, imp imp X0 bot bot, and their application.
  Pattern X0 = Pattern::svar(0);
  Pattern first = Pattern::imp(X0, Pattern::imp(X0, bot()));
  Pattern second = Pattern::imp(Pattern::imp(X0, bot()), bot());
  Pattern both = Pattern::appl(first, second);
  t.expect(n_left(first, 0, 1) == 1 && n_left(first, 0, 3) == 1,
           [] { return std::string("first example counts"); });
  t.expect(is_negative_in(first, 0) && !is_positive_in(first, 0),
           [] { return std::string("first example polarity"); });
  t.expect(n_left(second, 0, 2) == 2, [] { return std::string("second example count"); });
  t.expect(is_positive_in(second, 0) && !is_negative_in(second, 0),
           [] { return std::string("second example polarity"); });
  t.expect(!is_positive_in(both, 0) && !is_negative_in(both, 0),
           [] { return std::string("third example is neither"); });
  return outcome(t, std::to_string(patterns) + " patterns x 3 set variables, 3 worked examples");
}

// ---------------------------------------------------------------------------
// 3. Semantic identities

void basic_values(const Structure& s, const Valuation& e, const Pattern& phi, const Pattern& psi,
                  std::uint32_t x, Tally& t) {
  Subset A = s.full(), P = evaluate(s, e, phi), Q = evaluate(s, e, psi);
  auto ev = [&](const Pattern& p) { return evaluate(s, e, p); };
  auto fail = [&](const char* what) {
    return [&, what] { return std::string(what) + " for " + show(phi) + " , " + show(psi); };
  };
  t.expect(ev(Pattern::imp(phi, psi)) == ((A - P) | Q), fail("imp"));
  t.expect(ev(bot()).empty(), fail("bot"));
  t.expect(ev(neg(phi)) == A - P, fail("neg"));
  t.expect(ev(top()) == A, fail("top"));
  t.expect(ev(disj(phi, psi)) == (P | Q), fail("or"));
  t.expect(ev(conj(phi, psi)) == (P & Q), fail("and"));
  t.expect(ev(iff(phi, psi)) == A - ((P - Q) | (Q - P)), fail("iff"));
  Subset meet = A;
  for (std::size_t a = 0; a < s.size(); ++a) meet &= evaluate(s, with_element(e, x, a), phi);
  t.expect(ev(forall(x, phi)) == meet, fail("forall"));
}

void model_equivalences(const Structure& s, const Valuation& e, const Pattern& phi,
                        const Pattern& psi, std::uint32_t x, std::uint32_t X, Tally& t) {
  Subset A = s.full(), P = evaluate(s, e, phi), Q = evaluate(s, e, psi);
  auto sat = [&](const Pattern& p) { return satisfies(s, e, p); };
  auto fail = [&](const char* what) {
    return [&, what] { return std::string(what) + " for " + show(phi) + " , " + show(psi); };
  };
  t.expect(sat(Pattern::evar(x)) == (s.size() == 1), fail("models x"));
  t.expect(sat(Pattern::svar(X)) == (e.set_of(X) == A), fail("models X"));
  for (const auto& [name, value] : s.constants())
    t.expect(sat(Pattern::constant(name)) == (value == A), fail("models constant"));
  t.expect(!sat(bot()) && sat(top()), fail("models bot/top"));
  t.expect(sat(neg(phi)) == P.empty(), fail("models neg"));
  Subset applied;
  for (auto b : P.elements())
    for (auto c : Q.elements()) applied |= s.app(b, c);
  t.expect(sat(Pattern::appl(phi, psi)) == (applied == A), fail("models appl"));
  t.expect(sat(conj(phi, psi)) == (sat(phi) && sat(psi)), fail("models and"));
  t.expect(sat(disj(phi, psi)) == ((P | Q) == A), fail("models or"));
  t.expect(sat(Pattern::imp(phi, psi)) == P.subset_of(Q), fail("models imp"));
  t.expect(sat(iff(phi, psi)) == (P == Q), fail("models iff"));
  t.expect(sat(iff(phi, psi)) == (sat(Pattern::imp(phi, psi)) && sat(Pattern::imp(psi, phi))),
           fail("models iff as two imps"));
  Subset join;
  bool some = false, every = true;
  for (std::size_t a = 0; a < s.size(); ++a) {
    Valuation ea = with_element(e, x, a);
    join |= evaluate(s, ea, phi);
    bool here = satisfies(s, ea, phi);
    some = some || here;
    every = every && here;
  }
  t.expect(sat(Pattern::exists(x, phi)) == (join == A), fail("models exists"));
  t.expect(!some || sat(Pattern::exists(x, phi)), fail("models exists witness"));
  t.expect(sat(forall(x, phi)) == every, fail("models forall"));
  bool all_sets = true;
  for (std::uint64_t b = 0; b <= A.bits() && all_sets; ++b)
    all_sets = satisfies(s, with_set(e, X, Subset(b)), phi);
  t.expect(!all_sets || sat(Pattern::mu(X, phi)), fail("models mu"));
}

// x = x3 never occurs in psi, chi or the context arguments.
void propagation_and_contexts(const Structure& s, Rng& rng, Tally& t) {
  static const PatternShape small{3, 2, {"c", "d"}, true, true};
  static const PatternShape with_x{4, 2, {"c", "d"}, true, true};
  const std::uint32_t x = 3;
  Pattern phi = random_pattern_upto(rng, 4, with_x);
  Pattern psi = random_pattern_upto(rng, 4, small);
  Pattern chi = random_pattern_upto(rng, 3, small);
  auto ap = [](const Pattern& a, const Pattern& b) { return Pattern::appl(a, b); };
  auto ex = [&](const Pattern& p) { return Pattern::exists(x, p); };
  auto all = [&](const Pattern& p) { return forall(x, p); };
  std::vector<std::pair<const char*, Pattern>> laws = {
      {"propagation-l", iff(ap(phi, bot()), bot())},
      {"propagation-r", iff(ap(bot(), phi), bot())},
      {"propagation-or-l", iff(ap(disj(phi, psi), chi), disj(ap(phi, chi), ap(psi, chi)))},
      {"propagation-or-r", iff(ap(chi, disj(phi, psi)), disj(ap(chi, phi), ap(chi, psi)))},
      {"propagation-exists-l", iff(ap(ex(phi), psi), ex(ap(phi, psi)))},
      {"propagation-exists-r", iff(ap(psi, ex(phi)), ex(ap(psi, phi)))},
      {"propagation-and-l", Pattern::imp(ap(conj(phi, psi), chi), conj(ap(phi, chi), ap(psi, chi)))},
      {"propagation-and-r", Pattern::imp(ap(chi, conj(phi, psi)), conj(ap(chi, phi), ap(chi, psi)))},
      {"propagation-forall-l", Pattern::imp(ap(all(phi), psi), all(ap(phi, psi)))},
      {"propagation-forall-r", Pattern::imp(ap(psi, all(phi)), all(ap(psi, phi)))},
  };
  Context C = random_context(rng, 1 + static_cast<int>(pick(rng, 2)), small);
  auto in = [&](const Pattern& p) { return plug(C, p); };
  laws.push_back({"context-bot", iff(in(bot()), bot())});
  laws.push_back({"context-or", iff(in(disj(phi, psi)), disj(in(phi), in(psi)))});
  laws.push_back({"context-exists", iff(in(ex(phi)), ex(in(phi)))});
  laws.push_back({"context-and", Pattern::imp(in(conj(phi, psi)), conj(in(phi), in(psi)))});
  laws.push_back({"context-forall", Pattern::imp(in(all(phi)), all(in(phi)))});
  for (const auto& [name, law] : laws)
    t.expect(valid_in(s, law, rng), [&, name = name] {
      return std::string(name) + " fails on |A|=" + std::to_string(s.size()) + ": " + show(law);
    });
}

void fv_dependence(const Structure& s, const Valuation& e, const Pattern& phi, Rng& rng, Tally& t) {
  Valuation other = random_valuation(rng, s, 4, 3);
  auto fv = free_vars(phi);
  for (auto x : fv.element) other.element[x] = e.element_of(x);
  for (auto X : fv.set) other.set[X] = e.set_of(X);
  t.expect(evaluate(s, e, phi) == evaluate(s, other, phi),
           [&] { return "value depends on a non-free variable: " + show(phi); });
}

Outcome semantic_identities() {
  Signature sig({"c", "d"});
  auto suite = exhaustive_suite(sig, 2);
  std::size_t exhaustive = suite.size();
  Rng rng(303);
  for (std::size_t k = 0; k < 500; ++k) suite.push_back(random_structure(rng, 3 + k % 2, {"c", "d"}));
  PatternShape shape;
  shape.element_vars = 3;
  shape.set_vars = 2;
  Tally t;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Structure& s = suite[i];
    int rounds = i < exhaustive ? 1 : 4;
    for (int r = 0; r < rounds; ++r) {
      Pattern phi = random_pattern_upto(rng, 8, shape);
      Pattern psi = random_pattern_upto(rng, 8, shape);
      Valuation e = random_valuation(rng, s, 4, 3);
      auto x = static_cast<std::uint32_t>(pick(rng, 3));
      auto X = static_cast<std::uint32_t>(pick(rng, 2));
      basic_values(s, e, phi, psi, x, t);
      model_equivalences(s, e, phi, psi, x, X, t);
      propagation_and_contexts(s, rng, t);
      fv_dependence(s, e, phi, rng, t);
    }
  }
  return outcome(t, std::to_string(exhaustive) + " exhaustive (|A|<=2) + " +
                        std::to_string(suite.size() - exhaustive) + " sampled (|A|<=4) structures");
}

// ---------------------------------------------------------------------------
// 4. Fixpoints

Outcome fixpoints() {
  Rng rng(404);
  Tally t;
  PatternShape shape;
  std::size_t pairs = 0;
  for (; pairs < 1200; ++pairs) {
    std::size_t n = 1 + pairs % 4;
    Structure s = random_structure(rng, n, {"c", "d"});
    Valuation e = random_valuation(rng, s, 3, 3);
    Pattern body = random_polar(rng, 3, 0, true, shape);
    auto what = [&](const char* m) {
      return [&, m] { return std::string(m) + " on |A|=" + std::to_string(n) + ": " + show(body); };
    };
    t.expect(is_positive_in(body, 0), what("generator produced a non-positive body"));
    SetFunction f = set_function(s, e, 0, body);
    t.expect(is_monotone(f, n), what("not monotone"));
    Subset lfp = kt_lfp(f, n);
    t.expect(kleene_lfp(f, n) == lfp, what("kleene_lfp differs from kt_lfp"));
    t.expect(evaluate(s, e, Pattern::mu(0, body)) == lfp, what("mu differs from kt_lfp"));
    Subset gfp = evaluate(s, e, nu(0, body));
    t.expect(evaluate_nu_direct(s, e, 0, body) == gfp, what("nu differs from direct form"));
    Subset meet = s.full(), join;
    for (std::uint64_t b = 0; b <= s.full().bits(); ++b)
      if (f(Subset(b)) == Subset(b)) {
        meet &= Subset(b);
        join |= Subset(b);
      }
    t.expect(f(lfp) == lfp && meet == lfp, what("mu is not the least exact fixpoint"));
    t.expect(f(gfp) == gfp && join == gfp, what("nu is not the greatest exact fixpoint"));
  }
  return outcome(t, std::to_string(pairs) + " (structure, positive pattern) pairs, |A|<=4");
}

// ---------------------------------------------------------------------------
// 5. Substitution

struct SubstInstance {
  enum class Family { ElementFree, SetFree, ElementBound, SetBound, ElementFsub, SetFsub } family;
  Pattern phi;
  std::uint32_t v = 0;  // substituted / renamed variable
  std::uint32_t w = 0;  // element replacement or bounded target
  Pattern delta = bot();
  Pattern result = bot();
  bool captured = false;
};

std::vector<SubstInstance> substitution_instances(Rng& rng, std::size_t count) {
  using F = SubstInstance::Family;
  PatternShape shape{3, 2, {"c"}, true, true};
  std::vector<SubstInstance> out;
  while (out.size() < count) {
    SubstInstance in{static_cast<F>(out.size() % 6), random_pattern_upto(rng, 8, shape)};
    switch (in.family) {
      case F::ElementFree: {
        in.v = static_cast<std::uint32_t>(pick(rng, 3));
        in.w = static_cast<std::uint32_t>(pick(rng, 3));
        Pattern y = Pattern::evar(in.w);
        if (!is_free_for(VarRef::element(in.v), y, in.phi)) continue;
        in.result = subst_free(in.phi, VarRef::element(in.v), y);
        break;
      }
      case F::SetFree: {
        in.v = static_cast<std::uint32_t>(pick(rng, 2));
        in.delta = random_pattern_upto(rng, 4, shape);
        if (!is_free_for(VarRef::set(in.v), in.delta, in.phi)) continue;
        in.result = subst_free(in.phi, VarRef::set(in.v), in.delta);
        break;
      }
      case F::ElementBound:
        in.v = static_cast<std::uint32_t>(pick(rng, 3));
        in.w = 3 + static_cast<std::uint32_t>(pick(rng, 2));  // never occurs in phi
        in.result = subst_bound(in.phi, VarRef::element(in.v), VarRef::element(in.w));
        break;
      case F::SetBound:
        in.v = static_cast<std::uint32_t>(pick(rng, 2));
        in.w = 2 + static_cast<std::uint32_t>(pick(rng, 2));
        in.result = subst_bound(in.phi, VarRef::set(in.v), VarRef::set(in.w));
        break;
      case F::ElementFsub: {
        in.v = static_cast<std::uint32_t>(pick(rng, 3));
        in.w = static_cast<std::uint32_t>(pick(rng, 3));
        if (in.v != in.w && coin(rng)) {
          // Force capture: a free v under a binder on the replacement.
          Pattern inner = Pattern::appl(Pattern::evar(in.v), random_pattern_upto(rng, 3, shape));
          in.phi = Pattern::imp(in.phi, Pattern::exists(in.w, inner));
        }
        Pattern y = Pattern::evar(in.w);
        in.captured = !is_free_for(VarRef::element(in.v), y, in.phi);
        in.result = subst_capture_avoiding(in.phi, VarRef::element(in.v), y);
        break;
      }
      case F::SetFsub: {
        in.v = static_cast<std::uint32_t>(pick(rng, 2));
        in.delta = random_pattern_upto(rng, 4, shape);
        if (coin(rng)) {
          auto fv = free_vars(in.delta);
          if (!fv.element.empty()) {
            Pattern inner = Pattern::appl(Pattern::svar(in.v), Pattern::constant("c"));
            in.phi = Pattern::appl(in.phi, Pattern::exists(*fv.element.begin(), inner));
          } else if (!fv.set.empty() && *fv.set.begin() != in.v) {
            Pattern inner = disj(Pattern::svar(in.v), Pattern::svar(*fv.set.begin()));
            in.phi = Pattern::appl(in.phi, Pattern::mu(*fv.set.begin(), inner));
          }
        }
        in.captured = !is_free_for(VarRef::set(in.v), in.delta, in.phi);
        in.result = subst_capture_avoiding(in.phi, VarRef::set(in.v), in.delta);
        break;
      }
    }
    out.push_back(in);
  }
  return out;
}

void check_instance(const SubstInstance& in, const Structure& s, const Valuation& e, Tally& t) {
  using F = SubstInstance::Family;
  auto fail = [&](const char* m) {
    return [&, m] {
      return std::string(m) + " on |A|=" + std::to_string(s.size()) + ": " + show(in.phi) + "  ~>  " +
             show(in.result);
    };
  };
  Subset got = evaluate(s, e, in.result);
  switch (in.family) {
    case F::ElementFree:
    case F::ElementFsub: {
      Subset want = evaluate(s, with_element(e, in.v, e.element_of(in.w)), in.phi);
      if (in.family == F::ElementFree) t.expect(got == want, fail("element substitution lemma"));
      Subset join, meet = s.full();
      for (std::size_t a = 0; a < s.size(); ++a) {
        Subset here = evaluate(s, with_element(e, in.v, a), in.phi);
        join |= here;
        meet &= here;
      }
      t.expect(got.subset_of(join), fail("exists axiom"));
      t.expect(meet.subset_of(got), fail("forall axiom"));
      if (in.family == F::ElementFsub) {
        t.expect(satisfies(s, e, Pattern::imp(in.result, Pattern::exists(in.v, in.phi))),
                 fail("exists axiom pattern"));
        t.expect(satisfies(s, e, Pattern::imp(forall(in.v, in.phi), in.result)),
                 fail("forall axiom pattern"));
      }
      break;
    }
    case F::SetFree:
    case F::SetFsub: {
      Subset want = evaluate(s, with_set(e, in.v, evaluate(s, e, in.delta)), in.phi);
      t.expect(got == want, fail("set substitution lemma"));
      break;
    }
    case F::ElementBound:
    case F::SetBound:
      t.expect(got == evaluate(s, e, in.phi), fail("bounded substitution"));
      break;
  }
}

Outcome substitution() {
  Rng rng(505);
  auto instances = substitution_instances(rng, 2400);
  std::size_t captured = static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [](const auto& i) { return i.captured; }));
  Signature sig({"c"});
  auto suite = exhaustive_suite(sig, 2);
  std::size_t exhaustive = suite.size();
  for (std::size_t k = 0; k < 500; ++k) suite.push_back(random_structure(rng, 1 + k % 3, {"c"}));
  Tally t;
  t.expect(captured >= 200, [&] { return "only " + std::to_string(captured) + " capture cases"; });
  for (const auto& s : suite) {
    Valuation e = random_valuation(rng, s, 5, 4);
    for (const auto& in : instances) check_instance(in, s, e, t);
  }
  return outcome(t, std::to_string(instances.size()) + " instances (" + std::to_string(captured) +
                        " forcing capture) x " + std::to_string(exhaustive) +
                        " exhaustive + " + std::to_string(suite.size() - exhaustive) +
                        " sampled structures");
}

// ---------------------------------------------------------------------------
// 6. Consequence separation

Outcome consequence_separation() {
  Tally t;
  auto suite = exhaustive_suite(Signature(), 2);
  Pattern x = Pattern::evar(0), y = Pattern::evar(1);
  const std::vector<Pattern> gamma_or{disj(x, y)}, delta_and{conj(x, y)};

  Verdict g = consequence(ConsequenceKind::Global, gamma_or, delta_and, suite);
  t.expect(g.holds, [] { return std::string("x \\/ y global consequence fails"); });

  Verdict l = consequence(ConsequenceKind::Local, gamma_or, delta_and, suite);
  t.expect(!l.holds && l.counterexample.has_value(),
           [] { return std::string("x \\/ y local consequence should fail"); });
  if (l.counterexample) {
    const auto& c = *l.counterexample;
    t.expect(c.structure.size() == 2, [] { return std::string("local witness is not 2-element"); });
    t.expect(c.valuation.element_of(0) != c.valuation.element_of(1),
             [] { return std::string("local witness has x = y"); });
    t.expect(violates(ConsequenceKind::Local, gamma_or, delta_and, c.structure, c.valuation),
             [] { return std::string("local witness does not replay"); });
    t.expect(satisfies(c.structure, c.valuation, gamma_or[0]) &&
                 !satisfies(c.structure, c.valuation, delta_and[0]),
             [] { return std::string("local witness does not replay by evaluation"); });
  }

  Verdict lxy = consequence(ConsequenceKind::Local, {x}, {y}, suite);
  t.expect(lxy.holds, [] { return std::string("x local y fails"); });

  Verdict sxy = consequence(ConsequenceKind::Strong, {x}, {y}, suite);
  t.expect(!sxy.holds && sxy.counterexample.has_value(),
           [] { return std::string("x strong y should fail"); });
  if (sxy.counterexample) {
    const auto& c = *sxy.counterexample;
    t.expect(c.structure.size() >= 2, [] { return std::string("strong witness too small"); });
    t.expect(violates(ConsequenceKind::Strong, {x}, {y}, c.structure, c.valuation),
             [] { return std::string("strong witness does not replay"); });
    t.expect(!evaluate(c.structure, c.valuation, x).subset_of(evaluate(c.structure, c.valuation, y)),
             [] { return std::string("strong witness does not replay by evaluation"); });
  }
  return outcome(t, std::to_string(suite.size()) + " structures; global holds, local fails on |A|=2, "
                                                   "x |=l y holds, strong fails");
}

// ---------------------------------------------------------------------------
// 7. Tautologies

Pattern random_formula(Rng& rng, const std::vector<Pattern>& atoms, int depth) {
  if (depth == 0 || coin(rng, 0.25)) {
    if (coin(rng, 0.1)) {
      auto k = static_cast<std::uint32_t>(pick(rng, 3));
      return Pattern::mu(k, Pattern::svar(k));  // any bottom shape
    }
    return atoms[pick(rng, atoms.size())];
  }
  switch (pick(rng, 6)) {
    case 0: return neg(random_formula(rng, atoms, depth - 1));
    case 1: return disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 2: return conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default:
      return Pattern::imp(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

// Instances of tautological schemas over random subformulas.
Pattern schema_instance(Rng& rng, const std::vector<Pattern>& atoms) {
  Pattern a = random_formula(rng, atoms, 2), b = random_formula(rng, atoms, 2),
          c = random_formula(rng, atoms, 1);
  switch (pick(rng, 5)) {
    case 0: return Pattern::imp(a, Pattern::imp(b, a));
    case 1:
      return Pattern::imp(Pattern::imp(a, Pattern::imp(b, c)),
                          Pattern::imp(Pattern::imp(a, b), Pattern::imp(a, c)));
    case 2: return Pattern::imp(neg(neg(a)), a);
    case 3: return disj(a, neg(a));
    default: return iff(conj(a, b), conj(b, a));
  }
}

Outcome tautologies() {
  Rng rng(707);
  PatternShape shape;
  Tally t;
  std::size_t skeletons = 0, positive = 0;
  while (skeletons < 6000) {
    std::size_t k = 1 + pick(rng, 6);
    std::vector<Pattern> atoms;
    while (atoms.size() < k) {
      Pattern a = random_pattern_upto(rng, 5, shape);
      if (a.kind() == Kind::Imp || oracle::is_mu_identity(a)) continue;
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
    }
    Pattern p = skeletons % 3 == 0 ? schema_instance(rng, atoms) : random_formula(rng, atoms, 4);
    if (skeleton(p).atoms.size() > 6) continue;
    ++skeletons;
    bool got = is_tautology(p);
    positive += got ? 1 : 0;
    for (std::size_t n : {1, 2})
      t.expect(got == oracle::powerset_tautology(p, n), [&] {
        return "disagrees at |A|=" + std::to_string(n) + ": " + show(p);
      });
  }
  return outcome(t, std::to_string(skeletons) + " skeletons (<= 6 atoms), " + std::to_string(positive) +
                        " tautologies");
}

// ---------------------------------------------------------------------------
// 8. Proof corpus

Outcome proof_corpus() {
  Tally t;
  Signature sig({"c", "d"});
  auto positive = scripts("positive");
  auto negative = scripts("negative");
  t.expect(positive.size() >= 15, [] { return std::string("fewer than 15 positive scripts"); });
  t.expect(negative.size() >= 10, [] { return std::string("fewer than 10 negative scripts"); });
  std::map<Rule, std::size_t> uses;
  std::set<Level> levels;
  std::size_t audited = 0, structures = 0;
  for (const auto& path : positive) {
    auto name = path.filename().string();
    auto text = slurp(path);
    auto script = parse_proof(text, sig);
    auto report = check_proof(script);
    t.expect(report.overall, [&] { return name + " rejected"; });
    std::smatch m;
    bool tagged = std::regex_search(text, m, std::regex("# level: (\\w+)"));
    t.expect(tagged && to_string(report.level) == m[1].str(), [&] { return name + " level"; });
    levels.insert(report.level);
    std::set<Rule> here;
    for (const auto& l : script.lines) here.insert(l.just.rule);
    for (auto r : here) ++uses[r];
    SuiteOptions o;
    o.max_size = 3;
    o.exhaustive_max = 2;
    o.samples = 200;
    auto suite = enumerate_structures(signature_of(script), o);
    auto audit = audit_soundness(script, report, suite);
    audited += audit.lines_audited;
    structures += audit.structures;
    t.expect(audit.violations.empty(), [&] {
      return name + " audit violation at line " + std::to_string(audit.violations[0].line);
    });
  }
  t.expect(levels.size() == 3, [] { return std::string("not all levels covered"); });
  for (int r = 0; r <= static_cast<int>(Rule::KT); ++r) {
    auto rule = static_cast<Rule>(r);
    t.expect(uses[rule] >= 2, [&] { return std::string(keyword(rule)) + " used fewer than twice"; });
  }

  std::size_t rejections = 0;
  for (const auto& path : negative) {
    auto name = path.filename().string();
    auto text = slurp(path);
    std::smatch m;
    if (std::regex_search(text, m, std::regex("# expect-error: (\\w+)"))) {
      std::string got = "none";
      try {
        parse_proof(text, sig);
      } catch (const Error& e) {
        got = std::string(to_string(e.code()));
      }
      t.expect(got == m[1].str(), [&] { return name + " raised " + got; });
      ++rejections;
      continue;
    }
    auto report = check_proof(parse_proof(text, sig));
    t.expect(!report.overall, [&] { return name + " accepted"; });
    std::map<std::size_t, std::string> expected;
    std::regex re("# expect: (\\d+) ([a-z-]+)");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator();
         ++it)
      expected[std::stoul((*it)[1].str())] = (*it)[2].str();
    t.expect(!expected.empty(), [&] { return name + " has no expectations"; });
    for (const auto& v : report.lines) {
      auto want = expected.find(v.number);
      bool ok = want == expected.end() ? v.accepted : (!v.accepted && v.reason == want->second);
      if (want != expected.end()) ++rejections;
      t.expect(ok, [&] { return name + " line " + std::to_string(v.number) + ": " + v.reason; });
    }
  }
  return outcome(t, std::to_string(positive.size()) + " positive scripts (" + std::to_string(audited) +
                        " lines audited over " + std::to_string(structures) + " structure runs), " +
                        std::to_string(negative.size()) + " negative scripts (" +
                        std::to_string(rejections) + " expected rejections)");
}

// ---------------------------------------------------------------------------
// 9. Definedness

Outcome definedness() {
  Rng rng(909);
  Signature sig({"c", "def"});
  PatternShape shape{3, 2, {"c", "def"}, true, true};
  Tally t;
  std::size_t count = 0;
  for (; count < 300; ++count) {
    std::size_t n = 1 + count % 4;
    Structure raw = random_structure(rng, n, {"c"}, true);
    Structure s = validate_structure(structure_to_json(raw), sig);
    t.expect(!definedness_violation(s).has_value(), [] { return std::string("law violated"); });
    Subset A = s.full(), d = *s.constant("def");
    for (std::size_t a = 0; a < n; ++a)
      t.expect(apply_sets(s, A, Subset::singleton(a)) == A, [] { return std::string("A * {a} != A"); });
    for (std::uint64_t b = 1; b <= A.bits(); ++b)
      t.expect(apply_sets(s, d, Subset(b)) == A, [] { return std::string("def * B != A"); });

    for (int r = 0; r < 3; ++r) {
      Pattern phi = random_pattern_upto(rng, 7, shape);
      Pattern psi = random_pattern_upto(rng, 5, shape);
      Valuation e = random_valuation(rng, s, 4, 3);
      Subset P = evaluate(s, e, phi);
      auto what = [&](const char* m) { return [&, m] { return std::string(m) + ": " + show(phi); }; };
      t.expect(evaluate(s, e, ceil(phi)) == (P.empty() ? Subset() : A), what("ceil table"));
      t.expect(evaluate(s, e, floor(phi)) == (P == A ? A : Subset()), what("floor table"));
      t.expect(eval_definedness(s, e, DefinednessOp::Ceil, {phi}) == evaluate(s, e, ceil(phi)),
               what("closed-form ceil"));
      t.expect(eval_definedness(s, e, DefinednessOp::Floor, {phi}) == evaluate(s, e, floor(phi)),
               what("closed-form floor"));
      t.expect(eval_definedness(s, e, DefinednessOp::Eq, {phi, psi}) ==
                   evaluate(s, e, equals(phi, psi)),
               what("closed-form equality"));
      t.expect(eval_definedness(s, e, DefinednessOp::Mem, {Pattern::evar(0), phi}) ==
                   evaluate(s, e, member(0, phi)),
               what("closed-form membership"));
      std::vector<std::pair<const char*, Pattern>> laws = {
          {"phi -> ceil phi", Pattern::imp(phi, ceil(phi))},
          {"floor phi -> phi", Pattern::imp(floor(phi), phi)},
          {"ceil phi . psi -> ceil phi", Pattern::imp(Pattern::appl(ceil(phi), psi), ceil(phi))},
          {"psi . ceil phi -> ceil phi", Pattern::imp(Pattern::appl(psi, ceil(phi)), ceil(phi))},
          {"not both memberships", disj(neg(member(0, phi)), neg(member(0, neg(phi))))},
      };
      for (const auto& [name, law] : laws)
        t.expect(valid_in(s, law, rng), [&, name = name] { return std::string(name) + ": " + show(phi); });
    }
    t.expect(models(s, ceil(Pattern::evar(0))), [] { return std::string("ceil x"); });
    t.expect(models(s, Pattern::exists(0, equals(Pattern::evar(0), Pattern::evar(1)))),
             [] { return std::string("exists x . x = y"); });
    t.expect(models(s, iff(ceil(bot()), bot())), [] { return std::string("ceil bot <-> bot"); });
  }
  return outcome(t, std::to_string(count) + " validated definedness structures, |A|<=4");
}

}  // namespace

int main() {
  bool all = true;
  all &= run_criterion(1, "unique readability", 30, readability);
  all &= run_criterion(2, "polarity", 10, polarity);
  all &= run_criterion(3, "semantic identities", 120, semantic_identities);
  all &= run_criterion(4, "fixpoints", 120, fixpoints);
  all &= run_criterion(5, "substitution", 120, substitution);
  all &= run_criterion(6, "consequence separation", 30, consequence_separation);
  all &= run_criterion(7, "tautology oracle", 60, tautologies);
  all &= run_criterion(8, "proof corpus", 120, proof_corpus);
  all &= run_criterion(9, "definedness", 60, definedness);
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILED");
  return all ? 0 : 1;
}
