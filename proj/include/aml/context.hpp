#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aml/pattern.hpp"
#include "aml/syntax.hpp"

namespace aml {

/// A single-hole application context. Stored as the path from the root to
/// the hole; each step records on which side the hole continues and the
/// pattern sitting on the other side.
class Context {
 public:
  enum class Side : std::uint8_t { Left, Right };
  struct Step {
    Side side;
    Pattern arg;
    friend bool operator==(const Step&, const Step&) = default;
  };

  static Context box() { return Context(); }
  /// ApplL(C, arg): plugs to appl(C[d], arg).
  static Context appl_l(const Context& c, Pattern arg);
  /// ApplR(arg, C): plugs to appl(arg, C[d]).
  static Context appl_r(Pattern arg, const Context& c);

  bool is_box() const { return steps_.empty(); }
  const std::vector<Step>& steps() const { return steps_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<Step> steps_;
};

Pattern plug(const Context& c, const Pattern& delta);
VarSets context_fv(const Context& c);

/// Every context C with plug(C, target) == p, searching application spines.
std::vector<Context> find_contexts(const Pattern& p, const Pattern& target);

using ContextPair = std::pair<Context, Context>;

/// All (C1, C2) with phi == !(C1[x /\ body] /\ C2[x /\ !body]).
std::vector<ContextPair> match_singleton(const Pattern& phi, std::uint32_t x,
                                         const Pattern& body);

struct SingletonWitness {
  std::uint32_t x;
  Pattern body;
  Context c1;
  Context c2;
};

/// Like match_singleton, but recovers x and body from phi itself.
std::vector<SingletonWitness> find_singleton(const Pattern& phi);

/// Sugar text with exactly one `[]`, e.g. `c ([] x0)`. Throws Malformed when
/// the hole is missing, repeated, or not on an application spine.
Context parse_context(std::string_view text, const Signature& sig);
std::string render_context(const Context& c);

}  // namespace aml
