#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "aml/syntax.hpp"

namespace aml {

/// Universes hold at most this many elements; subsets are 64-bit masks.
inline constexpr std::size_t kMaxUniverse = 64;
/// Default bound on |A| for loops over all 2^|A| subsets.
inline constexpr std::size_t kDefaultEnumerationCap = 12;

/// Subset of a universe {0, ..., n-1}, as a bitmask.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Subset singleton(std::size_t i) { return Subset(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
  std::size_t count() const;
  void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  std::vector<std::size_t> elements() const;

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  /// a minus b.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  Subset& operator|=(Subset o) { bits_ |= o.bits_; return *this; }
  Subset& operator&=(Subset o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Finite Σ-structure: named universe, set-valued application, constants.
class Structure {
 public:
  explicit Structure(std::vector<std::string> universe);

  std::size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  Subset full() const { return Subset::full(size()); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  Subset app(std::size_t a, std::size_t b) const { return app_[a * size() + b]; }
  void set_app(std::size_t a, std::size_t b, Subset s);

  const std::map<std::string, Subset>& constants() const { return constants_; }
  std::optional<Subset> constant(const std::string& name) const;
  void set_constant(const std::string& name, Subset s);

  /// "{a, b}" in universe order.
  std::string format(Subset s) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  std::vector<std::string> universe_;
  std::vector<Subset> app_;
  std::map<std::string, Subset> constants_;
};

/// Element and set variable assignment. Unassigned element variables read as
/// universe element 0, unassigned set variables as the empty set.
struct Valuation {
  std::map<std::uint32_t, std::size_t> element;
  std::map<std::uint32_t, Subset> set;

  std::size_t element_of(std::uint32_t x) const;
  Subset set_of(std::uint32_t X) const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// B * C: union of app(b, c) over b in B, c in C.
Subset apply_sets(const Structure& s, Subset b, Subset c);

using SetFunction = std::function<Subset(Subset)>;

/// Intersection of all B with F(B) subset of B, over every subset of {0..n-1}.
Subset kt_lfp(const SetFunction& f, std::size_t n, std::size_t cap = kDefaultEnumerationCap);
/// Union of all C with C subset of F(C).
Subset kt_gfp(const SetFunction& f, std::size_t n, std::size_t cap = kDefaultEnumerationCap);
/// Iterates F from the empty set. Throws NonMonotoneDetected if an iterate
/// is not a superset of its predecessor.
Subset kleene_lfp(const SetFunction& f, std::size_t n);
/// Iterates F from the full set downwards.
Subset kleene_gfp(const SetFunction& f, std::size_t n);
bool is_monotone(const SetFunction& f, std::size_t n, std::size_t cap = kDefaultEnumerationCap);

/// Throws UniverseTooLarge when 2^n subsets would exceed the cap.
void require_enumerable(std::size_t n, std::size_t cap);

// ---------------------------------------------------------------------------
// Files

/// Reads and validates a model document against `sig`. When `sig` declares
/// `def`, also enforces the definedness law.
Structure validate_structure(const nlohmann::json& doc, const Signature& sig);
nlohmann::json structure_to_json(const Structure& s);

Valuation valuation_from_json(const nlohmann::json& doc, const Structure& s);
nlohmann::json valuation_to_json(const Valuation& e, const Structure& s);

/// Signature made of the constants a model file declares.
Signature signature_of(const Structure& s);

/// def^A * {a} = A for every a; the offending element otherwise.
std::optional<std::size_t> definedness_violation(const Structure& s);

// ---------------------------------------------------------------------------
// Suites

struct SuiteOptions {
  std::size_t max_size = 2;
  /// Sizes up to this bound are enumerated exhaustively.
  std::size_t exhaustive_max = 2;
  /// Number of random structures drawn over sizes above exhaustive_max.
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  /// Only emit structures satisfying the definedness law (adds `def` to the
  /// signature if missing).
  bool definedness = false;
};

/// Deterministic stream of structures: exhaustive over small sizes, then
/// seeded samples cycling through the larger sizes.
class StructureStream {
 public:
  StructureStream(Signature sig, SuiteOptions opts);
  std::optional<Structure> next();

 private:
  std::optional<Structure> next_exhaustive();
  Structure sample(std::size_t n);
  Structure decode(std::size_t n) const;
  bool advance_odometer(std::size_t n);

  std::vector<std::string> constants_;
  SuiteOptions opts_;
  std::mt19937_64 rng_;
  std::size_t size_ = 1;
  std::vector<std::uint64_t> digits_;
  bool started_ = false;
  std::size_t sampled_ = 0;
};

std::vector<Structure> enumerate_structures(const Signature& sig, const SuiteOptions& opts);

/// Universe names "0", "1", ... used by generated structures.
std::vector<std::string> numbered_universe(std::size_t n);

}  // namespace aml
