#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace aml {

enum class Kind : std::uint8_t { EVar, SVar, Const, Appl, Imp, Exists, Mu };

struct PatternNode;

/// An immutable AML pattern. Copies share structure; equality and ordering
/// are structural (no alpha-equivalence).
///
/// Only the seven core node kinds exist. Derived connectives (negation,
/// disjunction, nu, definedness, ...) are built by the helpers in
/// syntax.hpp and never appear as distinct nodes.
class Pattern {
 public:
  static Pattern evar(std::uint32_t index);
  static Pattern svar(std::uint32_t index);
  static Pattern constant(std::string name);
  static Pattern appl(Pattern left, Pattern right);
  static Pattern imp(Pattern left, Pattern right);
  static Pattern exists(std::uint32_t var, Pattern body);
  static Pattern mu(std::uint32_t var, Pattern body);

  Kind kind() const noexcept;
  /// Variable index for EVar/SVar, bound variable for Exists/Mu.
  std::uint32_t var() const noexcept;
  /// Constant name; empty for non-constants.
  const std::string& name() const noexcept;
  /// Operands of Appl/Imp.
  const Pattern& left() const noexcept;
  const Pattern& right() const noexcept;
  /// Body of Exists/Mu.
  const Pattern& body() const noexcept;

  /// Length of the core Polish token string.
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  bool is_atomic() const noexcept {
    auto k = kind();
    return k == Kind::EVar || k == Kind::SVar || k == Kind::Const;
  }
  bool is_binder() const noexcept {
    return kind() == Kind::Exists || kind() == Kind::Mu;
  }
  bool is_binary() const noexcept {
    return kind() == Kind::Appl || kind() == Kind::Imp;
  }

  friend bool operator==(const Pattern& a, const Pattern& b) noexcept;
  friend std::strong_ordering operator<=>(const Pattern& a,
                                          const Pattern& b) noexcept;

 private:
  friend struct PatternNode;
  Pattern() = default;
  explicit Pattern(std::shared_ptr<const PatternNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const PatternNode> node_;
};

struct PatternNode {
  Kind kind;
  std::uint32_t index = 0;
  std::string name;
  // Unused operand slots stay empty (null node).
  Pattern left;
  Pattern right;
  std::size_t size = 1;
  std::size_t hash = 0;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept { return p.hash(); }
};

}  // namespace aml
