#include "aml/pattern.hpp"

#include <functional>

namespace aml {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEmptyName;

}  // namespace

Pattern Pattern::evar(std::uint32_t index) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::EVar;
  n->index = index;
  n->hash = mix(1, index);
  return Pattern(std::move(n));
}

Pattern Pattern::svar(std::uint32_t index) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::SVar;
  n->index = index;
  n->hash = mix(2, index);
  return Pattern(std::move(n));
}

Pattern Pattern::constant(std::string name) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::Const;
  n->hash = mix(3, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Pattern(std::move(n));
}

Pattern Pattern::appl(Pattern left, Pattern right) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::Appl;
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(4, left.hash()), right.hash());
  n->left = std::move(left);
  n->right = std::move(right);
  return Pattern(std::move(n));
}

Pattern Pattern::imp(Pattern left, Pattern right) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::Imp;
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(5, left.hash()), right.hash());
  n->left = std::move(left);
  n->right = std::move(right);
  return Pattern(std::move(n));
}

Pattern Pattern::exists(std::uint32_t var, Pattern body) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::Exists;
  n->index = var;
  n->size = 2 + body.size();
  n->hash = mix(mix(6, var), body.hash());
  n->left = std::move(body);
  return Pattern(std::move(n));
}

Pattern Pattern::mu(std::uint32_t var, Pattern body) {
  auto n = std::make_shared<PatternNode>();
  n->kind = Kind::Mu;
  n->index = var;
  n->size = 2 + body.size();
  n->hash = mix(mix(7, var), body.hash());
  n->left = std::move(body);
  return Pattern(std::move(n));
}

Kind Pattern::kind() const noexcept { return node_->kind; }
std::uint32_t Pattern::var() const noexcept { return node_->index; }
const std::string& Pattern::name() const noexcept {
  return node_->kind == Kind::Const ? node_->name : kEmptyName;
}
const Pattern& Pattern::left() const noexcept { return node_->left; }
const Pattern& Pattern::right() const noexcept { return node_->right; }
const Pattern& Pattern::body() const noexcept { return node_->left; }
std::size_t Pattern::size() const noexcept { return node_->size; }
std::size_t Pattern::hash() const noexcept { return node_->hash; }

bool operator==(const Pattern& a, const Pattern& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const PatternNode& x = *a.node_;
  const PatternNode& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Kind::EVar:
    case Kind::SVar:
      return x.index == y.index;
    case Kind::Const:
      return x.name == y.name;
    case Kind::Appl:
    case Kind::Imp:
      return x.left == y.left && x.right == y.right;
    case Kind::Exists:
    case Kind::Mu:
      return x.index == y.index && x.left == y.left;
  }
  return false;
}

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const PatternNode& x = *a.node_;
  const PatternNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Kind::EVar:
    case Kind::SVar:
      return x.index <=> y.index;
    case Kind::Const:
      return x.name <=> y.name;
    case Kind::Appl:
    case Kind::Imp:
      if (auto c = x.left <=> y.left; c != 0) return c;
      return x.right <=> y.right;
    case Kind::Exists:
    case Kind::Mu:
      if (auto c = x.index <=> y.index; c != 0) return c;
      return x.left <=> y.left;
  }
  return std::strong_ordering::equal;
}

}  // namespace aml
