#include "aml/model.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "aml/error.hpp"

namespace aml {

using nlohmann::json;

std::size_t Subset::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> Subset::elements() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(std::vector<std::string> universe) : universe_(std::move(universe)) {
  if (universe_.empty()) throw Error(ErrorCode::EmptyUniverse, "the universe is empty");
  if (universe_.size() > kMaxUniverse)
    throw Error(ErrorCode::UniverseTooLarge,
                "universe has " + std::to_string(universe_.size()) +
                    " elements; at most " + std::to_string(kMaxUniverse) + " are supported");
  app_.assign(universe_.size() * universe_.size(), Subset());
}

std::optional<std::size_t> Structure::index_of(const std::string& name) const {
  auto it = std::find(universe_.begin(), universe_.end(), name);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

void Structure::set_app(std::size_t a, std::size_t b, Subset s) { app_[a * size() + b] = s; }

std::optional<Subset> Structure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

void Structure::set_constant(const std::string& name, Subset s) { constants_[name] = s; }

std::string Structure::format(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (auto i : s.elements()) {
    if (!first) out += ", ";
    out += universe_[i];
    first = false;
  }
  return out + "}";
}

std::size_t Valuation::element_of(std::uint32_t x) const {
  auto it = element.find(x);
  return it == element.end() ? 0 : it->second;
}

Subset Valuation::set_of(std::uint32_t X) const {
  auto it = set.find(X);
  return it == set.end() ? Subset() : it->second;
}

Subset apply_sets(const Structure& s, Subset b, Subset c) {
  Subset out;
  for (auto i : b.elements())
    for (auto j : c.elements()) out |= s.app(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Fixpoints

void require_enumerable(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorCode::UniverseTooLarge,
                "|A| = " + std::to_string(n) + " exceeds the enumeration cap " +
                    std::to_string(cap));
}

Subset kt_lfp(const SetFunction& f, std::size_t n, std::size_t cap) {
  require_enumerable(n, cap);
  Subset acc = Subset::full(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Subset b(bits);
    if (f(b).subset_of(b)) acc &= b;
  }
  return acc;
}

Subset kt_gfp(const SetFunction& f, std::size_t n, std::size_t cap) {
  require_enumerable(n, cap);
  Subset acc;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Subset c(bits);
    if (c.subset_of(f(c))) acc |= c;
  }
  return acc;
}

Subset kleene_lfp(const SetFunction& f, std::size_t n) {
  Subset cur;
  for (std::size_t step = 0; step <= n + 1; ++step) {
    Subset nxt = f(cur);
    if (!cur.subset_of(nxt))
      throw Error(ErrorCode::NonMonotoneDetected,
                  "iterate " + std::to_string(step + 1) + " lost elements");
    if (nxt == cur) return cur;
    cur = nxt;
  }
  return cur;
}

Subset kleene_gfp(const SetFunction& f, std::size_t n) {
  Subset cur = Subset::full(n);
  for (std::size_t step = 0; step <= n + 1; ++step) {
    Subset nxt = f(cur) & Subset::full(n);
    if (!nxt.subset_of(cur))
      throw Error(ErrorCode::NonMonotoneDetected,
                  "iterate " + std::to_string(step + 1) + " gained elements");
    if (nxt == cur) return cur;
    cur = nxt;
  }
  return cur;
}

bool is_monotone(const SetFunction& f, std::size_t n, std::size_t cap) {
  require_enumerable(n, cap);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Subset> image(count);
  for (std::uint64_t bits = 0; bits < count; ++bits) image[bits] = f(Subset(bits));
  // Checking single-element extensions suffices: B ⊆ C is a chain of them.
  for (std::uint64_t bits = 0; bits < count; ++bits)
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t bigger = bits | (std::uint64_t{1} << i);
      if (bigger != bits && !image[bits].subset_of(image[bigger])) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Files

namespace {

Subset read_subset(const json& arr, const Structure& s, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorCode::FormatError, where + " must be a list of elements");
  Subset out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw Error(ErrorCode::FormatError, where + " entries must be strings");
    auto idx = s.index_of(v.get<std::string>());
    if (!idx)
      throw Error(ErrorCode::DanglingElement,
                  where + " mentions '" + v.get<std::string>() + "', which is not in the universe");
    out.insert(*idx);
  }
  return out;
}

json write_subset(Subset sub, const Structure& s) {
  json arr = json::array();
  for (auto i : sub.elements()) arr.push_back(s.universe()[i]);
  return arr;
}

std::uint32_t read_var_key(const std::string& key, char prefix) {
  if (key.size() < 2 || key[0] != prefix ||
      !std::all_of(key.begin() + 1, key.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      (key.size() > 2 && key[1] == '0') || key.size() > 10)
    throw Error(ErrorCode::FormatError,
                "'" + key + "' is not a " + (prefix == 'x' ? "element" : "set") + " variable");
  return static_cast<std::uint32_t>(std::stoul(key.substr(1)));
}

Structure validate_impl(const json& doc, const Signature& sig) {
  if (!doc.is_object()) throw Error(ErrorCode::FormatError, "model must be a JSON object");
  if (!doc.contains("universe") || !doc["universe"].is_array())
    throw Error(ErrorCode::FormatError, "model needs a \"universe\" list");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& v : doc["universe"]) {
    if (!v.is_string()) throw Error(ErrorCode::FormatError, "universe entries must be strings");
    if (!seen.insert(v.get<std::string>()).second)
      throw Error(ErrorCode::FormatError, "duplicate universe element '" + v.get<std::string>() + "'");
    names.push_back(v.get<std::string>());
  }
  Structure s(std::move(names));

  if (doc.contains("app")) {
    if (!doc["app"].is_array()) throw Error(ErrorCode::FormatError, "\"app\" must be a list");
    std::set<std::pair<std::size_t, std::size_t>> cells;
    for (const auto& cell : doc["app"]) {
      if (!cell.is_object() || !cell.contains("left") || !cell.contains("right") ||
          !cell.contains("result") || !cell["left"].is_string() || !cell["right"].is_string())
        throw Error(ErrorCode::FormatError, "app entries need \"left\", \"right\" and \"result\"");
      auto l = cell["left"].get<std::string>();
      auto r = cell["right"].get<std::string>();
      auto li = s.index_of(l);
      auto ri = s.index_of(r);
      if (!li || !ri)
        throw Error(ErrorCode::DanglingElement,
                    "app entry (" + l + ", " + r + ") names an element outside the universe");
      if (!cells.insert({*li, *ri}).second)
        throw Error(ErrorCode::FormatError, "app cell (" + l + ", " + r + ") listed twice");
      s.set_app(*li, *ri, read_subset(cell["result"], s, "app(" + l + ", " + r + ")"));
    }
  }

  if (doc.contains("constants")) {
    if (!doc["constants"].is_object())
      throw Error(ErrorCode::FormatError, "\"constants\" must be an object");
    for (const auto& [name, value] : doc["constants"].items()) {
      if (!is_valid_constant_name(name))
        throw Error(ErrorCode::FormatError, "invalid constant name '" + name + "'");
      s.set_constant(name, read_subset(value, s, "constant " + name));
    }
  }
  for (const auto& c : sig.constants())
    if (!s.constant(c))
      throw Error(ErrorCode::MissingConstant, "no denotation for constant '" + c + "'");

  if (sig.has_definedness()) {
    if (auto bad = definedness_violation(s))
      throw Error(ErrorCode::DefinednessViolated,
                  "def * {" + s.universe()[*bad] + "} is not the whole universe");
  }
  return s;
}

}  // namespace

Structure validate_structure(const json& doc, const Signature& sig) {
  try {
    return validate_impl(doc, sig);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
}

json structure_to_json(const Structure& s) {
  json doc;
  doc["universe"] = s.universe();
  json app = json::array();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (!s.app(a, b).empty())
        app.push_back({{"left", s.universe()[a]},
                       {"right", s.universe()[b]},
                       {"result", write_subset(s.app(a, b), s)}});
  doc["app"] = app;
  json consts = json::object();
  for (const auto& [name, sub] : s.constants()) consts[name] = write_subset(sub, s);
  doc["constants"] = consts;
  return doc;
}

Valuation valuation_from_json(const json& doc, const Structure& s) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::FormatError, "valuation must be a JSON object");
    Valuation e;
    if (doc.contains("element")) {
      for (const auto& [key, value] : doc["element"].items()) {
        auto x = read_var_key(key, 'x');
        if (!value.is_string())
          throw Error(ErrorCode::FormatError, key + " must name a universe element");
        auto idx = s.index_of(value.get<std::string>());
        if (!idx)
          throw Error(ErrorCode::DanglingElement,
                      key + " is assigned '" + value.get<std::string>() + "', not in the universe");
        e.element[x] = *idx;
      }
    }
    if (doc.contains("set")) {
      for (const auto& [key, value] : doc["set"].items())
        e.set[read_var_key(key, 'X')] = read_subset(value, s, key);
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::FormatError, ex.what());
  }
}

json valuation_to_json(const Valuation& e, const Structure& s) {
  json doc;
  doc["element"] = json::object();
  for (const auto& [x, a] : e.element) doc["element"]["x" + std::to_string(x)] = s.universe()[a];
  doc["set"] = json::object();
  for (const auto& [X, sub] : e.set) doc["set"]["X" + std::to_string(X)] = write_subset(sub, s);
  return doc;
}

Signature signature_of(const Structure& s) {
  Signature sig;
  for (const auto& [name, sub] : s.constants()) sig.add(name);
  return sig;
}

std::optional<std::size_t> definedness_violation(const Structure& s) {
  auto def = s.constant(std::string(Signature::kDefinedness));
  if (!def) return 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    if (apply_sets(s, *def, Subset::singleton(a)) != s.full()) return a;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Suites

std::vector<std::string> numbered_universe(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

StructureStream::StructureStream(Signature sig, SuiteOptions opts)
    : constants_(sig.constants()), opts_(opts), rng_(opts.seed) {
  if (opts_.definedness && !sig.has_definedness())
    constants_.push_back(std::string(Signature::kDefinedness));
  std::sort(constants_.begin(), constants_.end());
}

Structure StructureStream::decode(std::size_t n) const {
  Structure s(numbered_universe(n));
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s.set_app(a, b, Subset(digits_[k++]));
  for (const auto& c : constants_) s.set_constant(c, Subset(digits_[k++]));
  return s;
}

bool StructureStream::advance_odometer(std::size_t n) {
  const std::uint64_t base = std::uint64_t{1} << n;
  for (auto& d : digits_) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

std::optional<Structure> StructureStream::next_exhaustive() {
  const std::size_t top = std::min(opts_.max_size, opts_.exhaustive_max);
  while (size_ <= top) {
    if (!started_) {
      digits_.assign(size_ * size_ + constants_.size(), 0);
      started_ = true;
    } else if (!advance_odometer(size_)) {
      ++size_;
      started_ = false;
      continue;
    }
    Structure s = decode(size_);
    if (opts_.definedness && definedness_violation(s)) continue;
    return s;
  }
  return std::nullopt;
}

Structure StructureStream::sample(std::size_t n) {
  Structure s(numbered_universe(n));
  const std::uint64_t mask = Subset::full(n).bits();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s.set_app(a, b, Subset(rng_() & mask));
  for (const auto& c : constants_) s.set_constant(c, Subset(rng_() & mask));
  if (opts_.definedness) {
    const std::string def(Signature::kDefinedness);
    Subset d = *s.constant(def);
    if (d.empty()) {
      d = Subset::singleton(rng_() % n);
      s.set_constant(def, d);
    }
    auto members = d.elements();
    // Patch each column so def * {a} covers the universe.
    for (std::size_t a = 0; a < n; ++a) {
      Subset missing = s.full() - apply_sets(s, d, Subset::singleton(a));
      for (auto b : missing.elements()) {
        std::size_t owner = members[rng_() % members.size()];
        Subset cell = s.app(owner, a);
        cell.insert(b);
        s.set_app(owner, a, cell);
      }
    }
  }
  return s;
}

std::optional<Structure> StructureStream::next() {
  if (auto s = next_exhaustive()) return s;
  const std::size_t lo = opts_.exhaustive_max + 1;
  if (opts_.max_size < lo || sampled_ >= opts_.samples) return std::nullopt;
  const std::size_t span = opts_.max_size - lo + 1;
  const std::size_t n = lo + sampled_ % span;
  ++sampled_;
  return sample(n);
}

std::vector<Structure> enumerate_structures(const Signature& sig, const SuiteOptions& opts) {
  std::vector<Structure> out;
  StructureStream stream(sig, opts);
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace aml
