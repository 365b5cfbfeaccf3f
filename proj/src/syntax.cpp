#include "aml/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "aml/derived.hpp"
#include "aml/error.hpp"

namespace aml {

namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "appl", "imp", "exists", "mu", "forall", "nu",
    "bot",  "top", "ceil",   "floor", "in"};

// Splits `x<digits>` / `X<digits>`. Leading zeros are rejected by callers.
std::optional<std::pair<char, std::string_view>> split_var_token(
    std::string_view word) {
  if (word.size() < 2 || (word[0] != 'x' && word[0] != 'X')) return std::nullopt;
  auto digits = word.substr(1);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;
  return std::make_pair(word[0], digits);
}

std::uint32_t parse_index(std::string_view word, std::string_view digits) {
  if (digits.size() > 1 && digits[0] == '0')
    throw Error(ErrorCode::Malformed,
                "variable index has a leading zero: '" + std::string(word) + "'");
  if (digits.size() > 9)
    throw Error(ErrorCode::Malformed,
                "variable index too large: '" + std::string(word) + "'");
  return static_cast<std::uint32_t>(std::stoul(std::string(digits)));
}

std::uint32_t arity(const Token& t) {
  switch (t.kind) {
    case TokenKind::Appl:
    case TokenKind::Imp:
    case TokenKind::Exists:
    case TokenKind::Mu:
      return 2;
    default:
      return 0;
  }
}

// End of the token subsequence starting at `start` that forms a pattern, or
// nullopt if the tokens run out first. Relies only on token arities.
std::optional<Position> scan_end(std::span<const Token> ts, Position start) {
  std::size_t need = 1;
  for (Position k = start; k < ts.size(); ++k) {
    need = need - 1 + arity(ts[k]);
    if (need == 0) return k;
  }
  return std::nullopt;
}

class CoreReader {
 public:
  explicit CoreReader(std::span<const Token> ts) : ts_(ts) {}

  Pattern read() {
    if (ts_.empty()) throw Error(ErrorCode::Malformed, "empty pattern");
    Pattern p = next();
    if (pos_ != ts_.size())
      throw Error(ErrorCode::Malformed,
                  "trailing tokens after a complete pattern at position " +
                      std::to_string(pos_) + " ('" + ts_[pos_].text() + "')");
    return p;
  }

 private:
  const Token& take(const char* context) {
    if (pos_ >= ts_.size())
      throw Error(ErrorCode::ArityError,
                  std::string("input ends inside ") + context);
    return ts_[pos_++];
  }

  Pattern next() {
    const Token& t = take("a pattern");
    switch (t.kind) {
      case TokenKind::EVar: return Pattern::evar(t.index);
      case TokenKind::SVar: return Pattern::svar(t.index);
      case TokenKind::Const: return Pattern::constant(t.name);
      case TokenKind::Appl: {
        Pattern l = operand("appl");
        Pattern r = operand("appl");
        return Pattern::appl(std::move(l), std::move(r));
      }
      case TokenKind::Imp: {
        Pattern l = operand("imp");
        Pattern r = operand("imp");
        return Pattern::imp(std::move(l), std::move(r));
      }
      case TokenKind::Exists:
      case TokenKind::Mu: {
        bool ex = t.kind == TokenKind::Exists;
        const Token& v = take(ex ? "exists" : "mu");
        if (v.kind != (ex ? TokenKind::EVar : TokenKind::SVar))
          throw Error(ErrorCode::Malformed,
                      std::string(ex ? "exists" : "mu") + " expects " +
                          (ex ? "an element" : "a set") + " variable, got '" +
                          v.text() + "'");
        Pattern body = operand(ex ? "exists" : "mu");
        return ex ? Pattern::exists(v.index, std::move(body))
                  : Pattern::mu(v.index, std::move(body));
      }
    }
    throw Error(ErrorCode::Malformed, "unexpected token");
  }

  Pattern operand(const char* owner) {
    if (pos_ >= ts_.size())
      throw Error(ErrorCode::ArityError,
                  std::string("missing operand for '") + owner + "'");
    return next();
  }

  std::span<const Token> ts_;
  std::size_t pos_ = 0;
};

void collect_tokens(const Pattern& p, TokenString& out) {
  switch (p.kind()) {
    case Kind::EVar: out.push_back({TokenKind::EVar, p.var(), {}}); return;
    case Kind::SVar: out.push_back({TokenKind::SVar, p.var(), {}}); return;
    case Kind::Const: out.push_back({TokenKind::Const, 0, p.name()}); return;
    case Kind::Appl:
    case Kind::Imp:
      out.push_back({p.kind() == Kind::Appl ? TokenKind::Appl : TokenKind::Imp, 0, {}});
      collect_tokens(p.left(), out);
      collect_tokens(p.right(), out);
      return;
    case Kind::Exists:
      out.push_back({TokenKind::Exists, 0, {}});
      out.push_back({TokenKind::EVar, p.var(), {}});
      collect_tokens(p.body(), out);
      return;
    case Kind::Mu:
      out.push_back({TokenKind::Mu, 0, {}});
      out.push_back({TokenKind::SVar, p.var(), {}});
      collect_tokens(p.body(), out);
      return;
  }
}

void collect_subpatterns(const Pattern& p, std::set<Pattern>& out) {
  out.insert(p);
  if (p.is_binary()) {
    collect_subpatterns(p.left(), out);
    collect_subpatterns(p.right(), out);
  } else if (p.is_binder()) {
    collect_subpatterns(p.body(), out);
  }
}

void collect_free(const Pattern& p, VarSets& acc, std::set<std::uint32_t>& bound_e,
                  std::set<std::uint32_t>& bound_s) {
  switch (p.kind()) {
    case Kind::EVar:
      if (!bound_e.contains(p.var())) acc.element.insert(p.var());
      return;
    case Kind::SVar:
      if (!bound_s.contains(p.var())) acc.set.insert(p.var());
      return;
    case Kind::Const:
      return;
    case Kind::Appl:
    case Kind::Imp:
      collect_free(p.left(), acc, bound_e, bound_s);
      collect_free(p.right(), acc, bound_e, bound_s);
      return;
    case Kind::Exists: {
      bool fresh = bound_e.insert(p.var()).second;
      collect_free(p.body(), acc, bound_e, bound_s);
      if (fresh) bound_e.erase(p.var());
      return;
    }
    case Kind::Mu: {
      bool fresh = bound_s.insert(p.var()).second;
      collect_free(p.body(), acc, bound_e, bound_s);
      if (fresh) bound_s.erase(p.var());
      return;
    }
  }
}

void collect_all(const Pattern& p, VarSets& acc) {
  switch (p.kind()) {
    case Kind::EVar: acc.element.insert(p.var()); return;
    case Kind::SVar: acc.set.insert(p.var()); return;
    case Kind::Const: return;
    case Kind::Appl:
    case Kind::Imp:
      collect_all(p.left(), acc);
      collect_all(p.right(), acc);
      return;
    case Kind::Exists:
      acc.element.insert(p.var());
      collect_all(p.body(), acc);
      return;
    case Kind::Mu:
      acc.set.insert(p.var());
      collect_all(p.body(), acc);
      return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Signature

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_identifier(std::string_view word) {
  if (word.empty()) return false;
  auto head = static_cast<unsigned char>(word[0]);
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(word.begin() + 1, word.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool is_valid_constant_name(std::string_view word) {
  return is_identifier(word) && !is_keyword(word) &&
         !split_var_token(word).has_value();
}

Signature::Signature(const std::vector<std::string>& constants) {
  for (const auto& c : constants) add(c);
}

void Signature::add(const std::string& name) {
  if (!is_valid_constant_name(name))
    throw Error(ErrorCode::Malformed, "invalid constant name '" + name + "'");
  if (contains(name))
    throw Error(ErrorCode::Malformed, "duplicate constant '" + name + "'");
  constants_.push_back(name);
}

bool Signature::contains(std::string_view name) const {
  return std::find(constants_.begin(), constants_.end(), name) !=
         constants_.end();
}

Signature Signature::parse(std::string_view text) {
  Signature sig;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (!line.empty()) {
      try {
        sig.add(std::string(line));
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), line_no);
      }
    }
    start = end + 1;
  }
  return sig;
}

Signature Signature::infer(std::string_view text) {
  Signature sig;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalpha(c) && c != '_') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    std::string word(text.substr(i, j - i));
    if (is_valid_constant_name(word) && !sig.contains(word)) sig.add(word);
    i = j;
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Tokens

std::string Token::text() const {
  switch (kind) {
    case TokenKind::Appl: return "appl";
    case TokenKind::Imp: return "imp";
    case TokenKind::Exists: return "exists";
    case TokenKind::Mu: return "mu";
    case TokenKind::EVar: return "x" + std::to_string(index);
    case TokenKind::SVar: return "X" + std::to_string(index);
    case TokenKind::Const: return name;
  }
  return "?";
}

std::string_view to_string(OccurrenceKind kind) {
  switch (kind) {
    case OccurrenceKind::FreeElement: return "free-element";
    case OccurrenceKind::BoundElement: return "bound-element";
    case OccurrenceKind::FreeSet: return "free-set";
    case OccurrenceKind::BoundSet: return "bound-set";
    case OccurrenceKind::NotAVariable: return "not-a-variable";
  }
  return "?";
}

TokenString tokenize_core(std::string_view text, const Signature& sig) {
  TokenString out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    auto word = text.substr(i, j - i);
    i = j;
    if (word == "appl") out.push_back({TokenKind::Appl, 0, {}});
    else if (word == "imp") out.push_back({TokenKind::Imp, 0, {}});
    else if (word == "exists") out.push_back({TokenKind::Exists, 0, {}});
    else if (word == "mu") out.push_back({TokenKind::Mu, 0, {}});
    else if (auto v = split_var_token(word)) {
      auto idx = parse_index(word, v->second);
      out.push_back({v->first == 'x' ? TokenKind::EVar : TokenKind::SVar, idx, {}});
    } else if (sig.contains(word)) {
      out.push_back({TokenKind::Const, 0, std::string(word)});
    } else {
      throw Error(ErrorCode::UnknownSymbol,
                  "unknown symbol '" + std::string(word) + "'");
    }
  }
  return out;
}

Pattern parse_tokens(std::span<const Token> ts) { return CoreReader(ts).read(); }

std::optional<Pattern> try_parse_tokens(std::span<const Token> ts) {
  // Cheap arity check first; the reader only runs on exact matches.
  auto end = scan_end(ts, 0);
  if (ts.empty() || !end || *end + 1 != ts.size()) return std::nullopt;
  try {
    return CoreReader(ts).read();
  } catch (const Error&) {
    return std::nullopt;
  }
}

TokenString tokens(const Pattern& p) {
  TokenString out;
  out.reserve(p.size());
  collect_tokens(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural analysis

std::set<Pattern> subpatterns(const Pattern& p) {
  std::set<Pattern> out;
  collect_subpatterns(p, out);
  return out;
}

VarSets free_vars(const Pattern& p) {
  VarSets acc;
  std::set<std::uint32_t> be, bs;
  collect_free(p, acc, be, bs);
  return acc;
}

VarSets all_vars(const Pattern& p) {
  VarSets acc;
  collect_all(p, acc);
  return acc;
}

Position binder_scope(const Pattern& p, Position i) {
  auto ts = tokens(p);
  if (i >= ts.size())
    throw Error(ErrorCode::OutOfRange, "position " + std::to_string(i) +
                                           " outside pattern of length " +
                                           std::to_string(ts.size()));
  if (ts[i].kind != TokenKind::Exists && ts[i].kind != TokenKind::Mu)
    throw Error(ErrorCode::NotABinder,
                "token '" + ts[i].text() + "' at position " + std::to_string(i) +
                    " is not exists/mu");
  return *scan_end(ts, i);
}

std::pair<Position, Position> binary_scopes(const Pattern& p, Position i) {
  auto ts = tokens(p);
  if (i >= ts.size())
    throw Error(ErrorCode::OutOfRange, "position " + std::to_string(i) +
                                           " outside pattern of length " +
                                           std::to_string(ts.size()));
  if (ts[i].kind != TokenKind::Appl && ts[i].kind != TokenKind::Imp)
    throw Error(ErrorCode::NotABinary,
                "token '" + ts[i].text() + "' at position " + std::to_string(i) +
                    " is not appl/imp");
  Position j = *scan_end(ts, i + 1);
  Position l = *scan_end(ts, j + 1);
  return {j, l};
}

std::vector<OccurrenceKind> occurrence_kinds(const Pattern& p) {
  auto ts = tokens(p);
  std::vector<OccurrenceKind> kinds(ts.size(), OccurrenceKind::NotAVariable);
  for (Position k = 0; k < ts.size(); ++k) {
    if (ts[k].kind == TokenKind::EVar) kinds[k] = OccurrenceKind::FreeElement;
    if (ts[k].kind == TokenKind::SVar) kinds[k] = OccurrenceKind::FreeSet;
  }
  for (Position i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i].kind != TokenKind::Exists && ts[i].kind != TokenKind::Mu) continue;
    const Token& head = ts[i + 1];
    Position j = *scan_end(ts, i);
    for (Position k = i + 1; k <= j; ++k) {
      if (ts[k] == head)
        kinds[k] = head.kind == TokenKind::EVar ? OccurrenceKind::BoundElement
                                                : OccurrenceKind::BoundSet;
    }
  }
  return kinds;
}

OccurrenceKind occurrence_kind(const Pattern& p, Position k) {
  if (k >= p.size())
    throw Error(ErrorCode::OutOfRange, "position " + std::to_string(k) +
                                           " outside pattern of length " +
                                           std::to_string(p.size()));
  return occurrence_kinds(p)[k];
}

std::uint32_t n_left(const Pattern& p, std::uint32_t set_var, Position k) {
  if (k >= p.size()) return 0;
  switch (p.kind()) {
    case Kind::EVar:
    case Kind::SVar:
    case Kind::Const:
      return 0;
    case Kind::Appl:
    case Kind::Imp: {
      if (k == 0) return 0;
      Position j = p.left().size();
      if (k <= j) {
        return n_left(p.left(), set_var, k - 1) +
               (p.kind() == Kind::Imp ? 1 : 0);
      }
      return n_left(p.right(), set_var, k - j - 1);
    }
    case Kind::Exists:
      if (k < 2) return 0;
      return n_left(p.body(), set_var, k - 2);
    case Kind::Mu:
      if (p.var() == set_var || k < 2) return 0;
      return n_left(p.body(), set_var, k - 2);
  }
  return 0;
}

namespace {

// Parity every free occurrence of X must have: 0 for positive, 1 for negative.
bool all_free_occurrences_have_parity(const Pattern& p, std::uint32_t X,
                                      std::uint32_t parity) {
  auto ts = tokens(p);
  auto kinds = occurrence_kinds(p);
  for (Position k = 0; k < ts.size(); ++k) {
    if (kinds[k] != OccurrenceKind::FreeSet || ts[k].index != X) continue;
    if (n_left(p, X, k) % 2 != parity) return false;
  }
  return true;
}

}  // namespace

bool is_positive_in(const Pattern& p, std::uint32_t set_var) {
  return all_free_occurrences_have_parity(p, set_var, 0);
}

bool is_negative_in(const Pattern& p, std::uint32_t set_var) {
  return all_free_occurrences_have_parity(p, set_var, 1);
}

Pattern fold_conj(std::span<const Pattern> ps) {
  if (ps.empty()) throw Error(ErrorCode::EmptyList, "empty conjunction");
  Pattern acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = derived::conj(acc, ps[i]);
  return acc;
}

Pattern fold_disj(std::span<const Pattern> ps) {
  if (ps.empty()) throw Error(ErrorCode::EmptyList, "empty disjunction");
  Pattern acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = derived::disj(acc, ps[i]);
  return acc;
}

}  // namespace aml
