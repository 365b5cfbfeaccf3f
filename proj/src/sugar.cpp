#include <cctype>
#include <string>
#include <vector>

#include "aml/derived.hpp"
#include "aml/error.hpp"
#include "aml/syntax.hpp"

namespace aml {

namespace {

enum class Lex {
  Ident,   // keyword, variable or constant
  LParen,
  RParen,
  Dot,
  Bang,
  And,
  Or,
  Arrow,
  Iff,
  Eq,
  Hole,
  End
};

struct Lexeme {
  Lex kind;
  std::string text;
  std::size_t column;
};

std::vector<Lexeme> lex_sugar(std::string_view s, bool allow_holes) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  auto push = [&](Lex k, std::size_t len) {
    out.push_back({k, std::string(s.substr(i, len)), i + 1});
    i += len;
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      push(Lex::Ident, j - i);
      continue;
    }
    auto rest = s.substr(i);
    if (rest.starts_with("<->")) push(Lex::Iff, 3);
    else if (rest.starts_with("->")) push(Lex::Arrow, 2);
    else if (rest.starts_with("/\\")) push(Lex::And, 2);
    else if (rest.starts_with("\\/")) push(Lex::Or, 2);
    else if (rest.starts_with("[]") && allow_holes) push(Lex::Hole, 2);
    else if (c == '(') push(Lex::LParen, 1);
    else if (c == ')') push(Lex::RParen, 1);
    else if (c == '.') push(Lex::Dot, 1);
    else if (c == '!') push(Lex::Bang, 1);
    else if (c == '=') push(Lex::Eq, 1);
    else
      throw Error(ErrorCode::Malformed, "unexpected character '" +
                                            std::string(1, s[i]) + "' at column " +
                                            std::to_string(i + 1));
  }
  out.push_back({Lex::End, "", s.size() + 1});
  return out;
}

struct VarName {
  bool element;
  std::uint32_t index;
};

std::optional<VarName> as_variable(const std::string& word) {
  if (word.size() < 2 || (word[0] != 'x' && word[0] != 'X')) return std::nullopt;
  for (std::size_t k = 1; k < word.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(word[k]))) return std::nullopt;
  if (word.size() > 2 && word[1] == '0')
    throw Error(ErrorCode::Malformed,
                "variable index has a leading zero: '" + word + "'");
  if (word.size() > 10)
    throw Error(ErrorCode::Malformed, "variable index too large: '" + word + "'");
  return VarName{word[0] == 'x', static_cast<std::uint32_t>(std::stoul(word.substr(1)))};
}

class SugarParser {
 public:
  SugarParser(std::vector<Lexeme> lx, const Signature& sig) : lx_(std::move(lx)), sig_(sig) {}

  Pattern parse_all() {
    if (peek().kind == Lex::End) throw Error(ErrorCode::Malformed, "empty pattern");
    Pattern p = parse_iff();
    if (peek().kind != Lex::End) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Lexeme& peek() const { return lx_[pos_]; }
  bool at(Lex k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Lex::Ident) && peek().text == w; }
  const Lexeme& advance() { return lx_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Malformed,
                what + " at column " + std::to_string(peek().column));
  }

  void expect(Lex k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    advance();
  }

  Pattern parse_iff() {
    Pattern acc = parse_imp();
    while (at(Lex::Iff)) {
      advance();
      acc = derived::iff(acc, parse_imp());
    }
    return acc;
  }

  Pattern parse_imp() {
    Pattern lhs = parse_or();
    if (!at(Lex::Arrow)) return lhs;
    advance();
    return Pattern::imp(std::move(lhs), parse_imp());
  }

  Pattern parse_or() {
    Pattern acc = parse_and();
    while (at(Lex::Or)) {
      advance();
      acc = derived::disj(acc, parse_and());
    }
    return acc;
  }

  Pattern parse_and() {
    Pattern acc = parse_eq();
    while (at(Lex::And)) {
      advance();
      acc = derived::conj(acc, parse_eq());
    }
    return acc;
  }

  Pattern parse_eq() {
    Pattern lhs = parse_mem();
    if (!at(Lex::Eq)) return lhs;
    advance();
    Pattern rhs = parse_mem();
    if (at(Lex::Eq)) fail("'=' is not associative; add parentheses");
    return derived::equals(std::move(lhs), std::move(rhs));
  }

  Pattern parse_mem() {
    Pattern lhs = parse_not();
    if (!at_word("in")) return lhs;
    if (lhs.kind() != Kind::EVar) fail("'in' needs an element variable on its left");
    advance();
    Pattern rhs = parse_not();
    if (at_word("in")) fail("'in' is not associative; add parentheses");
    return derived::member(lhs.var(), std::move(rhs));
  }

  Pattern parse_not() {
    if (at(Lex::Bang)) {
      advance();
      return derived::neg(parse_not());
    }
    return parse_app();
  }

  bool starts_operand() const {
    if (at(Lex::LParen) || at(Lex::Hole)) return true;
    if (!at(Lex::Ident)) return false;
    return peek().text != "in";
  }

  Pattern parse_app() {
    Pattern acc = parse_primary();
    while (starts_operand()) {
      bool binder = is_binder_word(peek().text);
      acc = Pattern::appl(acc, parse_primary());
      if (binder) break;
    }
    return acc;
  }

  static bool is_binder_word(std::string_view w) {
    return w == "exists" || w == "forall" || w == "mu" || w == "nu";
  }

  Pattern parse_binder(const std::string& word) {
    bool element = word == "exists" || word == "forall";
    if (!at(Lex::Ident)) fail("expected a variable after '" + word + "'");
    auto v = as_variable(peek().text);
    if (!v || v->element != element)
      fail("'" + word + "' expects " + (element ? "an element" : "a set") +
           " variable, got '" + peek().text + "'");
    advance();
    expect(Lex::Dot, "'.' after binder variable");
    Pattern body = parse_iff();
    if (word == "exists") return Pattern::exists(v->index, std::move(body));
    if (word == "forall") return derived::forall(v->index, std::move(body));
    if (word == "mu") return Pattern::mu(v->index, std::move(body));
    return derived::nu(v->index, std::move(body));
  }

  Pattern parse_primary() {
    if (at(Lex::LParen)) {
      advance();
      Pattern p = parse_iff();
      expect(Lex::RParen, "')'");
      return p;
    }
    if (at(Lex::Hole)) {
      advance();
      return Pattern::constant(std::string(kHoleName));
    }
    if (!at(Lex::Ident)) {
      if (at(Lex::End)) fail("pattern ends early");
      fail("unexpected '" + peek().text + "'");
    }
    std::string word = advance().text;
    if (is_binder_word(word)) return parse_binder(word);
    if (word == "bot") return derived::bot();
    if (word == "top") return derived::top();
    if (word == "ceil" || word == "floor") {
      expect(Lex::LParen, "'(' after ceil/floor");
      Pattern p = parse_iff();
      expect(Lex::RParen, "')'");
      return word == "ceil" ? derived::ceil(std::move(p)) : derived::floor(std::move(p));
    }
    if (auto v = as_variable(word))
      return v->element ? Pattern::evar(v->index) : Pattern::svar(v->index);
    if (is_keyword(word)) {
      --pos_;
      fail("keyword '" + word + "' is not allowed here");
    }
    if (!sig_.contains(word))
      throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + word + "'");
    return Pattern::constant(word);
  }

  std::vector<Lexeme> lx_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Rendering

enum Prec : int { IFF = 1, IMP, OR, AND, EQ, MEM, NOT, APP, ATOM };

std::string var_text(bool element, std::uint32_t i) {
  return (element ? "x" : "X") + std::to_string(i);
}

enum class Tag { Bot, Top, Eq, Floor, Mem, Ceil, Nu, Forall, Iff, And, Not, Or,
                 EVar, SVar, Const, Imp, App, Exists, Mu };

struct Shape {
  Tag tag;
  int prec;
  bool binder;  // open to the right: needs parens unless in tail position
  Pattern a;
  Pattern b;
  std::uint32_t var = 0;
};

Shape classify(const Pattern& p) {
  using namespace derived;
  if (p == bot()) return {Tag::Bot, ATOM, false, p, p};
  if (p == top()) return {Tag::Top, ATOM, false, p, p};
  if (auto e = as_equals(p)) return {Tag::Eq, EQ, false, e->first, e->second};
  if (auto f = as_floor(p)) return {Tag::Floor, ATOM, false, *f, p};
  if (auto m = as_member(p)) return {Tag::Mem, MEM, false, m->body, p, m->var};
  if (auto c = as_ceil(p)) return {Tag::Ceil, ATOM, false, *c, p};
  if (auto n = as_nu(p)) return {Tag::Nu, ATOM, true, n->body, p, n->var};
  if (auto a = as_forall(p)) return {Tag::Forall, ATOM, true, a->body, p, a->var};
  if (auto b = as_iff(p)) return {Tag::Iff, IFF, false, b->first, b->second};
  if (auto c = as_conj(p)) return {Tag::And, AND, false, c->first, c->second};
  if (auto n = as_neg(p)) return {Tag::Not, NOT, false, *n, p};
  if (auto d = as_disj(p)) return {Tag::Or, OR, false, d->first, d->second};
  switch (p.kind()) {
    case Kind::EVar: return {Tag::EVar, ATOM, false, p, p, p.var()};
    case Kind::SVar: return {Tag::SVar, ATOM, false, p, p, p.var()};
    case Kind::Const: return {Tag::Const, ATOM, false, p, p};
    case Kind::Imp: return {Tag::Imp, IMP, false, p.left(), p.right()};
    case Kind::Appl: return {Tag::App, APP, false, p.left(), p.right()};
    case Kind::Exists: return {Tag::Exists, ATOM, true, p.body(), p, p.var()};
    case Kind::Mu: return {Tag::Mu, ATOM, true, p.body(), p, p.var()};
  }
  return {Tag::Const, ATOM, false, p, p};
}

std::string r(const Pattern& p, int min_prec, bool tail);

// `tail` is true when nothing follows this text before a closing parenthesis
// or the end of input, so a trailing binder may stay unparenthesized.
std::string render_shape(const Shape& s, bool tail) {
  switch (s.tag) {
    case Tag::Bot: return "bot";
    case Tag::Top: return "top";
    case Tag::Eq: return r(s.a, MEM, false) + " = " + r(s.b, MEM, tail);
    case Tag::Floor: return "floor(" + r(s.a, IFF, true) + ")";
    case Tag::Mem: return var_text(true, s.var) + " in " + r(s.a, NOT, tail);
    case Tag::Ceil: return "ceil(" + r(s.a, IFF, true) + ")";
    case Tag::Nu: return "nu " + var_text(false, s.var) + " . " + r(s.a, IFF, true);
    case Tag::Forall: return "forall " + var_text(true, s.var) + " . " + r(s.a, IFF, true);
    case Tag::Iff: return r(s.a, IFF, false) + " <-> " + r(s.b, IMP, tail);
    case Tag::And: return r(s.a, AND, false) + " /\\ " + r(s.b, EQ, tail);
    case Tag::Not: return "!" + r(s.a, NOT, tail);
    case Tag::Or: return r(s.a, OR, false) + " \\/ " + r(s.b, AND, tail);
    case Tag::EVar: return var_text(true, s.var);
    case Tag::SVar: return var_text(false, s.var);
    case Tag::Const: return s.a.name();
    case Tag::Imp: return r(s.a, OR, false) + " -> " + r(s.b, IMP, tail);
    case Tag::App: return r(s.a, APP, false) + " " + r(s.b, ATOM, tail);
    case Tag::Exists: return "exists " + var_text(true, s.var) + " . " + r(s.a, IFF, true);
    case Tag::Mu: return "mu " + var_text(false, s.var) + " . " + r(s.a, IFF, true);
  }
  return "?";
}

std::string r(const Pattern& p, int min_prec, bool tail) {
  Shape s = classify(p);
  bool parens = s.prec < min_prec || (s.binder && !tail);
  if (parens) return "(" + render_shape(s, true) + ")";
  return render_shape(s, tail);
}

}  // namespace

Pattern parse(std::string_view text, const Signature& sig, Syntax mode) {
  if (mode == Syntax::Core) return parse_tokens(tokenize_core(text, sig));
  return SugarParser(lex_sugar(text, false), sig).parse_all();
}

Pattern parse_sugar_with_holes(std::string_view text, const Signature& sig) {
  return SugarParser(lex_sugar(text, true), sig).parse_all();
}

std::string render(const Pattern& p, Syntax mode) {
  if (mode == Syntax::Sugar) return r(p, IFF, true);
  std::string out;
  for (const auto& t : tokens(p)) {
    if (!out.empty()) out += ' ';
    out += t.text();
  }
  return out;
}

}  // namespace aml
