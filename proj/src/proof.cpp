#include "aml/proof.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "aml/context.hpp"
#include "aml/derived.hpp"
#include "aml/error.hpp"
#include "aml/substitution.hpp"

namespace aml {

namespace {

struct RuleName {
  Rule rule;
  std::string_view word;
};

constexpr std::array<RuleName, 18> kRuleNames = {{
    {Rule::Taut, "taut"},
    {Rule::Hyp, "hyp"},
    {Rule::AxExists, "ax.exists"},
    {Rule::AxPropBotL, "ax.prop-bot-l"},
    {Rule::AxPropBotR, "ax.prop-bot-r"},
    {Rule::AxPropOrL, "ax.prop-or-l"},
    {Rule::AxPropOrR, "ax.prop-or-r"},
    {Rule::AxPropExistsL, "ax.prop-exists-l"},
    {Rule::AxPropExistsR, "ax.prop-exists-r"},
    {Rule::AxPreFixpoint, "ax.prefix"},
    {Rule::AxExistence, "ax.existence"},
    {Rule::AxSingleton, "ax.singleton"},
    {Rule::MP, "mp"},
    {Rule::GenExists, "gen.exists"},
    {Rule::FrameL, "frame.l"},
    {Rule::FrameR, "frame.r"},
    {Rule::SubstSet, "subst.set"},
    {Rule::KT, "kt"},
}};

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(std::string(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<std::size_t> parse_number(const std::string& w) {
  if (w.empty() || w.size() > 9 ||
      !std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;
  return static_cast<std::size_t>(std::stoul(w));
}

std::optional<std::uint32_t> parse_var(const std::string& w, char prefix) {
  if (w.size() < 2 || w[0] != prefix) return std::nullopt;
  auto n = parse_number(w.substr(1));
  if (!n || (w.size() > 2 && w[1] == '0')) return std::nullopt;
  return static_cast<std::uint32_t>(*n);
}

class ScriptParser {
 public:
  ScriptParser(const Signature& sig, const std::vector<Hypothesis>& preset) : sig_(sig) {
    script_.hypotheses = preset;
  }

  ProofScript parse(std::string_view text) {
    std::size_t line_no = 0;
    for (const auto& raw : split(text, '\n')) {
      ++line_no;
      line_ = line_no;
      std::string line = raw;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.rfind("hyp ", 0) == 0 && line.find(":=") != std::string::npos)
        parse_hypothesis(line);
      else
        parse_step(line);
    }
    return std::move(script_);
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw Error(code, msg, line_);
  }

  Pattern pattern(const std::string& text) const {
    try {
      return aml::parse(text, sig_, Syntax::Sugar);
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), line_);
    }
  }

  void parse_hypothesis(const std::string& line) {
    if (!script_.lines.empty())
      fail(ErrorCode::SyntaxError, "hypotheses must precede the numbered lines");
    auto eq = line.find(":=");
    std::string name = trim(std::string_view(line).substr(4, eq - 4));
    if (!is_identifier(name)) fail(ErrorCode::SyntaxError, "invalid hypothesis name '" + name + "'");
    if (script_.find_hypothesis(name))
      fail(ErrorCode::SyntaxError, "hypothesis '" + name + "' declared twice");
    std::string body = trim(std::string_view(line).substr(eq + 2));
    if (body.empty()) fail(ErrorCode::SyntaxError, "hypothesis '" + name + "' has no pattern");
    script_.hypotheses.push_back({name, pattern(body)});
  }

  void parse_step(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::SyntaxError, "expected '<n>: <pattern> ; <justification>'");
    auto number = parse_number(trim(std::string_view(line).substr(0, colon)));
    if (!number) fail(ErrorCode::SyntaxError, "line number must be a natural number");
    const std::size_t expected = script_.lines.size() + 1;
    if (*number != expected)
      fail(ErrorCode::SyntaxError, "expected line number " + std::to_string(expected) +
                                       ", found " + std::to_string(*number));
    auto parts = split(std::string_view(line).substr(colon + 1), ';');
    if (parts.size() < 2 || parts.size() > 3)
      fail(ErrorCode::SyntaxError, "expected '<pattern> ; <justification> [; <pattern>]'");
    std::string pat_text = trim(parts[0]);
    if (pat_text.empty()) fail(ErrorCode::SyntaxError, "missing pattern");
    Pattern p = pattern(pat_text);
    std::optional<std::string> extra;
    if (parts.size() == 3) extra = trim(parts[2]);
    Justification j = justification(words(parts[1]), extra, *number);
    script_.lines.push_back({*number, p, std::move(j), line_});
  }

  std::size_t reference(const std::string& w, std::size_t current) const {
    auto n = parse_number(w);
    if (!n || *n == 0) fail(ErrorCode::SyntaxError, "'" + w + "' is not a line reference");
    if (*n >= current)
      fail(ErrorCode::ForwardReference,
           "line " + std::to_string(current) + " cites line " + std::to_string(*n));
    return *n;
  }

  Justification justification(const std::vector<std::string>& ws,
                              const std::optional<std::string>& extra, std::size_t current) {
    if (ws.empty()) fail(ErrorCode::SyntaxError, "missing justification");
    auto it = std::find_if(kRuleNames.begin(), kRuleNames.end(),
                           [&](const RuleName& r) { return r.word == ws[0]; });
    if (it == kRuleNames.end()) fail(ErrorCode::SyntaxError, "unknown justification '" + ws[0] + "'");
    Justification j;
    j.rule = it->rule;
    auto arity = [&](std::size_t n) {
      if (ws.size() != n + 1)
        fail(ErrorCode::SyntaxError, "'" + ws[0] + "' takes " + std::to_string(n) +
                                         " argument(s), got " + std::to_string(ws.size() - 1));
    };
    auto no_extra = [&] {
      if (extra) fail(ErrorCode::SyntaxError, "'" + ws[0] + "' takes no trailing pattern");
    };
    auto need_extra = [&]() -> Pattern {
      if (!extra || extra->empty())
        fail(ErrorCode::SyntaxError, "'" + ws[0] + "' needs a trailing '; <pattern>'");
      return pattern(*extra);
    };
    switch (j.rule) {
      case Rule::Hyp: {
        arity(1);
        no_extra();
        if (!script_.find_hypothesis(ws[1]))
          fail(ErrorCode::UnknownHypothesis, "no hypothesis named '" + ws[1] + "'");
        j.hyp = ws[1];
        break;
      }
      case Rule::AxExists: {
        arity(2);
        no_extra();
        auto x = parse_var(ws[1], 'x');
        auto y = parse_var(ws[2], 'x');
        if (!x || !y) fail(ErrorCode::SyntaxError, "ax.exists expects two element variables");
        j.x = *x;
        j.y = *y;
        break;
      }
      case Rule::AxSingleton: {
        if (ws.size() == 1) {
          if (extra) fail(ErrorCode::SyntaxError, "ax.singleton with a body also needs its variable");
          break;
        }
        arity(1);
        auto x = parse_var(ws[1], 'x');
        if (!x) fail(ErrorCode::SyntaxError, "ax.singleton expects an element variable");
        j.x = *x;
        j.pattern = need_extra();
        break;
      }
      case Rule::MP:
        arity(2);
        no_extra();
        j.i = reference(ws[1], current);
        j.j = reference(ws[2], current);
        break;
      case Rule::GenExists:
      case Rule::FrameL:
      case Rule::FrameR:
      case Rule::KT:
        arity(1);
        no_extra();
        j.i = reference(ws[1], current);
        break;
      case Rule::SubstSet: {
        arity(2);
        j.i = reference(ws[1], current);
        auto X = parse_var(ws[2], 'X');
        if (!X) fail(ErrorCode::SyntaxError, "subst.set expects a set variable");
        j.set_var = *X;
        j.pattern = need_extra();
        break;
      }
      default:
        arity(0);
        no_extra();
        break;
    }
    return j;
  }

  const Signature& sig_;
  ProofScript script_;
  std::size_t line_ = 0;
};

LineVerdict reject(std::size_t n, std::string_view why, std::string detail) {
  return {n, false, std::string(why), std::move(detail)};
}

std::string show(const Pattern& p) { return render(p, Syntax::Sugar); }

bool is_imp(const Pattern& p) { return p.kind() == Kind::Imp; }
bool is_app(const Pattern& p) { return p.kind() == Kind::Appl; }

}  // namespace

// ---------------------------------------------------------------------------
// Script structure

std::string_view keyword(Rule r) {
  for (const auto& n : kRuleNames)
    if (n.rule == r) return n.word;
  return "?";
}

bool is_axiom(Rule r) {
  switch (r) {
    case Rule::Hyp:
    case Rule::MP:
    case Rule::GenExists:
    case Rule::FrameL:
    case Rule::FrameR:
    case Rule::SubstSet:
    case Rule::KT:
      return false;
    default:
      return true;
  }
}

std::vector<std::size_t> Justification::references() const {
  switch (rule) {
    case Rule::MP: return {i, j};
    case Rule::GenExists:
    case Rule::FrameL:
    case Rule::FrameR:
    case Rule::SubstSet:
    case Rule::KT:
      return {i};
    default:
      return {};
  }
}

std::string Justification::text() const {
  std::string out(keyword(rule));
  switch (rule) {
    case Rule::Hyp: out += " " + hyp; break;
    case Rule::AxExists: out += " x" + std::to_string(x) + " x" + std::to_string(y); break;
    case Rule::AxSingleton:
      if (pattern) out += " x" + std::to_string(x) + " ; " + show(*pattern);
      break;
    case Rule::MP: out += " " + std::to_string(i) + " " + std::to_string(j); break;
    case Rule::GenExists:
    case Rule::FrameL:
    case Rule::FrameR:
    case Rule::KT:
      out += " " + std::to_string(i);
      break;
    case Rule::SubstSet:
      out += " " + std::to_string(i) + " X" + std::to_string(set_var) + " ; " + show(*pattern);
      break;
    default: break;
  }
  return out;
}

const Hypothesis* ProofScript::find_hypothesis(std::string_view name) const {
  for (const auto& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

std::vector<Pattern> ProofScript::gamma() const {
  std::vector<Pattern> out;
  for (const auto& h : hypotheses) out.push_back(h.pattern);
  return out;
}

ProofScript parse_proof(std::string_view text, const Signature& sig,
                        const std::vector<Hypothesis>& preset) {
  return ScriptParser(sig, preset).parse(text);
}

std::string render_proof(const ProofScript& script) {
  std::string out;
  for (const auto& h : script.hypotheses) out += "hyp " + h.name + " := " + show(h.pattern) + "\n";
  for (const auto& l : script.lines)
    out += std::to_string(l.number) + ": " + show(l.pattern) + " ; " + l.just.text() + "\n";
  return out;
}

namespace {

void collect_constants(const Pattern& p, std::set<std::string>& out) {
  if (p.kind() == Kind::Const) out.insert(p.name());
  if (p.is_binary()) {
    collect_constants(p.left(), out);
    collect_constants(p.right(), out);
  } else if (p.is_binder()) {
    collect_constants(p.body(), out);
  }
}

}  // namespace

Signature signature_of(const ProofScript& script) {
  std::set<std::string> names;
  for (const auto& h : script.hypotheses) collect_constants(h.pattern, names);
  for (const auto& l : script.lines) {
    collect_constants(l.pattern, names);
    if (l.just.pattern) collect_constants(*l.just.pattern, names);
  }
  return Signature(std::vector<std::string>(names.begin(), names.end()));
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::Strong: return "strong";
    case Level::Local: return "local";
    case Level::Global: return "global";
  }
  return "?";
}

ConsequenceKind consequence_kind(Level l) {
  switch (l) {
    case Level::Strong: return ConsequenceKind::Strong;
    case Level::Local: return ConsequenceKind::Local;
    case Level::Global: return ConsequenceKind::Global;
  }
  return ConsequenceKind::Global;
}

// ---------------------------------------------------------------------------
// Checking

std::optional<LineVerdict> check_axiom(const Pattern& p, const Justification& j,
                                       const ProofScript& script) {
  using namespace derived;
  const std::size_t n = 0;  // filled in by check_proof
  const Pattern b = bot();
  auto shape = [&](const std::string& expected) {
    return reject(n, reason::kShapeMismatch, "expected " + expected + ", got " + show(p));
  };
  switch (j.rule) {
    case Rule::Taut:
      try {
        if (!is_tautology(p))
          return reject(n, reason::kNotTautology, show(p) + " is not a propositional tautology");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SkeletonTooLarge) throw;
        return reject(n, reason::kSkeletonTooLarge, e.detail());
      }
      return std::nullopt;

    case Rule::Hyp: {
      const Hypothesis* h = script.find_hypothesis(j.hyp);
      if (!h) return reject(n, reason::kUnknownHypothesis, "no hypothesis named '" + j.hyp + "'");
      if (h->pattern != p)
        return reject(n, reason::kShapeMismatch,
                      "hypothesis " + j.hyp + " is " + show(h->pattern) + ", not " + show(p));
      return std::nullopt;
    }

    case Rule::AxExists: {
      if (!is_imp(p) || p.right().kind() != Kind::Exists || p.right().var() != j.x)
        return shape("psi -> exists x" + std::to_string(j.x) + " . phi");
      const Pattern& phi = p.right().body();
      VarRef x = VarRef::element(j.x);
      Pattern y = Pattern::evar(j.y);
      if (p.left() != subst_free(phi, x, y))
        return reject(n, reason::kShapeMismatch,
                      "left side must be " + show(subst_free(phi, x, y)));
      if (!is_free_for(x, y, phi))
        return reject(n, reason::kNotFreeFor,
                      "x" + std::to_string(j.x) + " is not free for x" + std::to_string(j.y) +
                          " in " + show(phi));
      return std::nullopt;
    }

    case Rule::AxPropBotL:
      if (is_imp(p) && p.right() == b && is_app(p.left()) && p.left().right() == b)
        return std::nullopt;
      return shape("phi bot -> bot");

    case Rule::AxPropBotR:
      if (is_imp(p) && p.right() == b && is_app(p.left()) && p.left().left() == b)
        return std::nullopt;
      return shape("bot phi -> bot");

    case Rule::AxPropOrL: {
      if (is_imp(p) && is_app(p.left())) {
        auto d = as_disj(p.left().left());
        const Pattern& chi = p.left().right();
        if (d && p.right() == disj(Pattern::appl(d->first, chi), Pattern::appl(d->second, chi)))
          return std::nullopt;
      }
      return shape("(phi \\/ psi) chi -> phi chi \\/ psi chi");
    }

    case Rule::AxPropOrR: {
      if (is_imp(p) && is_app(p.left())) {
        auto d = as_disj(p.left().right());
        const Pattern& chi = p.left().left();
        if (d && p.right() == disj(Pattern::appl(chi, d->first), Pattern::appl(chi, d->second)))
          return std::nullopt;
      }
      return shape("chi (phi \\/ psi) -> chi phi \\/ chi psi");
    }

    case Rule::AxPropExistsL:
    case Rule::AxPropExistsR: {
      const bool left = j.rule == Rule::AxPropExistsL;
      if (!is_imp(p) || !is_app(p.left()))
        return shape(left ? "(exists x . phi) psi -> exists x . phi psi"
                          : "psi (exists x . phi) -> exists x . psi phi");
      const Pattern& ex = left ? p.left().left() : p.left().right();
      const Pattern& psi = left ? p.left().right() : p.left().left();
      if (ex.kind() != Kind::Exists)
        return shape(left ? "(exists x . phi) psi -> exists x . phi psi"
                          : "psi (exists x . phi) -> exists x . psi phi");
      Pattern inner = left ? Pattern::appl(ex.body(), psi) : Pattern::appl(psi, ex.body());
      if (p.right() != Pattern::exists(ex.var(), inner))
        return reject(n, reason::kShapeMismatch,
                      "right side must be " + show(Pattern::exists(ex.var(), inner)));
      if (free_vars(psi).element.contains(ex.var()))
        return reject(n, reason::kSideConditionFv,
                      "x" + std::to_string(ex.var()) + " is free in " + show(psi));
      return std::nullopt;
    }

    case Rule::AxPreFixpoint: {
      if (!is_imp(p) || p.right().kind() != Kind::Mu)
        return shape("phi[mu X . phi / X] -> mu X . phi");
      const Pattern& mu = p.right();
      const Pattern& phi = mu.body();
      VarRef X = VarRef::set(mu.var());
      if (p.left() != subst_free(phi, X, mu))
        return reject(n, reason::kShapeMismatch, "left side must be " + show(subst_free(phi, X, mu)));
      if (!is_positive_in(phi, mu.var()))
        return reject(n, reason::kNotPositive, show(phi) + " is not positive in " + X.text());
      if (!is_free_for(X, mu, phi))
        return reject(n, reason::kNotFreeFor,
                      X.text() + " is not free for " + show(mu) + " in " + show(phi));
      return std::nullopt;
    }

    case Rule::AxExistence:
      if (p.kind() == Kind::Exists && p.body() == Pattern::evar(p.var())) return std::nullopt;
      return shape("exists x . x");

    case Rule::AxSingleton: {
      bool found = j.pattern ? !match_singleton(p, j.x, *j.pattern).empty()
                             : !find_singleton(p).empty();
      if (found) return std::nullopt;
      return reject(n, reason::kNoSingletonContext,
                    "no contexts C1, C2 with " + show(p) + " = !(C1[x /\\ phi] /\\ C2[x /\\ !phi])");
    }

    default:
      throw Error(ErrorCode::Malformed, std::string(keyword(j.rule)) + " is not an axiom");
  }
}

std::optional<LineVerdict> check_rule(const Pattern& p, const Justification& j,
                                      const std::vector<Pattern>& earlier,
                                      const std::vector<bool>& accepted) {
  const std::size_t n = 0;
  for (auto r : j.references()) {
    if (r == 0 || r > earlier.size())
      return reject(n, reason::kBadReference, "line " + std::to_string(r) + " is not available");
    if (!accepted[r - 1])
      return reject(n, reason::kPremiseRejected, "line " + std::to_string(r) + " was rejected");
  }
  auto line = [&](std::size_t r) -> const Pattern& { return earlier[r - 1]; };
  auto mismatch = [&](const std::string& what) { return reject(n, reason::kPremiseMismatch, what); };

  switch (j.rule) {
    case Rule::MP:
      if (line(j.j) != Pattern::imp(line(j.i), p))
        return mismatch("line " + std::to_string(j.j) + " must be " +
                        show(Pattern::imp(line(j.i), p)));
      return std::nullopt;

    case Rule::GenExists: {
      const Pattern& prem = line(j.i);
      if (!is_imp(prem)) return mismatch("line " + std::to_string(j.i) + " is not an implication");
      if (!is_imp(p) || p.left().kind() != Kind::Exists)
        return reject(n, reason::kShapeMismatch, "expected (exists x . phi) -> psi");
      const std::uint32_t x = p.left().var();
      Pattern expected = Pattern::imp(Pattern::exists(x, prem.left()), prem.right());
      if (p != expected) return mismatch("line " + std::to_string(j.i) + " must be " +
                                         show(Pattern::imp(p.left().body(), p.right())));
      if (free_vars(prem.right()).element.contains(x))
        return reject(n, reason::kSideConditionFv,
                      "x" + std::to_string(x) + " is free in " + show(prem.right()));
      return std::nullopt;
    }

    case Rule::FrameL:
    case Rule::FrameR: {
      const Pattern& prem = line(j.i);
      if (!is_imp(prem)) return mismatch("line " + std::to_string(j.i) + " is not an implication");
      const bool left = j.rule == Rule::FrameL;
      if (!is_imp(p) || !is_app(p.left()) || !is_app(p.right()))
        return reject(n, reason::kShapeMismatch,
                      left ? "expected phi chi -> psi chi" : "expected chi phi -> chi psi");
      const Pattern& chi = left ? p.left().right() : p.left().left();
      Pattern expected = left ? Pattern::imp(Pattern::appl(prem.left(), chi),
                                             Pattern::appl(prem.right(), chi))
                              : Pattern::imp(Pattern::appl(chi, prem.left()),
                                             Pattern::appl(chi, prem.right()));
      if (p != expected) return reject(n, reason::kShapeMismatch, "expected " + show(expected));
      return std::nullopt;
    }

    case Rule::SubstSet: {
      const Pattern& prem = line(j.i);
      VarRef X = VarRef::set(j.set_var);
      Pattern expected = subst_free(prem, X, *j.pattern);
      if (p != expected) return reject(n, reason::kShapeMismatch, "expected " + show(expected));
      if (!is_free_for(X, *j.pattern, prem))
        return reject(n, reason::kNotFreeFor,
                      X.text() + " is not free for " + show(*j.pattern) + " in " + show(prem));
      return std::nullopt;
    }

    case Rule::KT: {
      if (!is_imp(p) || p.left().kind() != Kind::Mu)
        return reject(n, reason::kShapeMismatch, "expected mu X . phi -> psi");
      const Pattern& phi = p.left().body();
      const Pattern& psi = p.right();
      VarRef X = VarRef::set(p.left().var());
      Pattern premise = Pattern::imp(subst_free(phi, X, psi), psi);
      if (line(j.i) != premise)
        return mismatch("line " + std::to_string(j.i) + " must be " + show(premise));
      if (!is_free_for(X, psi, phi))
        return reject(n, reason::kNotFreeFor,
                      X.text() + " is not free for " + show(psi) + " in " + show(phi));
      return std::nullopt;
    }

    default:
      throw Error(ErrorCode::Malformed, std::string(keyword(j.rule)) + " is not a rule");
  }
}

Level level_of(const ProofScript& script) {
  Level level = Level::Strong;
  for (const auto& l : script.lines) {
    switch (l.just.rule) {
      case Rule::GenExists:
      case Rule::SubstSet:
        return Level::Global;
      case Rule::FrameL:
      case Rule::FrameR:
      case Rule::KT:
        level = Level::Local;
        break;
      default:
        break;
    }
  }
  return level;
}

CheckReport check_proof(const ProofScript& script) {
  CheckReport report;
  report.level = level_of(script);
  std::vector<Pattern> earlier;
  std::vector<bool> accepted;
  for (const auto& l : script.lines) {
    std::optional<LineVerdict> bad;
    if (l.just.rule == Rule::Hyp || is_axiom(l.just.rule))
      bad = check_axiom(l.pattern, l.just, script);
    else
      bad = check_rule(l.pattern, l.just, earlier, accepted);
    if (bad) {
      bad->number = l.number;
      report.lines.push_back(*bad);
      report.overall = false;
    } else {
      report.lines.push_back({l.number, true, "", ""});
    }
    earlier.push_back(l.pattern);
    accepted.push_back(!bad);
  }
  return report;
}

std::string render_report(const CheckReport& report) {
  std::string out;
  for (const auto& v : report.lines) {
    out += std::to_string(v.number) + ": ";
    out += v.accepted ? "accepted" : "rejected (" + v.reason + ") " + v.detail;
    out += "\n";
  }
  out += "RESULT: " + std::string(report.overall ? "accepted" : "rejected") + "\n";
  out += "LEVEL: " + std::string(to_string(report.level)) + "\n";
  return out;
}

nlohmann::json report_to_json(const CheckReport& report) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& v : report.lines) {
    nlohmann::json j{{"line", v.number}, {"accepted", v.accepted}};
    if (!v.accepted) {
      j["reason"] = v.reason;
      j["detail"] = v.detail;
    }
    lines.push_back(j);
  }
  return {{"lines", lines},
          {"overall", report.overall},
          {"level", std::string(to_string(report.level))}};
}

ProofScript derived_taut_equiv(const ProofScript& script, std::size_t i, const Pattern& psi) {
  if (i == 0 || i > script.lines.size())
    throw Error(ErrorCode::OutOfRange, "line " + std::to_string(i) + " does not exist");
  const Pattern& phi = script.lines[i - 1].pattern;
  Pattern eq = derived::iff(phi, psi);
  if (!is_tautology(eq))
    throw Error(ErrorCode::NotTautEquiv, show(phi) + " <-> " + show(psi) + " is not a tautology");
  ProofScript out = script;
  const std::size_t n = script.lines.size();
  auto add = [&](Pattern p, Justification j) {
    out.lines.push_back({out.lines.size() + 1, std::move(p), std::move(j), 0});
  };
  Justification taut;
  taut.rule = Rule::Taut;
  add(eq, taut);
  add(Pattern::imp(eq, Pattern::imp(phi, psi)), taut);
  Justification mp1;
  mp1.rule = Rule::MP;
  mp1.i = n + 1;
  mp1.j = n + 2;
  add(Pattern::imp(phi, psi), mp1);
  Justification mp2;
  mp2.rule = Rule::MP;
  mp2.i = i;
  mp2.j = n + 3;
  add(psi, mp2);
  return out;
}

AuditReport audit_soundness(const ProofScript& script, const CheckReport& report,
                            const std::vector<Structure>& suite) {
  AuditReport out;
  out.kind = consequence_kind(report.level);
  out.structures = suite.size();
  const auto gamma = script.gamma();
  for (std::size_t k = 0; k < script.lines.size() && k < report.lines.size(); ++k) {
    if (!report.lines[k].accepted) continue;
    ++out.lines_audited;
    const auto& line = script.lines[k];
    Verdict v = consequence(out.kind, gamma, {line.pattern}, suite);
    if (!v.holds) out.violations.push_back({line.number, line.pattern, *v.counterexample});
  }
  return out;
}

}  // namespace aml
