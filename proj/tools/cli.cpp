#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aml/error.hpp"
#include "aml/model.hpp"
#include "aml/proof.hpp"
#include "aml/semantics.hpp"
#include "aml/syntax.hpp"

namespace aml::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A failure tied to an input file. Becomes exit code 2.
struct InputError {
  std::string file;
  std::optional<std::size_t> line;
  std::string code;
  std::string message;

  std::string text() const {
    std::string where = file;
    if (line) where += ":" + std::to_string(*line);
    return where + ": " + code + ": " + message;
  }
};

[[noreturn]] void fail(const std::string& file, const Error& e,
                       std::optional<std::size_t> line = std::nullopt) {
  throw InputError{file, e.line() ? e.line() : line, std::string(to_string(e.code())),
                   e.detail()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{path, std::nullopt, "IoError", "cannot open file"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError{path.string(), std::nullopt, "IoError", "cannot write file"};
  out << text;
}

struct SourceLine {
  std::size_t line;
  std::string text;
};

// Non-blank lines with `#` comments stripped.
std::vector<SourceLine> pattern_lines(const std::string& text) {
  std::vector<SourceLine> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = raw.find_last_not_of(" \t\r");
    out.push_back({n, raw.substr(first, last - first + 1)});
  }
  return out;
}

struct PatternFile {
  std::string path;
  std::vector<SourceLine> lines;
  std::vector<Pattern> patterns;
};

Signature merged(const Signature& a, const Signature& b) {
  Signature out = a;
  for (const auto& c : b.constants())
    if (!out.contains(c)) out.add(c);
  return out;
}

// Identifiers in pattern text that can only be constants.
Signature infer_from_lines(const std::vector<SourceLine>& lines) {
  Signature sig;
  for (const auto& l : lines) sig = merged(sig, Signature::infer(l.text));
  return sig;
}

Signature load_signature(const std::string& path) {
  try {
    return Signature::parse(read_file(path));
  } catch (const Error& e) {
    fail(path, e);
  }
}

PatternFile load_patterns(const std::string& path, const Signature& sig, Syntax mode) {
  PatternFile pf{path, pattern_lines(read_file(path)), {}};
  for (const auto& l : pf.lines) {
    try {
      pf.patterns.push_back(parse(l.text, sig, mode));
    } catch (const Error& e) {
      fail(path, e, l.line);
    }
  }
  return pf;
}

Structure load_model(const std::string& path, const Signature& sig) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError{path, std::nullopt, "FormatError", e.what()};
  }
  try {
    return validate_structure(doc, sig);
  } catch (const Error& e) {
    fail(path, e);
  }
}

Valuation load_valuation(const std::string& path, const Structure& s) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError{path, std::nullopt, "FormatError", e.what()};
  }
  try {
    return valuation_from_json(doc, s);
  } catch (const Error& e) {
    fail(path, e);
  }
}

std::vector<std::string> model_files(const std::string& dir) {
  std::vector<std::string> files;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw InputError{dir, std::nullopt, "IoError", "cannot read directory"};
  for (const auto& entry : it)
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

Syntax syntax_from(const std::string& name) { return name == "core" ? Syntax::Core : Syntax::Sugar; }

std::string format_valuation(const Valuation& e, const Structure& s) {
  std::string out;
  for (const auto& [x, a] : e.element) {
    if (!out.empty()) out += ", ";
    out += "x" + std::to_string(x) + "=" + s.universe()[a];
  }
  for (const auto& [X, sub] : e.set) {
    if (!out.empty()) out += ", ";
    out += "X" + std::to_string(X) + "=" + s.format(sub);
  }
  return out.empty() ? "(empty)" : out;
}

// Options shared by every command.
struct Common {
  std::string sig_file;
  std::string mode = "sugar";
  bool json_out = false;
  std::string cex_dir;
};

struct SuiteFlags {
  std::size_t max_size = 2;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  bool defined = false;
  std::string models_dir;

  SuiteOptions options() const {
    SuiteOptions o;
    o.max_size = max_size;
    o.exhaustive_max = std::min<std::size_t>(2, max_size);
    o.samples = samples;
    o.seed = seed;
    o.definedness = defined;
    return o;
  }
};

void add_suite_flags(CLI::App* cmd, SuiteFlags& f) {
  cmd->add_option("--max-size", f.max_size, "Largest universe in a generated suite")
      ->check(CLI::Range(1, 6));
  cmd->add_option("--samples", f.samples, "Sampled structures above size 2");
  cmd->add_option("--seed", f.seed, "Seed for sampled structures");
  cmd->add_flag("--defined", f.defined, "Only structures obeying the definedness law");
}

// The structures a command ranges over: a model directory or a generated suite.
struct Suite {
  std::vector<Structure> structures;
  std::vector<std::string> names;
};

Suite make_suite(const SuiteFlags& f, const Signature& sig) {
  Suite suite;
  Signature effective = sig;
  if (f.defined && !effective.has_definedness()) effective.add(std::string(Signature::kDefinedness));
  if (!f.models_dir.empty()) {
    for (const auto& file : model_files(f.models_dir)) {
      suite.structures.push_back(load_model(file, effective));
      suite.names.push_back(file);
    }
    return suite;
  }
  try {
    suite.structures = enumerate_structures(sig, f.options());
  } catch (const Error& e) {
    fail("<suite>", e);
  }
  for (std::size_t i = 0; i < suite.structures.size(); ++i)
    suite.names.push_back("#" + std::to_string(i));
  return suite;
}

// Writes model.json and valuation.json into dir (created if needed).
void write_counterexample(const std::string& dir, const Structure& s, const Valuation& e) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError{dir, std::nullopt, "IoError", "cannot create directory"};
  write_file(fs::path(dir) / "model.json", structure_to_json(s).dump(2) + "\n");
  write_file(fs::path(dir) / "valuation.json", valuation_to_json(e, s).dump(2) + "\n");
}

json cex_json(const Structure& s, const Valuation& e, const std::string& name) {
  return {{"structure", name}, {"model", structure_to_json(s)}, {"valuation", valuation_to_json(e, s)}};
}

void print_cex_text(std::ostream& out, const Structure& s, const Valuation& e,
                    const std::string& name) {
  out << "  structure " << name << ": " << structure_to_json(s).dump() << "\n";
  out << "  assignment: " << format_valuation(e, s) << "\n";
  out << "  valuation: " << valuation_to_json(e, s).dump() << "\n";
}

Signature signature_for(const Common& c, const std::vector<std::string>& pattern_files) {
  if (!c.sig_file.empty()) return load_signature(c.sig_file);
  Signature sig;
  for (const auto& f : pattern_files) sig = merged(sig, infer_from_lines(pattern_lines(read_file(f))));
  return sig;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_parse(const Common& c, const std::string& file, const std::string& emit, std::ostream& out) {
  auto sig = signature_for(c, {file});
  auto pf = load_patterns(file, sig, syntax_from(c.mode));
  auto target = syntax_from(emit);
  if (c.json_out) {
    json arr = json::array();
    for (std::size_t i = 0; i < pf.patterns.size(); ++i)
      arr.push_back({{"line", pf.lines[i].line}, {"pattern", render(pf.patterns[i], target)}});
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& p : pf.patterns) out << render(p, target) << "\n";
  }
  return 0;
}

std::string polarity_text(const Pattern& p, std::uint32_t X) {
  bool pos = is_positive_in(p, X);
  bool neg = is_negative_in(p, X);
  if (pos && neg) return "both";
  if (pos) return "positive";
  if (neg) return "negative";
  return "neither";
}

json analyze_json(const Pattern& p) {
  json j;
  j["core"] = render(p, Syntax::Core);
  j["sugar"] = render(p, Syntax::Sugar);
  auto fv = free_vars(p);
  json fvj = json::array();
  for (auto x : fv.element) fvj.push_back("x" + std::to_string(x));
  for (auto X : fv.set) fvj.push_back("X" + std::to_string(X));
  j["free"] = fvj;
  auto ts = tokens(p);
  auto kinds = occurrence_kinds(p);
  json occ = json::array();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    json row = {{"position", k}, {"token", ts[k].text()},
                {"occurrence", std::string(to_string(kinds[k]))}};
    if (ts[k].kind == TokenKind::Exists || ts[k].kind == TokenKind::Mu) {
      row["scope_end"] = binder_scope(p, k);
    } else if (ts[k].kind == TokenKind::Appl || ts[k].kind == TokenKind::Imp) {
      auto [l, r] = binary_scopes(p, k);
      row["left_end"] = l;
      row["right_end"] = r;
    }
    occ.push_back(row);
  }
  j["tokens"] = occ;
  json pol = json::object();
  for (auto X : all_vars(p).set) pol["X" + std::to_string(X)] = polarity_text(p, X);
  j["polarity"] = pol;
  return j;
}

int cmd_analyze(const Common& c, const std::string& file, std::ostream& out) {
  auto sig = signature_for(c, {file});
  auto pf = load_patterns(file, sig, syntax_from(c.mode));
  json all = json::array();
  for (std::size_t i = 0; i < pf.patterns.size(); ++i) {
    auto j = analyze_json(pf.patterns[i]);
    j["line"] = pf.lines[i].line;
    all.push_back(j);
  }
  if (c.json_out) {
    out << all.dump(2) << "\n";
    return 0;
  }
  for (const auto& j : all) {
    out << "pattern (line " << j["line"].get<std::size_t>() << "): " << j["sugar"].get<std::string>()
        << "\n  core: " << j["core"].get<std::string>() << "\n  free:";
    if (j["free"].empty()) out << " (none)";
    for (const auto& v : j["free"]) out << " " << v.get<std::string>();
    out << "\n  tokens:\n";
    for (const auto& row : j["tokens"]) {
      out << "    " << std::setw(3) << row["position"].get<std::size_t>() << "  " << std::left
          << std::setw(8) << row["token"].get<std::string>() << std::right << " "
          << row["occurrence"].get<std::string>();
      if (row.contains("scope_end")) out << "  scope ..." << row["scope_end"].get<std::size_t>();
      if (row.contains("left_end"))
        out << "  left ..." << row["left_end"].get<std::size_t>() << " right ..."
            << row["right_end"].get<std::size_t>();
      out << "\n";
    }
    out << "  polarity:";
    if (j["polarity"].empty()) out << " (no set variables)";
    for (const auto& [X, v] : j["polarity"].items()) out << " " << X << "=" << v.get<std::string>();
    out << "\n";
  }
  return 0;
}

int cmd_eval(const Common& c, const std::string& file, const std::string& model_file,
             const std::string& valuation_file, std::ostream& out) {
  auto sig = signature_for(c, {file});
  auto pf = load_patterns(file, sig, syntax_from(c.mode));
  auto s = load_model(model_file, sig);
  Valuation e;
  if (!valuation_file.empty()) e = load_valuation(valuation_file, s);
  bool all = true;
  json arr = json::array();
  for (std::size_t i = 0; i < pf.patterns.size(); ++i) {
    EvalResult r;
    try {
      r = evaluate_result(s, e, pf.patterns[i]);
    } catch (const Error& err) {
      fail(file, err, pf.lines[i].line);
    }
    all = all && r.satisfied;
    if (c.json_out) {
      json v = json::array();
      for (auto k : r.value.elements()) v.push_back(s.universe()[k]);
      arr.push_back({{"line", pf.lines[i].line}, {"value", v}, {"satisfied", r.satisfied}});
    } else {
      out << render(pf.patterns[i], Syntax::Sugar) << " = " << s.format(r.value) << " "
          << (r.satisfied ? "satisfied" : "not satisfied") << "\n";
    }
  }
  if (c.json_out) out << arr.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_check(const Common& c, SuiteFlags flags, const std::string& file,
              const std::string& model_file, std::ostream& out) {
  auto sig = signature_for(c, {file});
  auto pf = load_patterns(file, sig, syntax_from(c.mode));
  Suite suite;
  if (!model_file.empty()) {
    suite.structures.push_back(load_model(model_file, sig));
    suite.names.push_back(model_file);
  } else {
    suite = make_suite(flags, sig);
  }
  bool all = true;
  json arr = json::array();
  for (std::size_t i = 0; i < pf.patterns.size(); ++i) {
    const auto& p = pf.patterns[i];
    json row = {{"line", pf.lines[i].line}, {"pattern", render(p, Syntax::Sugar)}};
    std::optional<std::pair<std::size_t, Valuation>> bad;
    for (std::size_t k = 0; k < suite.structures.size() && !bad; ++k) {
      try {
        if (auto e = find_unsatisfying(suite.structures[k], p)) bad = {k, *e};
      } catch (const Error& err) {
        fail(file, err, pf.lines[i].line);
      }
    }
    row["valid"] = !bad;
    row["structures"] = suite.structures.size();
    if (!c.json_out)
      out << render(p, Syntax::Sugar) << ": "
          << (bad ? "fails" : "valid in " + std::to_string(suite.structures.size()) + " structure(s)")
          << "\n";
    if (bad) {
      all = false;
      const auto& s = suite.structures[bad->first];
      row["counterexample"] = cex_json(s, bad->second, suite.names[bad->first]);
      if (!c.json_out) print_cex_text(out, s, bad->second, suite.names[bad->first]);
      if (!c.cex_dir.empty())
        write_counterexample((fs::path(c.cex_dir) / ("line-" + std::to_string(pf.lines[i].line))).string(),
                             s, bad->second);
    }
    arr.push_back(row);
  }
  if (c.json_out) out << arr.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_taut(const Common& c, const std::string& file, std::ostream& out) {
  auto sig = signature_for(c, {file});
  auto pf = load_patterns(file, sig, syntax_from(c.mode));
  bool all = true;
  json arr = json::array();
  for (std::size_t i = 0; i < pf.patterns.size(); ++i) {
    bool t;
    try {
      t = is_tautology(pf.patterns[i]);
    } catch (const Error& err) {
      fail(file, err, pf.lines[i].line);
    }
    all = all && t;
    if (c.json_out)
      arr.push_back({{"line", pf.lines[i].line}, {"tautology", t}});
    else
      out << render(pf.patterns[i], Syntax::Sugar) << ": "
          << (t ? "tautology" : "not a tautology") << "\n";
  }
  if (c.json_out) out << arr.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_consequence(const Common& c, const SuiteFlags& flags, const std::string& kind_text,
                    const std::string& gamma_file, const std::string& delta_file, std::ostream& out) {
  auto kind = consequence_kind_from(kind_text);
  if (!kind) throw InputError{"--kind", std::nullopt, "UsageError", "unknown kind '" + kind_text + "'"};
  auto sig = signature_for(c, {gamma_file, delta_file});
  auto mode = syntax_from(c.mode);
  auto gamma = load_patterns(gamma_file, sig, mode);
  auto delta = load_patterns(delta_file, sig, mode);
  auto suite = make_suite(flags, sig);
  Verdict v;
  try {
    v = consequence(*kind, gamma.patterns, delta.patterns, suite.structures);
  } catch (const Error& err) {
    fail(delta_file, err);
  }
  json j = {{"kind", std::string(to_string(*kind))}, {"holds", v.holds},
            {"structures", v.structures_checked}};
  if (v.counterexample) {
    const auto& ce = *v.counterexample;
    const auto& name = suite.names[ce.structure_index];
    j["counterexample"] = cex_json(ce.structure, ce.valuation, name);
    if (!c.cex_dir.empty()) write_counterexample(c.cex_dir, ce.structure, ce.valuation);
  }
  if (c.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << to_string(*kind) << " consequence " << (v.holds ? "holds" : "fails") << " over "
        << v.structures_checked << " structure(s)\n";
    if (v.counterexample) {
      const auto& ce = *v.counterexample;
      print_cex_text(out, ce.structure, ce.valuation, suite.names[ce.structure_index]);
    }
  }
  return v.holds ? 0 : 1;
}

// Pattern segments of a proof script: hypothesis bodies and the first and
// third `;`-separated fields of each step.
std::vector<SourceLine> proof_pattern_segments(const std::string& text) {
  std::vector<SourceLine> out;
  for (const auto& l : pattern_lines(text)) {
    if (l.text.rfind("hyp ", 0) == 0) {
      if (auto at = l.text.find(":="); at != std::string::npos)
        out.push_back({l.line, l.text.substr(at + 2)});
      continue;
    }
    auto colon = l.text.find(':');
    if (colon == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ss(l.text.substr(colon + 1));
    std::string f;
    while (std::getline(ss, f, ';')) fields.push_back(f);
    if (!fields.empty()) out.push_back({l.line, fields[0]});
    if (fields.size() > 2) out.push_back({l.line, fields[2]});
  }
  return out;
}

int cmd_proof_check(const Common& c, const SuiteFlags& flags, bool audit, const std::string& file,
                    const std::vector<std::string>& hyp_files, std::ostream& out) {
  std::string text = read_file(file);
  Signature sig;
  if (!c.sig_file.empty()) {
    sig = load_signature(c.sig_file);
  } else {
    sig = infer_from_lines(proof_pattern_segments(text));
    for (const auto& h : hyp_files)
      sig = merged(sig, infer_from_lines(proof_pattern_segments(read_file(h))));
  }
  std::vector<Hypothesis> preset;
  for (const auto& h : hyp_files) {
    try {
      auto hs = parse_proof(read_file(h), sig, preset);
      for (const auto& hyp : hs.hypotheses)
        if (std::none_of(preset.begin(), preset.end(),
                         [&](const Hypothesis& p) { return p.name == hyp.name; }))
          preset.push_back(hyp);
    } catch (const Error& e) {
      fail(h, e);
    }
  }
  ProofScript script;
  try {
    script = parse_proof(text, sig, preset);
  } catch (const Error& e) {
    fail(file, e);
  }
  auto report = check_proof(script);
  json j = report_to_json(report);
  bool ok = report.overall;
  std::string audit_text;
  if (audit) {
    SuiteFlags f = flags;
    auto suite = make_suite(f, signature_of(script));
    AuditReport ar;
    try {
      ar = audit_soundness(script, report, suite.structures);
    } catch (const Error& e) {
      fail(file, e);
    }
    json aj = {{"kind", std::string(to_string(ar.kind))}, {"lines", ar.lines_audited},
               {"structures", ar.structures}, {"violations", json::array()}};
    std::ostringstream at;
    at << "AUDIT: " << to_string(ar.kind) << " consequence, " << ar.lines_audited << " line(s), "
       << ar.structures << " structure(s), " << ar.violations.size() << " violation(s)\n";
    for (std::size_t k = 0; k < ar.violations.size(); ++k) {
      const auto& v = ar.violations[k];
      const auto& ce = v.counterexample;
      auto name = suite.names[ce.structure_index];
      aj["violations"].push_back({{"line", v.line}, {"counterexample", cex_json(ce.structure, ce.valuation, name)}});
      at << "VIOLATION line " << v.line << ": " << render(v.pattern, Syntax::Sugar) << "\n";
      print_cex_text(at, ce.structure, ce.valuation, name);
      if (!c.cex_dir.empty())
        write_counterexample((fs::path(c.cex_dir) / ("line-" + std::to_string(v.line))).string(),
                             ce.structure, ce.valuation);
    }
    ok = ok && ar.violations.empty();
    j["audit"] = aj;
    audit_text = at.str();
  }
  if (c.json_out)
    out << j.dump(2) << "\n";
  else
    out << render_report(report) << audit_text;
  return ok ? 0 : 1;
}

int cmd_gen_models(const Common& c, const SuiteFlags& flags, const std::string& dir,
                   const std::string& constants, std::ostream& out) {
  Signature sig;
  if (!c.sig_file.empty()) sig = load_signature(c.sig_file);
  std::stringstream ss(constants);
  std::string name;
  try {
    while (std::getline(ss, name, ','))
      if (!name.empty() && !sig.contains(name)) sig.add(name);
  } catch (const Error& e) {
    fail("--constants", e);
  }
  auto suite = make_suite(flags, sig);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError{dir, std::nullopt, "IoError", "cannot create directory"};
  std::size_t width = std::max<std::size_t>(4, std::to_string(suite.structures.size()).size());
  for (std::size_t i = 0; i < suite.structures.size(); ++i) {
    std::ostringstream fname;
    fname << "model-" << std::setw(static_cast<int>(width)) << std::setfill('0') << i << ".json";
    write_file(fs::path(dir) / fname.str(), structure_to_json(suite.structures[i]).dump(2) + "\n");
  }
  if (c.json_out)
    out << json({{"directory", dir}, {"models", suite.structures.size()}}).dump(2) << "\n";
  else
    out << "wrote " << suite.structures.size() << " model(s) to " << dir << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Applicative matching logic workbench", "aml"};
  app.require_subcommand(1);

  Common common;
  auto common_flags = [&](CLI::App* cmd) {
    cmd->add_option("--sig", common.sig_file, "Signature file (one constant per line)");
    cmd->add_option("--mode", common.mode, "Input syntax")
        ->check(CLI::IsMember({"core", "sugar"}));
    cmd->add_flag("--json", common.json_out, "Machine-readable output");
  };

  std::string file, emit = "core", model_file, valuation_file, kind = "global", delta_file, out_dir,
                    constants;
  std::vector<std::string> hyp_files;
  bool audit = false;
  SuiteFlags suite;

  auto* parse_cmd = app.add_subcommand("parse", "Re-emit patterns in the requested syntax");
  common_flags(parse_cmd);
  parse_cmd->add_option("--emit", emit, "Output syntax")->check(CLI::IsMember({"core", "sugar"}));
  parse_cmd->add_option("file", file, "Pattern file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Free variables, occurrences, scopes, polarity");
  common_flags(analyze_cmd);
  analyze_cmd->add_option("file", file, "Pattern file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate patterns in one model");
  common_flags(eval_cmd);
  eval_cmd->add_option("--model", model_file, "Model JSON")->required();
  eval_cmd->add_option("--valuation", valuation_file, "Valuation JSON");
  eval_cmd->add_option("file", file, "Pattern file")->required();

  auto* check_cmd = app.add_subcommand("check", "Decide validity in a model or a suite");
  common_flags(check_cmd);
  add_suite_flags(check_cmd, suite);
  auto* model_opt = check_cmd->add_option("--model", model_file, "Model JSON");
  check_cmd->add_option("--models", suite.models_dir, "Directory of model JSON files")
      ->excludes(model_opt);
  check_cmd->add_option("--cex-dir", common.cex_dir, "Write counterexample files here");
  check_cmd->add_option("file", file, "Pattern file")->required();

  auto* taut_cmd = app.add_subcommand("taut", "Decide propositional tautology");
  common_flags(taut_cmd);
  taut_cmd->add_option("file", file, "Pattern file")->required();

  auto* cons_cmd = app.add_subcommand("consequence", "Decide a consequence relation");
  common_flags(cons_cmd);
  add_suite_flags(cons_cmd, suite);
  cons_cmd->add_option("--kind", kind, "global, local or strong")
      ->check(CLI::IsMember({"global", "local", "strong"}));
  cons_cmd->add_option("--models", suite.models_dir, "Directory of model JSON files");
  cons_cmd->add_option("--cex-dir", common.cex_dir, "Write counterexample files here");
  cons_cmd->add_option("gamma", file, "Premise pattern file")->required();
  cons_cmd->add_option("delta", delta_file, "Conclusion pattern file")->required();

  auto* proof_cmd = app.add_subcommand("proof", "Proof scripts");
  proof_cmd->require_subcommand(1);
  auto* pcheck = proof_cmd->add_subcommand("check", "Check a proof script");
  common_flags(pcheck);
  add_suite_flags(pcheck, suite);
  pcheck->add_flag("--audit", audit, "Audit accepted lines against a suite");
  pcheck->add_option("--models", suite.models_dir, "Audit against these model files instead");
  pcheck->add_option("--hyps", hyp_files, "Extra hypothesis file (repeatable)")
      ->allow_extra_args(false);
  pcheck->add_option("--cex-dir", common.cex_dir, "Write counterexample files here");
  pcheck->add_option("file", file, "Proof script")->required();

  auto* gen_cmd = app.add_subcommand("gen-models", "Write a deterministic suite to files");
  gen_cmd->add_option("--sig", common.sig_file, "Signature file");
  gen_cmd->add_option("--constants", constants, "Comma-separated constants");
  gen_cmd->add_flag("--json", common.json_out, "Machine-readable output");
  add_suite_flags(gen_cmd, suite);
  gen_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse_cmd) return cmd_parse(common, file, emit, out);
    if (*analyze_cmd) return cmd_analyze(common, file, out);
    if (*eval_cmd) return cmd_eval(common, file, model_file, valuation_file, out);
    if (*check_cmd) return cmd_check(common, suite, file, model_file, out);
    if (*taut_cmd) return cmd_taut(common, file, out);
    if (*cons_cmd) return cmd_consequence(common, suite, kind, file, delta_file, out);
    if (*pcheck) return cmd_proof_check(common, suite, audit, file, hyp_files, out);
    if (*gen_cmd) return cmd_gen_models(common, suite, out_dir, constants, out);
  } catch (const InputError& e) {
    err << e.text() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "aml: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace aml::cli
