#include "tempinv/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tempinv/ground.hpp"
#include "tempinv/statevar.hpp"
#include "tempinv/synthesis.hpp"

namespace tempinv {

namespace {

constexpr const char* kFormatHeader = "tempinv-format 1";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw CanonError(CanonError::Kind::Other, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts PDDL or the canon subcommand's output.
CanonicalDomain load_domain(const std::string& path) {
  std::string text = slurp(path);
  std::vector<Sexpr> forms = parse_sexprs(text, path);
  if (!forms.empty() && forms[0].head() == "canonical-domain")
    return parse_canonical(text, path);
  RawDomain raw = parse_domain(text, path);
  return canonicalize(raw);
}

// The raw domain is needed to validate problems; only PDDL inputs carry it.
RawDomain load_raw_domain(const std::string& path) {
  std::string text = slurp(path);
  return parse_domain(text, path);
}

struct VerifyArgs {
  std::string template_key;
  std::string domain_path;
  std::string problem_path;
  int max_depth = 8;
  int max_sim = 2;
  size_t state_cap = 2'000'000;
};

int run_verify(const VerifyArgs& va, std::ostream& out, std::ostream& err) {
  RawDomain raw = load_raw_domain(va.domain_path);
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(slurp(va.problem_path), va.problem_path, raw);
  Template t = parse_template_key(dom, va.template_key);

  GroundContext ctx(dom, prob);
  GroundedInstance gi = ground_all(ctx);
  SearchBounds bounds;
  bounds.max_happenings = va.max_depth;
  bounds.max_simultaneous = va.max_sim;
  bounds.state_cap = va.state_cap;
  VerifyResult res = verify_template(t, ctx, gi, bounds);

  out << kFormatHeader << "\n";
  switch (res.status) {
    case VerifyResult::Status::Holds:
      out << "Holds (depth " << res.depth_explored << ")\n";
      return 0;
    case VerifyResult::Status::Inconclusive:
      out << "Inconclusive (state cap " << va.state_cap << " reached)\n";
      return 0;
    case VerifyResult::Status::InitViolation: {
      err << "initial state violates the weight assumption for instance (";
      for (size_t i = 0; i < res.init_instance.size(); ++i)
        err << (i ? " " : "") << res.init_instance[i];
      err << ")\n";
      return 1;
    }
    case VerifyResult::Status::Violated: {
      out << "Violated instance (";
      for (size_t i = 0; i < res.violating_instance.size(); ++i)
        out << (i ? " " : "") << res.violating_instance[i];
      out << ")\n";
      for (size_t h = 0; h < res.witness.size(); ++h) {
        out << (h + 1) << ":";
        for (size_t e = 0; e < res.witness[h].size(); ++e) {
          out << (e ? " | " : " ") << print_event(res.witness[h][e], gi);
        }
        out << "\n";
      }
      return 2;
    }
  }
  return 0;
}

// log level from TEMPINV_LOG: silent by default, "info" adds timings
bool log_info() {
  const char* lvl = std::getenv("TEMPINV_LOG");
  return lvl && (std::string(lvl) == "info" || std::string(lvl) == "debug");
}

void log_timings(const SynthesisReport& report, std::ostream& err) {
  if (!log_info()) return;
  err << "info: checked " << report.checked_count << " templates in "
      << report.seconds_check << "s, repaired in " << report.seconds_repair
      << "s\n";
}

std::vector<Template> synthesized_invariants(const CanonicalDomain& dom,
                                             Mode mode, int jobs,
                                             std::ostream& err) {
  SynthesisOptions opts;
  opts.mode = mode;
  opts.jobs = jobs;
  SynthesisReport report = synthesize(dom, opts);
  log_timings(report, err);
  std::vector<Template> out;
  for (const ReportEntry& e : report.accepted) out.push_back(e.tpl);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"temporal mutual-exclusion invariant synthesis", "tempinv"};
  app.require_subcommand(1);

  // canon
  auto* canon = app.add_subcommand("canon", "emit the canonical domain");
  std::string canon_domain;
  canon->add_option("domain", canon_domain, "domain file")->required();

  // invariants
  auto* inv = app.add_subcommand("invariants", "synthesize invariants");
  std::string inv_mode = "tis";
  std::string inv_format = "text";
  std::string inv_domain;
  int inv_jobs = 1;
  int inv_cap = 4;
  bool inv_exhaustive = false;
  inv->add_option("--mode", inv_mode, "tis|sis")
      ->check(CLI::IsMember({"tis", "sis"}));
  inv->add_option("--format", inv_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  inv->add_option("--jobs", inv_jobs, "parallel template checks");
  inv->add_option("--repair-cap", inv_cap, "max components per template");
  inv->add_flag("--repair-exhaustive", inv_exhaustive,
                "emit every counted-position choice when repairing");
  inv->add_option("domain", inv_domain, "domain file")->required();

  // statevars
  auto* sv = app.add_subcommand("statevars", "emit multi-valued variables");
  std::string sv_mode = "tis";
  std::string sv_format = "text";
  std::string sv_domain, sv_problem;
  int sv_jobs = 1;
  sv->add_option("--mode", sv_mode, "bis|sis|tis")
      ->check(CLI::IsMember({"bis", "sis", "tis"}));
  sv->add_option("--format", sv_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  sv->add_option("--jobs", sv_jobs, "parallel template checks");
  sv->add_option("domain", sv_domain, "domain file")->required();
  sv->add_option("problem", sv_problem, "problem file")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "brute-force template check");
  VerifyArgs va;
  ver->add_option("--template", va.template_key, "template key")->required();
  ver->add_option("--max-depth", va.max_depth, "happening bound");
  ver->add_option("--max-sim", va.max_sim, "simultaneity bound");
  ver->add_option("--state-cap", va.state_cap, "state bound");
  ver->add_option("domain", va.domain_path, "domain file")->required();
  ver->add_option("problem", va.problem_path, "problem file")->required();

  // debug
  auto* dbg = app.add_subcommand("debug", "diff expected vs found invariants");
  std::string dbg_expect, dbg_domain;
  std::string dbg_mode = "tis";
  dbg->add_option("--expect", dbg_expect, "file with one template key per line")
      ->required();
  dbg->add_option("--mode", dbg_mode, "tis|sis")
      ->check(CLI::IsMember({"tis", "sis"}));
  dbg->add_option("domain", dbg_domain, "domain file")->required();

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (canon->parsed()) {
      CanonicalDomain dom = load_domain(canon_domain);
      out << "; " << kFormatHeader << "\n" << emit_canonical(dom);
      return 0;
    }
    if (inv->parsed()) {
      CanonicalDomain dom = load_domain(inv_domain);
      SynthesisOptions opts;
      opts.mode = inv_mode == "tis" ? Mode::TIS : Mode::SIS;
      opts.jobs = inv_jobs;
      opts.component_cap = inv_cap;
      opts.repair_exhaustive = inv_exhaustive;
      SynthesisReport report = synthesize(dom, opts);
      log_timings(report, err);
      if (inv_format == "json") {
        out << report.to_json(dom) << "\n";
      } else {
        out << kFormatHeader << "\n" << report.to_text();
      }
      return 0;
    }
    if (sv->parsed()) {
      RawDomain raw = load_raw_domain(sv_domain);
      CanonicalDomain dom = canonicalize(raw);
      RawProblem prob = parse_problem(slurp(sv_problem), sv_problem, raw);
      GroundContext ctx(dom, prob);
      EncodingMode mode = sv_mode == "bis"   ? EncodingMode::BIS
                          : sv_mode == "sis" ? EncodingMode::SIS
                                             : EncodingMode::TIS;
      std::vector<Template> invariants;
      if (mode != EncodingMode::BIS)
        invariants = synthesized_invariants(
            dom, mode == EncodingMode::TIS ? Mode::TIS : Mode::SIS, sv_jobs,
            err);
      Encoding enc = build_state_variables(invariants, ctx, mode);
      if (sv_format == "json")
        out << emit_json(enc) << "\n";
      else
        out << kFormatHeader << "\n" << emit_text(enc);
      return 0;
    }
    if (ver->parsed()) return run_verify(va, out, err);
    if (dbg->parsed()) {
      CanonicalDomain dom = load_domain(dbg_domain);
      SynthesisOptions opts;
      opts.mode = dbg_mode == "tis" ? Mode::TIS : Mode::SIS;
      SynthesisReport report = synthesize(dom, opts);
      std::vector<std::string> found;
      for (const ReportEntry& e : report.accepted)
        found.push_back(template_key(e.tpl));

      out << kFormatHeader << "\n";
      std::istringstream expect(slurp(dbg_expect));
      std::string line;
      int missing = 0;
      std::vector<std::string> expected;
      while (std::getline(expect, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
          line.pop_back();
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        expected.push_back(line);
        Template t = parse_template_key(dom, line);
        std::string key = template_key(t);
        if (std::find(found.begin(), found.end(), key) != found.end()) {
          out << "ok " << key << "\n";
          continue;
        }
        ++missing;
        out << "missing " << key << "\n";
        Verdict v = check_invariance(t, dom);
        for (const Failure& f : v.failures) {
          out << "  " << f.schema << " " << to_string(f.fragment) << " "
              << f.class_signature << " " << to_string(f.classification);
          if (f.relevant_literal)
            out << " via " << print_literal(*f.relevant_literal);
          out << "\n";
        }
      }
      for (const std::string& key : found) {
        bool listed = false;
        for (const std::string& e : expected) {
          Template t = parse_template_key(dom, e);
          if (template_key(t) == key) listed = true;
        }
        if (!listed) out << "extra " << key << "\n";
      }
      return missing ? 1 : 0;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const CanonError& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tempinv
