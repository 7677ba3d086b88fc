#include "tempinv/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <thread>

#include "json.hpp"

namespace tempinv {

std::vector<Template> initial_templates(const CanonicalDomain& domain) {
  std::vector<Template> out;
  for (const RelationInfo& r : domain.relations) {  // sorted by name
    if (r.is_static) continue;
    out.push_back(Template::single(Component{r.name, r.arity, r.arity}));
    for (int p = 0; p < r.arity; ++p)
      out.push_back(Template::single(Component{r.name, r.arity, p}));
  }
  return out;
}

namespace {

// singleton instantiations are mutually exclusive by cardinality; such
// templates carry no information and are not reported as invariants
bool vacuous_template(const Template& t) {
  return t.components().size() == 1 && !t.components()[0].has_counted();
}

std::vector<RepairSeed> repair_seeds(const TemplateAnalysis& a) {
  std::vector<RepairSeed> seeds;
  if (!a.liftable) return seeds;
  const CanonicalDomain& domain = *a.domain;
  auto add = [&](const std::string& schema, int dur, int inst,
                 FragmentKind kind, const TClass& cls,
                 const InstantaneousSchema& frag) {
    PureSets p = restrict_to_class(frag, cls);
    if (p.eff_plus.size() != 1 || p.eff_plus[0].quantified()) return;
    RepairSeed s;
    s.schema = schema;
    s.durative_index = dur;
    s.instant_index = inst;
    s.fragment = kind;
    s.cls = cls;
    s.relevant = p.eff_plus[0];
    seeds.push_back(std::move(s));
  };
  for (const auto& info : a.instants) {
    const InstantaneousSchema& s = domain.inst_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c)
      if (info.cls[c] == Classification::RelevantUnbounded)
        add(s.name, -1, info.index, FragmentKind::Native,
            info.classes.classes[c], s);
  }
  for (const auto& info : a.duratives) {
    const DurativeSchema& d = domain.dur_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c) {
      const TClass& cls = info.classes.classes[c];
      if (info.st[c] == Classification::RelevantUnbounded)
        add(d.name, info.index, -1, FragmentKind::Start, cls, d.st);
      if (info.end[c] == Classification::RelevantUnbounded)
        add(d.name, info.index, -1, FragmentKind::End, cls, d.end);
    }
  }
  return seeds;
}

}  // namespace

std::vector<Template> repair(const CanonicalDomain& domain, const Template& t,
                             const RepairSeed& seed,
                             const SynthesisOptions& opts) {
  std::vector<Template> out;
  std::set<std::string> seen;

  // component via which the relevant literal matches
  int comp_idx = -1;
  for (size_t i = 0; i < seed.cls.literals.size(); ++i)
    if (seed.cls.literals[i] == seed.relevant)
      comp_idx = seed.cls.component_of[i];
  if (comp_idx < 0) return out;

  int k = t.k();
  std::vector<Arg> block_values;  // value the new literal must carry per block
  for (int b = 0; b < k; ++b) {
    int pos = t.position_in_block(b, comp_idx);
    block_values.push_back(seed.relevant.args[(size_t)pos]);
  }

  // candidate literal sources
  const InstantaneousSchema* frag = nullptr;
  const DurativeSchema* dur = nullptr;
  if (seed.durative_index >= 0) {
    dur = &domain.dur_schemas[(size_t)seed.durative_index];
    frag = seed.fragment == FragmentKind::Start ? &dur->st : &dur->end;
  } else {
    frag = &domain.inst_schemas[(size_t)seed.instant_index];
  }

  std::vector<LiteralSet> sources;
  sources.push_back(frag->pre_plus.set_intersect(frag->eff_minus));  // (iii)
  // the durative conditions only exist in the full temporal mode
  if (dur && seed.fragment == FragmentKind::End && opts.mode == Mode::TIS) {
    AuxSchema aux = make_aux(*dur);
    sources.push_back(
        aux.st_star.pre_plus.set_intersect(aux.st_star.eff_minus));   // (iv)
    sources.push_back(
        aux.st_star.pre_plus.set_intersect(aux.end_star.eff_minus));  // (v)
  }

  for (const LiteralSet& source : sources) {
    for (const Literal& cand : source) {
      int arity = (int)cand.args.size();
      if (arity != k && arity != k + 1) continue;
      // injective position maps preserving argument values per block
      std::vector<int> beta((size_t)k, -1);
      std::vector<bool> taken((size_t)arity, false);
      bool emitted_for_cand = false;
      auto emit = [&]() {
        if (!opts.repair_exhaustive && emitted_for_cand) return;
        int counted = arity;  // none
        if (arity == k + 1) {
          for (int p = 0; p < arity; ++p)
            if (!taken[(size_t)p]) counted = p;
          // a quantified candidate must sweep exactly the counted position
          if (cand.quantified()) {
            std::vector<int> qp = cand.quant_positions();
            if (qp.size() != 1 || qp[0] != counted) return;
          }
        } else if (cand.quantified()) {
          return;
        }
        std::vector<Component> comps = t.components();
        comps.push_back(Component{cand.relation, arity, counted});
        int new_idx = (int)comps.size() - 1;
        std::vector<std::vector<FixedArg>> blocks = t.blocks();
        for (int b = 0; b < k; ++b)
          blocks[(size_t)b].push_back(FixedArg{new_idx, beta[(size_t)b]});
        try {
          Template fixed = Template::make(std::move(comps), std::move(blocks));
          if (seen.insert(template_key(fixed)).second)
            out.push_back(std::move(fixed));
          emitted_for_cand = true;
        } catch (const CanonError&) {
          // duplicate component or inadmissible extension: not a repair
        }
      };
      auto rec = [&](auto&& self, int b) -> void {
        if (b == k) {
          emit();
          return;
        }
        for (int p = 0; p < arity; ++p) {
          if (taken[(size_t)p]) continue;
          if (!(cand.args[(size_t)p] == block_values[(size_t)b])) continue;
          taken[(size_t)p] = true;
          beta[(size_t)b] = p;
          self(self, b + 1);
          taken[(size_t)p] = false;
        }
      };
      rec(rec, 0);
    }
  }
  return out;
}

namespace {

bool sis_accepts(const TemplateAnalysis& a) {
  if (!a.liftable) return false;
  auto fine = [](Classification c) {
    return c == Classification::Irrelevant ||
           c == Classification::RelevantBalanced;
  };
  for (const auto& info : a.instants)
    for (Classification c : info.cls)
      if (!fine(c)) return false;
  for (const auto& info : a.duratives)
    for (size_t c = 0; c < info.classes.classes.size(); ++c)
      if (!(fine(info.st[c]) && fine(info.inv[c]) && fine(info.end[c])))
        return false;
  return true;
}

std::string summarize_failures(const std::vector<Failure>& fs) {
  std::string out;
  for (size_t i = 0; i < fs.size() && i < 4; ++i) {
    if (i) out += "; ";
    out += fs[i].schema + "/" + to_string(fs[i].fragment) + " " +
           to_string(fs[i].classification);
  }
  if (fs.size() > 4) out += "; ...";
  return out;
}

}  // namespace

SynthesisReport synthesize(const CanonicalDomain& domain,
                           const SynthesisOptions& opts) {
  using clock = std::chrono::steady_clock;
  SynthesisReport report;
  report.mode = opts.mode;

  struct Item {
    Template tpl;
    bool via_fix;
  };
  std::deque<Item> queue;
  std::set<std::string> seen;
  for (Template& t : initial_templates(domain)) {
    std::string key = template_key(t);
    if (seen.insert(key).second) queue.push_back({std::move(t), false});
  }

  while (!queue.empty()) {
    // one wave: everything currently queued, checked in parallel
    std::vector<Item> wave(queue.begin(), queue.end());
    queue.clear();

    struct Result {
      TemplateAnalysis analysis;
      Verdict verdict;
      bool vacuous = false;
      bool sis_ok = false;
    };
    std::vector<Result> results(wave.size());
    auto check_started = clock::now();
    auto worker = [&](size_t begin, size_t step) {
      for (size_t i = begin; i < wave.size(); i += step) {
        Result& r = results[i];
        if (vacuous_template(wave[i].tpl)) {
          r.vacuous = true;
          continue;
        }
        r.analysis = analyze_template(domain, wave[i].tpl);
        r.verdict = check_invariance(r.analysis);
        r.sis_ok = sis_accepts(r.analysis);
      }
    };
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j)
        pool.emplace_back(worker, (size_t)j, (size_t)jobs);
      for (std::thread& th : pool) th.join();
    }
    report.seconds_check +=
        std::chrono::duration<double>(clock::now() - check_started).count();

    auto repair_started = clock::now();
    for (size_t i = 0; i < wave.size(); ++i) {
      Item& item = wave[i];
      Result& r = results[i];
      report.checked_count++;
      if (r.vacuous) {
        report.rejected.push_back(
            {item.tpl, item.via_fix, ProofRule::AllStronglySafe,
             "vacuous: singleton instantiations are trivially mutex"});
        continue;
      }
      bool accepted =
          opts.mode == Mode::TIS ? r.verdict.invariant : r.sis_ok;
      if (accepted) {
        report.accepted.push_back(
            {item.tpl, item.via_fix, r.verdict.proof, ""});
        continue;
      }
      std::string summary = r.analysis.liftable
                                ? summarize_failures(r.verdict.failures)
                                : r.analysis.unliftable_reason;
      if (opts.mode == Mode::SIS && r.analysis.liftable && summary.empty())
        summary = "some class is neither irrelevant nor balanced";
      report.rejected.push_back({item.tpl, item.via_fix,
                                 ProofRule::AllStronglySafe, summary});
      // repair every relevant-unbounded failure
      for (const RepairSeed& seed : repair_seeds(r.analysis)) {
        std::vector<Template> fixes = repair(domain, item.tpl, seed, opts);
        for (Template& fixed : fixes) {
          if ((int)fixed.components().size() > opts.component_cap) {
            report.cap_pruned = true;
            continue;
          }
          std::string key = template_key(fixed);
          if (seen.insert(key).second)
            queue.push_back({std::move(fixed), true});
        }
      }
    }
    report.seconds_repair +=
        std::chrono::duration<double>(clock::now() - repair_started).count();
  }

  auto by_key = [](const ReportEntry& a, const ReportEntry& b) {
    return template_key(a.tpl) < template_key(b.tpl);
  };
  std::sort(report.accepted.begin(), report.accepted.end(), by_key);
  std::sort(report.rejected.begin(), report.rejected.end(), by_key);
  for (const ReportEntry& e : report.accepted)
    if (e.via_fix) report.fix_count++;
  return report;
}

std::string SynthesisReport::to_text() const {
  std::string out;
  for (const ReportEntry& e : accepted) {
    out += template_key(e.tpl);
    if (e.via_fix) out += " [fix]";
    out += '\n';
  }
  return out;
}

std::string SynthesisReport::to_json(const CanonicalDomain& domain) const {
  nlohmann::json j;
  j["format"] = "tempinv-format 1";
  j["domain"] = domain.name;
  j["mode"] = mode == Mode::TIS ? "tis" : "sis";
  nlohmann::json acc = nlohmann::json::array();
  for (const ReportEntry& e : accepted) {
    nlohmann::json je;
    je["template"] = template_key(e.tpl);
    je["via_fix"] = e.via_fix;
    if (mode == Mode::TIS) je["proof"] = to_string(e.proof);
    acc.push_back(je);
  }
  j["accepted"] = acc;
  nlohmann::json rej = nlohmann::json::array();
  for (const ReportEntry& e : rejected) {
    nlohmann::json je;
    je["template"] = template_key(e.tpl);
    je["via_fix"] = e.via_fix;
    je["failure"] = e.failure_summary;
    rej.push_back(je);
  }
  j["rejected"] = rej;
  j["stats"] = {{"inv", accepted.size()},
                {"fix", fix_count},
                {"checked", checked_count},
                {"cap_pruned", cap_pruned}};
  // timings stay off the report: output must be byte-identical across runs
  return j.dump(2);
}

}  // namespace tempinv
