#include "tempinv/statevar.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace tempinv {

namespace {

long long gcd_ll(long long a, long long b) { return b ? gcd_ll(b, a % b) : a; }

}  // namespace

Encoding build_state_variables(const std::vector<Template>& invariants,
                               const GroundContext& ctx, EncodingMode mode) {
  Encoding enc;
  std::set<AtomId> pool(ctx.modifiable_atoms().begin(),
                        ctx.modifiable_atoms().end());

  struct Candidate {
    std::string source;
    std::vector<AtomId> atoms;
  };
  std::vector<Candidate> candidates;
  if (mode != EncodingMode::BIS) {
    for (const Template& t : invariants) {
      std::string key = template_key(t);
      for (const TemplateInstance& inst :
           enumerate_instances(t, ctx.universe().objects)) {
        std::vector<AtomId> atoms =
            ctx.to_ids(instantiate(t, inst, ctx.universe()));
        size_t init_weight = 0;
        for (AtomId id : atoms)
          if (std::binary_search(ctx.init_atoms().begin(),
                                 ctx.init_atoms().end(), id))
            ++init_weight;
        std::string source = key + " / (";
        for (size_t i = 0; i < inst.size(); ++i) {
          if (i) source += ' ';
          source += inst[i];
        }
        source += ")";
        if (init_weight >= 2) {
          fprintf(stderr,
                  "warning: instance %s violates the initial-state weight "
                  "assumption; skipped\n",
                  source.c_str());
          continue;
        }
        candidates.push_back({std::move(source), std::move(atoms)});
      }
    }
  }

  // greedy cover, largest remaining instantiation first; ties broken by the
  // deterministic candidate order (template key, then instance objects)
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.source < b.source;
            });
  while (true) {
    size_t best = candidates.size();
    size_t best_size = 1;  // need at least two atoms to beat binaries
    for (size_t i = 0; i < candidates.size(); ++i) {
      size_t n = 0;
      for (AtomId id : candidates[i].atoms) n += pool.count(id);
      if (n > best_size) {
        best = i;
        best_size = n;
      }
    }
    if (best == candidates.size()) break;
    StateVariable var;
    var.id = (int)enc.variables.size();
    var.source = candidates[best].source;
    for (AtomId id : candidates[best].atoms) {
      if (!pool.count(id)) continue;
      pool.erase(id);
      var.values.push_back(ctx.atom(id));
    }
    std::sort(var.values.begin(), var.values.end());
    enc.variables.push_back(std::move(var));
  }

  for (AtomId id : ctx.modifiable_atoms()) {
    if (!pool.count(id)) continue;
    StateVariable var;
    var.id = (int)enc.variables.size();
    var.binary = true;
    var.source = "binary";
    var.values.push_back(ctx.atom(id));
    enc.variables.push_back(std::move(var));
  }

  enc.stats.variable_count = (int)enc.variables.size();
  long long total = 0;
  for (const StateVariable& v : enc.variables)
    total += (long long)v.values.size() + 1;  // null value
  if (enc.variables.empty()) {
    enc.stats.mean_num = 0;
    enc.stats.mean_den = 1;
  } else {
    long long den = (long long)enc.variables.size();
    long long g = gcd_ll(total, den);
    enc.stats.mean_num = total / g;
    enc.stats.mean_den = den / g;
  }
  return enc;
}

namespace {

std::string mean_string(const EncodingStats& s) {
  if (s.mean_den == 1) return std::to_string(s.mean_num);
  return std::to_string(s.mean_num) + "/" + std::to_string(s.mean_den);
}

}  // namespace

std::string emit_text(const Encoding& enc) {
  std::string out = "variables " + std::to_string(enc.stats.variable_count) +
                    " mean " + mean_string(enc.stats) + "\n";
  for (const StateVariable& v : enc.variables) {
    out += "var" + std::to_string(v.id) + ":";
    for (size_t i = 0; i < v.values.size(); ++i) {
      out += i ? " | " : " ";
      out += print_atom(v.values[i]);
    }
    out += " | <none>\n";
  }
  return out;
}

std::string emit_json(const Encoding& enc) {
  nlohmann::json j;
  j["format"] = "tempinv-format 1";
  nlohmann::json vars = nlohmann::json::array();
  for (const StateVariable& v : enc.variables) {
    nlohmann::json jv;
    jv["id"] = v.id;
    jv["source"] = v.source;
    jv["binary"] = v.binary;
    nlohmann::json vals = nlohmann::json::array();
    for (const GroundAtom& a : v.values) vals.push_back(print_atom(a));
    vals.push_back("<none>");
    jv["values"] = vals;
    vars.push_back(jv);
  }
  j["variables"] = vars;
  j["stats"] = {{"count", enc.stats.variable_count},
                {"mean_num", enc.stats.mean_num},
                {"mean_den", enc.stats.mean_den}};
  return j.dump(2);
}

}  // namespace tempinv
