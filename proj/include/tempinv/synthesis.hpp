// Guess-check-repair synthesis of invariant templates, in the full temporal
// mode (decision procedure over the lifted calculus) and the simple mode
// (balanced/irrelevant classes only).
#pragma once

#include <string>
#include <vector>

#include "tempinv/lifted.hpp"

namespace tempinv {

enum class Mode { TIS, SIS };

// One initial template per modifiable relation and counted-position choice
// (a+1 per relation of arity a), deterministic order: relation name, then
// the no-counted component, then counted position ascending.
std::vector<Template> initial_templates(const CanonicalDomain& domain);

struct RepairSeed {
  // the unbounded pure schema
  std::string schema;          // owning schema name
  int durative_index = -1;     // -1 for native instantaneous
  int instant_index = -1;
  FragmentKind fragment = FragmentKind::Native;
  TClass cls;
  Literal relevant;            // its single relevant add effect
};

struct SynthesisOptions {
  Mode mode = Mode::TIS;
  int component_cap = 4;
  bool repair_exhaustive = false;  // try every value-preserving bijection
  int jobs = 1;
};

// Candidate templates repairing one unbounded failure per the component
// extension rule; duplicates and the original are not filtered here.
std::vector<Template> repair(const CanonicalDomain& domain, const Template& t,
                             const RepairSeed& seed,
                             const SynthesisOptions& opts);

struct ReportEntry {
  Template tpl;
  bool via_fix = false;
  ProofRule proof = ProofRule::AllStronglySafe;  // accepted entries
  std::string failure_summary;                   // rejected entries
};

struct SynthesisReport {
  Mode mode = Mode::TIS;
  std::vector<ReportEntry> accepted;  // sorted by template key
  std::vector<ReportEntry> rejected;
  int fix_count = 0;
  int checked_count = 0;
  bool cap_pruned = false;
  double seconds_check = 0;
  double seconds_repair = 0;

  std::string to_text() const;
  std::string to_json(const CanonicalDomain& domain) const;
};

SynthesisReport synthesize(const CanonicalDomain& domain,
                           const SynthesisOptions& opts);

}  // namespace tempinv
