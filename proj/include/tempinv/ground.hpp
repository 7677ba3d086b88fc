// Ground-level semantics: grounding of schemas, happenings under the
// no-moving-targets rule, breadth-first reachability over timed states,
// ground classification, and brute-force template verification. This module
// is the independent oracle for the lifted analysis.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempinv/template.hpp"

namespace tempinv {

using AtomId = int32_t;

// Atom table plus typed ground-atom universe for one (domain, problem) pair.
class GroundContext {
 public:
  GroundContext(const CanonicalDomain& domain, const RawProblem& problem);

  const CanonicalDomain& domain() const { return *domain_; }
  const ObjectUniverse& universe() const { return universe_; }

  AtomId atom_id(const GroundAtom& a) const;  // -1 if outside the universe
  const GroundAtom& atom(AtomId id) const { return atoms_[(size_t)id]; }
  int atom_count() const { return (int)atoms_.size(); }
  std::vector<AtomId> to_ids(const std::vector<GroundAtom>& atoms) const;

  const std::vector<AtomId>& init_atoms() const { return init_; }
  // ids of atoms over modifiable (non-static) relations
  const std::vector<AtomId>& modifiable_atoms() const { return modifiable_; }

 private:
  const CanonicalDomain* domain_;
  ObjectUniverse universe_;
  std::vector<GroundAtom> atoms_;  // sorted; index = id
  std::vector<AtomId> init_;
  std::vector<AtomId> modifiable_;
};

struct GroundAction {
  std::string name;  // schema(obj,...) for diagnostics
  std::vector<AtomId> pre_plus, pre_minus, eff_plus, eff_minus;  // sorted

  bool applicable(const std::vector<AtomId>& state) const;
};

// Instantiates one schema under an injective grounding of its parameters.
// Universally quantified literals sweep every object per quantified variable.
GroundAction ground_action(const InstantaneousSchema& schema,
                           const std::map<std::string, std::string>& grounding,
                           const GroundContext& ctx);

struct GroundDurative {
  std::string name;
  GroundAction st, inv, end;
};

// All typed-consistent injective groundings, pruned to those whose static
// preconditions hold in Init.
struct GroundedInstance {
  std::vector<GroundAction> instantaneous;
  std::vector<GroundDurative> durative;
};
GroundedInstance ground_all(const GroundContext& ctx);

struct TimedState {
  std::vector<AtomId> atoms;  // sorted
  std::vector<int> open;      // sorted durative indices, multiset

  bool operator==(const TimedState&) const = default;
  bool operator<(const TimedState& o) const {
    return atoms != o.atoms ? atoms < o.atoms : open < o.open;
  }
};

struct Event {
  enum class Kind { Instant, Start, End };
  Kind kind;
  int index;  // into instantaneous/durative lists

  bool operator==(const Event&) const = default;
};

std::string print_event(const Event& e, const GroundedInstance& gi);

enum class InapplicableReason { Precondition, Interference, InvViolated };

// Applies one happening. Events and the invariant fragments of actions open
// across the happening must be pairwise non-interfering; invariant
// preconditions of open actions must hold before and after.
std::optional<TimedState> apply_happening(const GroundedInstance& gi,
                                          const TimedState& state,
                                          const std::vector<Event>& events,
                                          InapplicableReason* why = nullptr);

struct SearchBounds {
  int max_happenings = 8;
  int max_simultaneous = 2;
  size_t state_cap = 2'000'000;
};

struct Closure {
  std::vector<TimedState> states;              // index 0 = initial
  std::vector<int> parent;                     // -1 for initial
  std::vector<std::vector<Event>> incoming;    // happening that reached state
  std::vector<int> depth;
  bool capped = false;  // state cap exceeded; closure incomplete
};

Closure reachable_search(const GroundContext& ctx, const GroundedInstance& gi,
                         const SearchBounds& bounds);

enum class GroundClass {
  Unreachable,
  Heavy,
  Irrelevant,
  RelevantBalanced,
  RelevantUnbalanced,
  RelevantBounded,
  RelevantUnbounded,
};

GroundClass classify_ground(const GroundAction& a,
                            const std::vector<AtomId>& instantiation);

struct VerifyResult {
  enum class Status { Holds, Violated, Inconclusive, InitViolation };
  Status status = Status::Holds;
  int depth_explored = 0;
  // Violated:
  std::vector<std::vector<Event>> witness;  // happenings from Init
  TemplateInstance violating_instance;
  // InitViolation:
  TemplateInstance init_instance;
};

VerifyResult verify_template(const Template& t, const GroundContext& ctx,
                             const GroundedInstance& gi,
                             const SearchBounds& bounds);

}  // namespace tempinv
