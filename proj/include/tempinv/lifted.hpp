// Lifted safety calculus: T-classes, pure-schema classification, auxiliary
// durative schemas, matchings between schema pairs, the pairwise isolation
// conditions, and the invariance decision procedure.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempinv/template.hpp"

namespace tempinv {

enum class Classification {
  Unreachable,
  Heavy,
  Irrelevant,
  RelevantBalanced,
  RelevantUnbalanced,
  RelevantBounded,
  RelevantUnbounded,
};

std::string to_string(Classification c);

// Strongly safe at the pure-schema level.
inline bool strongly_safe_class(Classification c) {
  return c == Classification::Unreachable || c == Classification::Irrelevant ||
         c == Classification::RelevantBalanced ||
         c == Classification::RelevantBounded;
}

// One equivalence class of a schema's literals matching the template: all
// literals carry the same argument per partition block.
struct TClass {
  std::vector<Literal> literals;    // sorted
  std::vector<int> component_of;    // per literal, index into template
  std::vector<Arg> signature;       // per block; distinct values

  std::string signature_string() const;
};

// Classes of one schema unit (a native instantaneous schema or a whole
// durative schema). `clean` is false when some literal shares a relation
// with a component but cannot match it soundly (the all-or-nothing grounding
// dichotomy would break); such templates are conservatively rejected.
struct SchemaClasses {
  bool clean = true;
  std::string unclean_reason;
  std::vector<TClass> classes;
};

SchemaClasses t_classes(const LiteralSet& literals, const Template& t);

// Restriction of one fragment to a class.
struct PureSets {
  std::vector<Literal> pre_plus, pre_minus, eff_plus, eff_minus;
};

PureSets restrict_to_class(const InstantaneousSchema& frag, const TClass& cls);

bool class_covers(const std::vector<Literal>& lits,
                  const std::vector<int>& component_of, const Template& t);

Classification classify_pure(const PureSets& p, const TClass& cls,
                             const Template& t);

// Strong safety of one instantaneous schema (native or fragment) given the
// classes of its owning unit.
bool strongly_safe(const InstantaneousSchema& frag, const SchemaClasses& sc,
                   const Template& t);

struct AuxSchema {
  InstantaneousSchema st_star, end_star;
};

AuxSchema make_aux(const DurativeSchema& d);

// Executability of the auxiliary pair on the full literal sets: nothing the
// start certainly or possibly establishes clashes with the end
// preconditions.
bool aux_executable(const AuxSchema& aux);

// Certain reachability / unreachability of the class-restricted auxiliary
// pair. Both claims quantify over every grounding, so on domains with
// constants neither needs to be the other's negation.
bool aux_reachable(const DurativeSchema& d, const AuxSchema& aux,
                   const TClass& cls);
bool aux_certainly_unreachable(const DurativeSchema& d, const AuxSchema& aux,
                               const TClass& cls);

enum class SimplyType { None, A, B, C, D };

SimplyType simply_safe_type(const DurativeSchema& d, const AuxSchema& aux,
                            const TClass& cls, const Template& t);

// A matching between the free arguments of two schema copies (left/right),
// plus constant bindings forced by the template partition.
struct Matching {
  // var name -> joint token; unmatched vars get side-qualified tokens
  std::vector<std::pair<std::string, std::string>> left, right;

  std::string rewrite(int side, const std::string& var) const;
};

// Matching induced by two classes, pairing arguments block by block.
// nullopt when the classes force two distinct constants equal: no coherent
// instance exists, so every pairwise condition holds vacuously for the pair.
std::optional<Matching> class_matching(const TClass& a, const TClass& b);

// All matchings extending `base` over the given parameter lists; every pair
// of adapted groundings corresponds to exactly one of them.
std::vector<Matching> matching_extensions(
    const Matching& base, const std::vector<std::string>& left_params,
    const std::vector<std::string>& right_params);

// Literal comparisons in the joint alphabet. "must" versions hold for every
// adapted grounding; "may" versions for at least one.
bool literals_must_overlap(const Literal& a, int side_a, const Literal& b,
                           int side_b, const Matching& m);
bool literals_may_overlap(const Literal& a, int side_a, const Literal& b,
                          int side_b, const Matching& m);
bool literal_identical(const Literal& a, int side_a, const Literal& b,
                       int side_b, const Matching& m);

// Fails one of the two non-interference conditions under the matching
// (certain intersection: the ground pair interferes for every adapted
// grounding).
bool m_mutex(const InstantaneousSchema& a, const InstantaneousSchema& b,
             const Matching& m);

enum class PairKind { InvEnd, StInv };

// The joint two-step sequence (invariants then ends, or starts then
// invariants) is unreachable from any weight<=1 state.
bool pair_unreachable(PairKind kind, const DurativeSchema& d1,
                      const TClass& l1, const DurativeSchema& d2,
                      const TClass& l2, const Matching& m);

// Analysis of one template against one domain; memoizes classes, pure
// classifications and aux schemas for the decision procedure and repair.
struct TemplateAnalysis {
  struct DurativeInfo {
    int index = 0;
    SchemaClasses classes;
    AuxSchema aux;
    bool executable = false;
    // per class:
    std::vector<Classification> st, inv, end, st_star, end_star;
    std::vector<bool> dangerous;   // pure durative restriction not strongly safe
    std::vector<bool> reachable;   // certainly reachable restricted aux pair
    std::vector<bool> unreachable; // certainly unreachable restricted aux pair
    std::vector<SimplyType> typed;
  };
  struct InstantInfo {
    int index = 0;
    SchemaClasses classes;
    std::vector<Classification> cls;
  };

  const CanonicalDomain* domain = nullptr;
  Template tpl;
  bool liftable = true;
  std::string unliftable_reason;
  std::vector<InstantInfo> instants;
  std::vector<DurativeInfo> duratives;

  bool any_dangerous() const;
};

TemplateAnalysis analyze_template(const CanonicalDomain& domain,
                                  const Template& t);

bool relevant_right_isolated(const TemplateAnalysis& a);
bool relevant_left_isolated(const TemplateAnalysis& a);

// A dangerous start and a second fragment can never run with only
// irrelevant actions in between: either the pair needs combined weight two,
// or the start certainly leaves an atom in the wrong polarity for the
// second fragment and no irrelevant action can flip it back. The
// flipper scan is a unification query over every schema's irrelevant
// classes.
bool strongly_irrelevant_unreachable(const TemplateAnalysis& a,
                                     const InstantaneousSchema& a1,
                                     const TClass& l1,
                                     const InstantaneousSchema& a2,
                                     const TClass& l2, const Matching& m);

bool relevant_non_intertwining(const TemplateAnalysis& a);

enum class ProofRule { AllStronglySafe, TypeA, StarSafety, NonIntertwining };

std::string to_string(ProofRule p);

enum class FragmentKind { Native, Start, Invariant, End };

std::string to_string(FragmentKind k);

struct Failure {
  std::string schema;
  FragmentKind fragment = FragmentKind::Native;
  std::string class_signature;
  Classification classification = Classification::Irrelevant;
  // for RelevantUnbounded: the single relevant add effect
  std::optional<Literal> relevant_literal;
};

struct Verdict {
  bool invariant = false;
  ProofRule proof = ProofRule::AllStronglySafe;
  std::vector<Failure> failures;  // set when not invariant

  std::string to_json(const Template& t) const;
};

Verdict check_invariance(const Template& t, const CanonicalDomain& domain);
Verdict check_invariance(const TemplateAnalysis& analysis);

}  // namespace tempinv
