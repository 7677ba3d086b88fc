// Randomized cross-check: every template the synthesis accepts on a random
// domain must keep weight at most one across the oracle's reachable closure
// of a random problem (whenever the initial state satisfies the standing
// weight assumption).
#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "tempinv/ground.hpp"
#include "tempinv/synthesis.hpp"

using namespace tempinv;
using namespace tempinv::test;

namespace {

struct Rng {
  std::mt19937 gen;
  explicit Rng(uint32_t seed) : gen(seed) {}
  int pick(int n) { return (int)(gen() % (uint32_t)n); }
  bool chance(int percent) { return pick(100) < percent; }
};

struct Rel {
  std::string name;
  int arity;
};

const std::vector<Rel> kRels = {{"p1", 1}, {"p2", 1}, {"p3", 2}, {"p4", 2}};

std::string random_atom(Rng& rng, const std::vector<std::string>& vars) {
  const Rel& r = kRels[(size_t)rng.pick((int)kRels.size())];
  std::string out = "(" + r.name;
  for (int i = 0; i < r.arity; ++i) {
    if (rng.chance(15))
      out += rng.chance(50) ? " k1" : " k2";  // domain constants
    else
      out += " " + vars[(size_t)rng.pick((int)vars.size())];
  }
  return out + ")";
}

// occasionally a universally quantified condition or effect literal
std::string random_literal(Rng& rng, const std::vector<std::string>& vars,
                           bool negated) {
  if (rng.chance(10)) {
    std::vector<std::string> wide = vars;
    wide.push_back("?z");
    std::string atom = random_atom(rng, wide);
    if (atom.find("?z") == std::string::npos) {
      if (negated) atom = "(not " + atom + ")";
      return atom;
    }
    std::string body = negated ? "(not " + atom + ")" : atom;
    return "(forall (?z) " + body + ")";
  }
  std::string atom = random_atom(rng, vars);
  if (negated) atom = "(not " + atom + ")";
  return atom;
}

std::string random_set(Rng& rng, const std::vector<std::string>& vars,
                       const std::string& wrap, bool negated, int max_n) {
  std::string out;
  int n = rng.pick(max_n + 1);
  for (int i = 0; i < n; ++i) {
    std::string atom = random_literal(rng, vars, negated);
    if (!wrap.empty()) atom = "(" + wrap + " " + atom + ")";
    out += " " + atom;
  }
  return out;
}

std::string random_domain(Rng& rng, int id) {
  std::ostringstream d;
  d << "(define (domain fuzz" << id << ") (:constants k1 k2) (:predicates";
  for (const Rel& r : kRels) {
    d << " (" << r.name;
    for (int i = 0; i < r.arity; ++i) d << " ?x" << i << " - object";
    d << ")";
  }
  d << ")";
  int actions = 2 + rng.pick(2);
  for (int a = 0; a < actions; ++a) {
    std::vector<std::string> vars = {"?a", "?b"};
    bool durative = a > 0 || rng.chance(80);
    if (!durative) {
      d << " (:action act" << a << " :parameters (?a - object ?b - object)"
        << " :precondition (and" << random_set(rng, vars, "", false, 2)
        << random_set(rng, vars, "", true, 1) << ")"
        << " :effect (and" << random_set(rng, vars, "", false, 2)
        << random_set(rng, vars, "", true, 2) << "))";
      continue;
    }
    // at least one start precondition keeps the search from exploding
    d << " (:durative-action act" << a
      << " :parameters (?a - object ?b - object)"
      << " :duration (= ?duration 1)"
      << " :condition (and (at start " << random_atom(rng, vars) << ")"
      << random_set(rng, vars, "at start", false, 1)
      << random_set(rng, vars, "over all", false, 2)
      << random_set(rng, vars, "at end", false, 1) << ")"
      << " :effect (and" << random_set(rng, vars, "at start", false, 1)
      << random_set(rng, vars, "at end", false, 2);
    int dels = 1 + rng.pick(2);
    for (int i = 0; i < dels; ++i) {
      std::string tag = rng.chance(60) ? "at start" : "at end";
      d << " (" << tag << " " << random_literal(rng, vars, true) << ")";
    }
    d << "))";
  }
  d << ")";
  return d.str();
}

std::string random_problem(Rng& rng, int id) {
  std::ostringstream p;
  p << "(define (problem fz" << id << ") (:domain fuzz" << id << ")"
    << " (:objects o1 o2 o3)"
    << " (:init";
  std::vector<std::string> objs = {"o1", "o2", "o3"};
  int atoms = 3 + rng.pick(4);
  for (int i = 0; i < atoms; ++i) {
    const Rel& r = kRels[(size_t)rng.pick((int)kRels.size())];
    p << " (" << r.name;
    for (int k = 0; k < r.arity; ++k)
      p << " " << objs[(size_t)rng.pick((int)objs.size())];
    p << ")";
  }
  p << ") (:goal (and)))";
  return p.str();
}

}  // namespace

TEST_CASE("fuzz: accepted templates are never violated in the closure") {
  Rng rng(20240811);
  int budget = 60;
  if (const char* env = std::getenv("TEMPINV_FUZZ_DOMAINS"))
    budget = std::max(1, atoi(env));
  int domains = 0, checked = 0, live = 0, init_skips = 0;
  while (domains < budget) {
    int id = domains;
    std::string dtext = random_domain(rng, id);
    RawDomain raw;
    CanonicalDomain dom;
    try {
      raw = parse_domain(dtext, "fuzz");
      dom = canonicalize(raw);
    } catch (const CanonError&) {
      // illegal durative draw; take another
      continue;
    }
    ++domains;
    RawProblem prob = parse_problem(random_problem(rng, id), "fuzz", raw);
    GroundContext ctx(dom, prob);
    GroundedInstance gi = ground_all(ctx);
    SearchBounds bounds;
    bounds.max_happenings = 4;
    bounds.state_cap = 20000;  // a capped closure still only holds
                               // reachable states
    Closure cl = reachable_search(ctx, gi, bounds);

    for (Mode mode : {Mode::TIS, Mode::SIS}) {
      SynthesisOptions opts;
      opts.mode = mode;
      SynthesisReport report = synthesize(dom, opts);
      for (const ReportEntry& e : report.accepted) {
        ++checked;
        for (const TemplateInstance& inst :
             enumerate_instances(e.tpl, ctx.universe().objects)) {
          std::vector<AtomId> atoms =
              ctx.to_ids(instantiate(e.tpl, inst, ctx.universe()));
          auto weight = [&](const std::vector<AtomId>& state) {
            size_t n = 0;
            for (AtomId id2 : atoms)
              if (std::binary_search(state.begin(), state.end(), id2)) ++n;
            return n;
          };
          if (weight(ctx.init_atoms()) >= 2) {
            ++init_skips;  // standing assumption fails for this instance
            continue;
          }
          ++live;
          for (const TimedState& s : cl.states) {
            if (weight(s.atoms) >= 2) {
              printf("fuzz counterexample, domain:\n%s\ntemplate %s\n",
                     dtext.c_str(), template_key(e.tpl).c_str());
              REQUIRE(false);
            }
          }
        }
      }
    }
  }
  // the harness must actually exercise acceptances
  CHECK(checked > 50);
  CHECK(live > 100);
  MESSAGE("fuzz: ", domains, " domains, ", checked, " accepted templates, ",
          live, " live instances, ", init_skips, " init skips");
}
