#include <map>

#include "doctest.h"
#include "test_support.hpp"
#include "tempinv/ground.hpp"

using namespace tempinv;
using namespace tempinv::test;

namespace {

struct Mini {
  CanonicalDomain domain;
  RawProblem problem;
  GroundContext ctx;
  GroundedInstance gi;

  Mini(const std::string& domain_fixture, const std::string& problem_fixture,
       RawDomain raw)
      : domain(canonicalize(raw)),
        problem(parse_problem(read_fixture(problem_fixture), problem_fixture,
                              raw)),
        ctx(domain, problem),
        gi(ground_all(ctx)) {
    (void)domain_fixture;
  }
};

Mini mini_floortile() {
  return Mini("floortile.pddl", "mini_floortile.pddl", raw_floortile());
}

Mini mini_depot() {
  return Mini("depot.pddl", "mini_depot.pddl", raw_depot());
}

const DurativeSchema& find_durative(const CanonicalDomain& d,
                                    const std::string& name) {
  for (const DurativeSchema& s : d.dur_schemas)
    if (s.name == name) return s;
  REQUIRE(false);
  static DurativeSchema none;
  return none;
}

std::vector<AtomId> state_without_open(const GroundContext& ctx) {
  return ctx.init_atoms();
}

// plain state transition ignoring durative bookkeeping
std::vector<AtomId> apply_plain(const std::vector<AtomId>& s,
                                const std::vector<const GroundAction*>& as) {
  std::vector<AtomId> out;
  auto deleted = [&](AtomId id) {
    for (const GroundAction* a : as)
      if (std::binary_search(a->eff_minus.begin(), a->eff_minus.end(), id))
        return true;
    return false;
  };
  for (AtomId id : s)
    if (!deleted(id)) out.push_back(id);
  for (const GroundAction* a : as)
    for (AtomId id : a->eff_plus)
      if (!std::binary_search(out.begin(), out.end(), id)) {
        out.insert(std::lower_bound(out.begin(), out.end(), id), id);
      }
  return out;
}

bool plain_non_interfering(const GroundAction& a, const GroundAction& b) {
  auto disjoint = [](const std::vector<AtomId>& x,
                     const std::vector<AtomId>& y) {
    for (AtomId id : x)
      if (std::binary_search(y.begin(), y.end(), id)) return false;
    return true;
  };
  auto pre_vs = [&](const GroundAction& p, const GroundAction& q) {
    return disjoint(p.pre_plus, q.eff_plus) &&
           disjoint(p.pre_plus, q.eff_minus) &&
           disjoint(p.pre_minus, q.eff_plus) &&
           disjoint(p.pre_minus, q.eff_minus);
  };
  return pre_vs(a, b) && pre_vs(b, a) && disjoint(a.eff_plus, b.eff_minus) &&
         disjoint(b.eff_plus, a.eff_minus);
}

}  // namespace

TEST_CASE("grounding paint-up start expands the routing table") {
  Mini m = mini_floortile();
  const DurativeSchema& pu = find_durative(m.domain, "paint-up");
  std::map<std::string, std::string> gr = {{"r_2", "rbt1"},
                                           {"y_2", "tile2"},
                                           {"x_2", "tile1"},
                                           {"c_2", "black"}};
  GroundAction st = ground_action(pu.st, gr, m.ctx);
  auto id = [&](const std::string& rel, std::vector<std::string> args) {
    AtomId i = m.ctx.atom_id(GroundAtom{rel, std::move(args)});
    REQUIRE(i >= 0);
    return i;
  };
  // typing preconditions are part of the start fragment
  for (AtomId a : {id("robot-at", {"rbt1", "tile1"}), id("clear", {"tile2"}),
                   id("is-robot", {"rbt1"}), id("is-tile", {"tile2"})})
    CHECK(std::binary_search(st.pre_plus.begin(), st.pre_plus.end(), a));
  CHECK(st.eff_minus == std::vector<AtomId>{id("clear", {"tile2"})});
  CHECK(st.eff_plus.empty());
}

TEST_CASE("quantified literals sweep all objects") {
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (q ?x - object)) "
      "(:action a :parameters (?x - object) "
      ":precondition (forall (?z) (p ?z)) :effect (q ?x)))",
      "t");
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(
      "(define (problem pr) (:domain d) (:objects a b c) (:init) "
      "(:goal (and)))",
      "t", raw);
  GroundContext ctx(dom, prob);
  GroundAction ga = ground_action(dom.inst_schemas[0], {{"x_1", "a"}}, ctx);
  CHECK(ga.pre_plus.size() == 3);  // p(a), p(b), p(c)
}

TEST_CASE("non-injective groundings are rejected") {
  Mini m = mini_floortile();
  const DurativeSchema& pu = find_durative(m.domain, "paint-up");
  std::map<std::string, std::string> gr = {{"r_2", "rbt1"},
                                           {"y_2", "tile1"},
                                           {"x_2", "tile1"},
                                           {"c_2", "black"}};
  CHECK_THROWS_AS(ground_action(pu.st, gr, m.ctx), std::invalid_argument);
}

TEST_CASE("empty-effect events leave the logical state unchanged") {
  Mini m = mini_depot();
  // drop/load starts have no preconditions or effects, but need an open
  // action; use a start of lift instead: find an applicable start
  TimedState s;
  s.atoms = state_without_open(m.ctx);
  for (size_t i = 0; i < m.gi.durative.size(); ++i) {
    if (!m.gi.durative[i].st.applicable(s.atoms)) continue;
    if (!m.gi.durative[i].inv.applicable(s.atoms)) continue;
    if (!m.gi.durative[i].st.eff_plus.empty()) continue;
    if (!m.gi.durative[i].st.eff_minus.empty()) continue;
    auto next =
        apply_happening(m.gi, s, {{Event::Kind::Start, (int)i}}, nullptr);
    REQUIRE(next.has_value());
    CHECK(next->atoms == s.atoms);
    CHECK(next->open.size() == 1);
    return;
  }
}

TEST_CASE("ending a durative action whose invariant fails is rejected") {
  Mini m = mini_floortile();
  TimedState s;
  s.atoms = state_without_open(m.ctx);
  // open paint-up(rbt1,tile2,tile1,black), then break robot-has by force
  int pu = -1;
  for (size_t i = 0; i < m.gi.durative.size(); ++i)
    if (m.gi.durative[i].name == "paint-up(rbt1,tile2,tile1,black)")
      pu = (int)i;
  REQUIRE(pu >= 0);
  auto started = apply_happening(m.gi, s, {{Event::Kind::Start, pu}}, nullptr);
  REQUIRE(started.has_value());
  TimedState broken = *started;
  AtomId rh = m.ctx.atom_id(GroundAtom{"robot-has", {"rbt1", "black"}});
  broken.atoms.erase(
      std::find(broken.atoms.begin(), broken.atoms.end(), rh));
  InapplicableReason why;
  auto ended = apply_happening(m.gi, broken, {{Event::Kind::End, pu}}, &why);
  CHECK(!ended.has_value());
  CHECK(why == InapplicableReason::InvViolated);
}

TEST_CASE("an action mutex with an open invariant cannot happen in between") {
  Mini m = mini_depot();
  TimedState s;
  s.atoms = state_without_open(m.ctx);
  // open lift then drop of crate1; a second lift deleting clear(crate2)
  // interferes with drop's over-all condition
  int lift1 = -1, drop1 = -1, lift2 = -1;
  for (size_t i = 0; i < m.gi.durative.size(); ++i) {
    const std::string& n = m.gi.durative[i].name;
    if (n == "lift(hoist1,crate1,crate2,depot1)") lift1 = (int)i;
    if (n == "drop(hoist1,crate1,crate2,depot1)") drop1 = (int)i;
    if (n == "lift(hoist1,crate2,crate1,depot1)") lift2 = (int)i;
  }
  REQUIRE(lift1 >= 0);
  REQUIRE(drop1 >= 0);
  REQUIRE(lift2 >= 0);
  auto s1 = apply_happening(m.gi, s, {{Event::Kind::Start, lift1}}, nullptr);
  REQUIRE(s1.has_value());
  auto s2 =
      apply_happening(m.gi, *s1, {{Event::Kind::End, lift1}}, nullptr);
  REQUIRE(s2.has_value());
  auto s3 =
      apply_happening(m.gi, *s2, {{Event::Kind::Start, drop1}}, nullptr);
  REQUIRE(s3.has_value());
  InapplicableReason why;
  auto clash =
      apply_happening(m.gi, *s3, {{Event::Kind::Start, lift2}}, &why);
  CHECK(!clash.has_value());
  CHECK(why == InapplicableReason::Interference);
}

TEST_CASE("reachable search finds painted(tile2,black) in the mini problem") {
  Mini m = mini_floortile();
  SearchBounds bounds;
  Closure cl = reachable_search(m.ctx, m.gi, bounds);
  CHECK(!cl.capped);
  AtomId target = m.ctx.atom_id(GroundAtom{"painted", {"tile2", "black"}});
  REQUIRE(target >= 0);
  bool found = false;
  for (const TimedState& s : cl.states)
    if (std::binary_search(s.atoms.begin(), s.atoms.end(), target))
      found = true;
  CHECK(found);
}

TEST_CASE("search bounds: depth zero keeps only the initial state") {
  Mini m = mini_floortile();
  SearchBounds bounds;
  bounds.max_happenings = 0;
  Closure cl = reachable_search(m.ctx, m.gi, bounds);
  CHECK(cl.states.size() == 1);
}

TEST_CASE("no applicable actions: closure is the initial state") {
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (q ?x - object)) "
      "(:action a :parameters (?x - object) :precondition (q ?x) "
      ":effect (p ?x)))",
      "t");
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(
      "(define (problem pr) (:domain d) (:objects a) (:init) (:goal (and)))",
      "t", raw);
  GroundContext ctx(dom, prob);
  GroundedInstance gi = ground_all(ctx);
  Closure cl = reachable_search(ctx, gi, SearchBounds{});
  CHECK(cl.states.size() == 1);
}

TEST_CASE("ground classification follows the case analysis") {
  // two colors so the painted sweep is larger than one action's effects
  RawDomain raw = raw_floortile();
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(
      "(define (problem p) (:domain floor-tile) "
      "(:objects rbt1 - robot tile1 tile2 - tile black red - color) "
      "(:init (robot-at rbt1 tile1) (up tile2 tile1) (clear tile2) "
      "(robot-has rbt1 red) (available-color black)) (:goal (and)))",
      "t", raw);
  GroundContext ctx(dom, prob);
  Template painted = Template::single({"painted", 2, 1});
  std::vector<AtomId> inst2 =
      ctx.to_ids(instantiate(painted, {"tile2"}, ctx.universe()));
  std::vector<AtomId> inst1 =
      ctx.to_ids(instantiate(painted, {"tile1"}, ctx.universe()));
  REQUIRE(inst2.size() == 2);
  const DurativeSchema& pu = find_durative(dom, "paint-up");
  GroundAction end = ground_action(pu.end,
                                   {{"r_2", "rbt1"},
                                    {"y_2", "tile2"},
                                    {"x_2", "tile1"},
                                    {"c_2", "black"}},
                                   ctx);
  CHECK(classify_ground(end, inst2) == GroundClass::RelevantUnbounded);
  CHECK(classify_ground(end, inst1) == GroundClass::Irrelevant);

  // empty restriction
  GroundAction none;
  CHECK(classify_ground(none, inst1) == GroundClass::Irrelevant);

  // two instantiation atoms in the positive preconditions
  GroundAction unre;
  unre.pre_plus = inst2;
  CHECK(classify_ground(unre, inst2) == GroundClass::Unreachable);
}

TEST_CASE("serializability: joint application equals both serial orders") {
  int cases = 0;
  for (Mini m : {mini_floortile(), mini_depot()}) {
    SearchBounds bounds;
    bounds.max_happenings = 4;
    Closure cl = reachable_search(m.ctx, m.gi, bounds);
    std::vector<const GroundAction*> all;
    for (const GroundAction& a : m.gi.instantaneous) all.push_back(&a);
    for (const GroundDurative& d : m.gi.durative) {
      all.push_back(&d.st);
      all.push_back(&d.inv);
      all.push_back(&d.end);
    }
    for (const TimedState& s : cl.states) {
      for (size_t i = 0; i < all.size(); ++i) {
        if (!all[i]->applicable(s.atoms)) continue;
        for (size_t j = i + 1; j < all.size(); ++j) {
          if (!all[j]->applicable(s.atoms)) continue;
          if (!plain_non_interfering(*all[i], *all[j])) continue;
          std::vector<AtomId> joint = apply_plain(s.atoms, {all[i], all[j]});
          std::vector<AtomId> ij =
              apply_plain(apply_plain(s.atoms, {all[i]}), {all[j]});
          std::vector<AtomId> ji =
              apply_plain(apply_plain(s.atoms, {all[j]}), {all[i]});
          REQUIRE(joint == ij);
          REQUIRE(joint == ji);
          ++cases;
        }
      }
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("verify: accepted templates hold on the mini problem") {
  Mini m = mini_floortile();
  Template t = parse_template_key(m.domain, "{robot-at 0 [1]}");
  VerifyResult res = verify_template(t, m.ctx, m.gi, SearchBounds{});
  CHECK(res.status == VerifyResult::Status::Holds);
}

TEST_CASE("verify: a template over a static relation holds trivially") {
  Mini m = mini_floortile();
  Template t = Template::single({"up", 2, 0});
  VerifyResult res = verify_template(t, m.ctx, m.gi, SearchBounds{});
  CHECK(res.status == VerifyResult::Status::Holds);
}

TEST_CASE("verify: the mutated domain violates the repaired template") {
  RawDomain raw =
      parse_domain(read_fixture("floortile_bug.pddl"), "floortile_bug.pddl");
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(read_fixture("mini_floortile.pddl"),
                                  "mini_floortile.pddl", raw);
  GroundContext ctx(dom, prob);
  GroundedInstance gi = ground_all(ctx);
  Template t = parse_template_key(dom, "{clear 0, painted 0 [1]}");
  VerifyResult res = verify_template(t, ctx, gi, SearchBounds{});
  REQUIRE(res.status == VerifyResult::Status::Violated);
  CHECK(res.witness.size() <= 4);
}

TEST_CASE("verify: initial-state weight violations are reported") {
  RawDomain raw = raw_floortile();
  CanonicalDomain dom = canonicalize(raw);
  RawProblem prob = parse_problem(
      "(define (problem p) (:domain floor-tile) "
      "(:objects r - robot t1 t2 - tile c - color) "
      "(:init (clear t1) (clear t2)) (:goal (and)))",
      "t", raw);
  GroundContext ctx(dom, prob);
  GroundedInstance gi = ground_all(ctx);
  Template t = parse_template_key(dom, "{clear [0]}");
  VerifyResult res = verify_template(t, ctx, gi, SearchBounds{});
  CHECK(res.status == VerifyResult::Status::InitViolation);
}
