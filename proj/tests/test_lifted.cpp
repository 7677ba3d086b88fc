#include <map>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "tempinv/lifted.hpp"
#include "tempinv/synthesis.hpp"

using namespace tempinv;
using namespace tempinv::test;

namespace {

const DurativeSchema& find_durative(const CanonicalDomain& d,
                                    const std::string& name) {
  for (const DurativeSchema& s : d.dur_schemas)
    if (s.name == name) return s;
  REQUIRE(false);
  static DurativeSchema none;
  return none;
}

Template t_ft() {
  return Template::make(
      {{"robot-at", 2, 0}, {"painted", 2, 1}, {"clear", 1, 1}},
      {{{0, 1}, {1, 0}, {2, 0}}});
}

Template t_dp() {
  return Template::make({{"lifting", 2, 1}, {"available", 1, 1}},
                        {{{0, 0}, {1, 0}}});
}

bool class_has(const TClass& cls, const std::string& rel) {
  for (const Literal& l : cls.literals)
    if (l.relation == rel) return true;
  return false;
}

const TClass& class_with(const SchemaClasses& sc, const std::string& rel) {
  for (const TClass& cls : sc.classes)
    if (class_has(cls, rel)) return cls;
  REQUIRE(false);
  static TClass none;
  return none;
}

Matching mk_matching(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Matching m;
  for (size_t i = 0; i < pairs.size(); ++i) {
    std::string tok = "j:t" + std::to_string(i);
    m.left.emplace_back(pairs[i].first, tok);
    m.right.emplace_back(pairs[i].second, tok);
  }
  return m;
}

InstantaneousSchema mk_schema(const std::string& name,
                              std::vector<Literal> pre_plus,
                              std::vector<Literal> pre_minus,
                              std::vector<Literal> eff_plus,
                              std::vector<Literal> eff_minus) {
  InstantaneousSchema s;
  s.name = name;
  for (Literal& l : pre_plus) s.pre_plus.insert(std::move(l));
  for (Literal& l : pre_minus) s.pre_minus.insert(std::move(l));
  for (Literal& l : eff_plus) s.eff_plus.insert(std::move(l));
  for (Literal& l : eff_minus) s.eff_minus.insert(std::move(l));
  return s;
}

Literal lit1(const std::string& rel, const std::string& v) {
  Literal l;
  l.relation = rel;
  l.args.push_back(Arg::free_var(v));
  return l;
}

}  // namespace

TEST_CASE("t-classes of paint-up against the three-component template") {
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  Template t = t_ft();

  // start fragment alone: robot-at and clear are not coupled
  SchemaClasses st_only = t_classes(pu.st.all_literals(), t);
  REQUIRE(st_only.clean);
  REQUIRE(st_only.classes.size() == 2);

  // the whole schema: painted(y,c) joins clear(y)
  SchemaClasses full = t_classes(pu.all_literals(), t);
  REQUIRE(full.clean);
  REQUIRE(full.classes.size() == 2);
  const TClass& l1 = class_with(full, "robot-at");
  const TClass& l2 = class_with(full, "clear");
  CHECK(l1.literals.size() == 1);
  CHECK(l2.literals.size() == 2);
  CHECK(class_has(l2, "painted"));

  // a schema with no matching literals
  const DurativeSchema& cc = find_durative(d, "change-color");
  CHECK(t_classes(cc.all_literals(), t).classes.empty());
}

TEST_CASE("t-class blocks partition the matching literals") {
  for (const CanonicalDomain& d : {floortile(), depot()}) {
    SynthesisOptions opts;
    for (const Template& t : initial_templates(d)) {
      for (const DurativeSchema& s : d.dur_schemas) {
        SchemaClasses sc = t_classes(s.all_literals(), t);
        if (!sc.clean) continue;
        std::set<Literal> seen;
        size_t total = 0;
        for (const TClass& cls : sc.classes) {
          total += cls.literals.size();
          for (const Literal& l : cls.literals) CHECK(seen.insert(l).second);
          // representative independence: every literal reproduces the
          // class signature through its own component
          for (size_t i = 0; i < cls.literals.size(); ++i) {
            int ci = cls.component_of[i];
            for (int b = 0; b < t.k(); ++b) {
              int pos = t.position_in_block(b, ci);
              CHECK(cls.literals[i].args[(size_t)pos] ==
                    cls.signature[(size_t)b]);
            }
          }
        }
        CHECK(seen.size() == total);
      }
    }
    (void)opts;
  }
}

TEST_CASE("pure schema classification on the running example") {
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  Template t = t_ft();
  SchemaClasses sc = t_classes(pu.all_literals(), t);
  const TClass& l1 = class_with(sc, "robot-at");
  const TClass& l2 = class_with(sc, "clear");

  CHECK(classify_pure(restrict_to_class(pu.st, l1), l1, t) ==
        Classification::Irrelevant);
  CHECK(classify_pure(restrict_to_class(pu.st, l2), l2, t) ==
        Classification::Irrelevant);
  CHECK(classify_pure(restrict_to_class(pu.end, l2), l2, t) ==
        Classification::RelevantUnbounded);
  // all-empty restriction
  PureSets empty;
  CHECK(classify_pure(empty, l1, t) == Classification::Irrelevant);
}

TEST_CASE("strong safety of paint-up fragments") {
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  Template t = t_ft();
  SchemaClasses sc = t_classes(pu.all_literals(), t);
  CHECK(strongly_safe(pu.st, sc, t));
  CHECK(!strongly_safe(pu.end, sc, t));
  // vacuous: no matching literals anywhere
  const DurativeSchema& cc = find_durative(d, "change-color");
  SchemaClasses cc_sc = t_classes(cc.all_literals(), t);
  CHECK(strongly_safe(cc.st, cc_sc, t));
}

TEST_CASE("auxiliary schema construction") {
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  AuxSchema aux = make_aux(pu);
  // start gains the invariant preconditions it does not add itself
  for (const Literal& l : pu.inv.pre_plus)
    CHECK(aux.st_star.pre_plus.contains(l));
  for (const Literal& l : pu.st.pre_plus)
    CHECK(aux.st_star.pre_plus.contains(l));
  CHECK(aux.st_star.eff_minus == pu.st.eff_minus);
  // end gains all invariant preconditions
  for (const Literal& l : pu.inv.pre_plus)
    CHECK(aux.end_star.pre_plus.contains(l));
  CHECK(aux.end_star.eff_plus == pu.end.eff_plus);

  // empty invariant: the auxiliary pair is the original pair
  CanonicalDomain dp = depot();
  const DurativeSchema& drive = find_durative(dp, "drive");
  AuxSchema daux = make_aux(drive);
  CHECK(daux.st_star.pre_plus == drive.st.pre_plus);
  CHECK(daux.end_star.pre_plus == drive.end.pre_plus);

  // depot drop: end* requires every over-all condition
  const DurativeSchema& drop = find_durative(dp, "drop");
  AuxSchema drop_aux = make_aux(drop);
  for (const char* rel : {"at", "clear", "lifting"}) {
    bool found = false;
    for (const Literal& l : drop_aux.end_star.pre_plus)
      if (l.relation == rel) found = true;
    CHECK(found);
  }
}

TEST_CASE("auxiliary executability") {
  CanonicalDomain d = floortile();
  CHECK(aux_executable(make_aux(find_durative(d, "paint-up"))));
  for (const DurativeSchema& s : d.dur_schemas)
    CHECK(aux_executable(make_aux(s)));
  for (const DurativeSchema& s : depot().dur_schemas)
    CHECK(aux_executable(make_aux(s)));

  // forced violation: the start adds what the end requires false
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (q ?x - object)) "
      "(:durative-action a :parameters (?x - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at end (not (q ?x)))) "
      ":effect (and (at start (q ?x)) (at end (p ?x)))))",
      "t");
  CanonicalDomain bad = canonicalize(raw);
  CHECK(!aux_executable(make_aux(bad.dur_schemas[0])));
}

TEST_CASE("auxiliary reachability") {
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  Template t = t_ft();
  SchemaClasses sc = t_classes(pu.all_literals(), t);
  AuxSchema aux = make_aux(pu);
  CHECK(aux_reachable(pu, aux, class_with(sc, "clear")));
  CHECK(aux_reachable(pu, aux, class_with(sc, "robot-at")));

  // start and end requiring two distinct template atoms is unreachable
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (g ?x - object)) "
      "(:durative-action a :parameters (?x - object ?y - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at start (p ?x)) (at end (p ?y))) "
      ":effect (and (at end (g ?x)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  Template tp = Template::single({"p", 1, 0});  // one counted component
  const DurativeSchema& a = dd.dur_schemas[0];
  SchemaClasses asc = t_classes(a.all_literals(), tp);
  REQUIRE(asc.classes.size() == 1);  // k = 0: both p-literals couple
  CHECK(!aux_reachable(a, make_aux(a), asc.classes[0]));
}

TEST_CASE("simply safe types on the running examples") {
  CanonicalDomain d = floortile();
  Template t = t_ft();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  SchemaClasses pu_sc = t_classes(pu.all_literals(), t);
  AuxSchema pu_aux = make_aux(pu);
  CHECK(simply_safe_type(pu, pu_aux, class_with(pu_sc, "painted"), t) ==
        SimplyType::A);
  // up: both classes pair robot-at with clear and are type (a)
  const DurativeSchema& up = find_durative(d, "up");
  SchemaClasses up_sc = t_classes(up.all_literals(), t);
  AuxSchema up_aux = make_aux(up);
  REQUIRE(up_sc.classes.size() == 2);
  for (const TClass& cls : up_sc.classes)
    CHECK(simply_safe_type(up, up_aux, cls, t) == SimplyType::A);

  // a strongly safe end* fragment is not simply safe of any type
  CanonicalDomain dp = depot();
  const DurativeSchema& drop = find_durative(dp, "drop");
  SchemaClasses drop_sc = t_classes(drop.all_literals(), t_dp());
  REQUIRE(drop_sc.classes.size() == 1);
  CHECK(simply_safe_type(drop, make_aux(drop), drop_sc.classes[0], t_dp()) ==
        SimplyType::None);
}

TEST_CASE("class matching pairs block arguments") {
  CanonicalDomain dp = depot();
  Template t = t_dp();
  const DurativeSchema& lift = find_durative(dp, "lift");
  const DurativeSchema& drop = find_durative(dp, "drop");
  SchemaClasses lc = t_classes(lift.all_literals(), t);
  SchemaClasses dc = t_classes(drop.all_literals(), t);
  REQUIRE(lc.classes.size() == 1);
  REQUIRE(dc.classes.size() == 1);
  std::optional<Matching> m = class_matching(lc.classes[0], dc.classes[0]);
  REQUIRE(m.has_value());
  // the hoist arguments are paired: x_2 (lift) with x_3 (drop)
  CHECK(m->rewrite(0, "x_2") == m->rewrite(1, "x_3"));
  CHECK(m->rewrite(0, "y_2") != m->rewrite(1, "y_3"));

  // same class on both sides: shared arguments map to the same token
  std::optional<Matching> self = class_matching(lc.classes[0], lc.classes[0]);
  REQUIRE(self.has_value());
  CHECK(self->rewrite(0, "x_2") == self->rewrite(1, "x_2"));
  CHECK(self->rewrite(0, "y_2") != self->rewrite(1, "y_2"));

  // distinct constants at an equivalent position: no coherent instance
  TClass c1, c2;
  c1.signature = {Arg::constant("a")};
  c2.signature = {Arg::constant("b")};
  CHECK(!class_matching(c1, c2).has_value());
}

TEST_CASE("matched mutex detection") {
  InstantaneousSchema a =
      mk_schema("a", {}, {}, {lit1("p", "v1")}, {});
  InstantaneousSchema b =
      mk_schema("b", {}, {}, {}, {lit1("p", "v2")});
  CHECK(m_mutex(a, b, mk_matching({{"v1", "v2"}})));
  CHECK(!m_mutex(a, b, mk_matching({})));

  // lift and drop invariants carry no effects: never mutex
  CanonicalDomain dp = depot();
  const DurativeSchema& lift = find_durative(dp, "lift");
  const DurativeSchema& drop = find_durative(dp, "drop");
  SchemaClasses lc = t_classes(lift.all_literals(), t_dp());
  SchemaClasses dc = t_classes(drop.all_literals(), t_dp());
  Matching m = *class_matching(lc.classes[0], dc.classes[0]);
  CHECK(!m_mutex(lift.inv, drop.inv, m));
}

TEST_CASE("mutex is monotone under larger matchings") {
  // property: for every matching and superset, mutex(m) implies mutex(m')
  std::vector<InstantaneousSchema> schemas;
  Literal pv1 = lit1("p", "v1");
  Literal pv2 = lit1("p", "v2");
  Literal qv1 = lit1("q", "v1");
  Literal qw1 = lit1("q", "w1");
  Literal pw1 = lit1("p", "w1");
  Literal pw2 = lit1("p", "w2");
  schemas.push_back(mk_schema("s0", {pv1}, {}, {qv1}, {}));
  schemas.push_back(mk_schema("s1", {}, {}, {pv1, qv1}, {}));
  schemas.push_back(mk_schema("s2", {pv1}, {pv2}, {}, {qv1}));
  std::vector<InstantaneousSchema> rights;
  rights.push_back(mk_schema("r0", {pw1}, {}, {}, {pw2}));
  rights.push_back(mk_schema("r1", {}, {}, {qw1}, {pw1}));
  rights.push_back(mk_schema("r2", {qw1}, {}, {pw1}, {}));

  std::vector<std::pair<std::string, std::string>> all_pairs = {
      {"v1", "w1"}, {"v1", "w2"}, {"v2", "w1"}, {"v2", "w2"}};
  // enumerate injective matchings as subsets of all_pairs
  for (size_t bits = 0; bits < 16; ++bits) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::set<std::string> ls, rs;
    bool ok = true;
    for (size_t i = 0; i < 4; ++i)
      if (bits & (1u << i)) {
        if (!ls.insert(all_pairs[i].first).second) ok = false;
        if (!rs.insert(all_pairs[i].second).second) ok = false;
        pairs.push_back(all_pairs[i]);
      }
    if (!ok) continue;
    for (size_t bits2 = 0; bits2 < 16; ++bits2) {
      if ((bits & bits2) != bits) continue;  // not a superset
      std::vector<std::pair<std::string, std::string>> pairs2;
      std::set<std::string> ls2, rs2;
      bool ok2 = true;
      for (size_t i = 0; i < 4; ++i)
        if (bits2 & (1u << i)) {
          if (!ls2.insert(all_pairs[i].first).second) ok2 = false;
          if (!rs2.insert(all_pairs[i].second).second) ok2 = false;
          pairs2.push_back(all_pairs[i]);
        }
      if (!ok2) continue;
      // joint tokens must be consistent between m and m'
      Matching small, big;
      for (auto& pr : pairs) {
        std::string tok = "j:" + pr.first + pr.second;
        small.left.emplace_back(pr.first, tok);
        small.right.emplace_back(pr.second, tok);
      }
      for (auto& pr : pairs2) {
        std::string tok = "j:" + pr.first + pr.second;
        big.left.emplace_back(pr.first, tok);
        big.right.emplace_back(pr.second, tok);
      }
      for (const InstantaneousSchema& a : schemas)
        for (const InstantaneousSchema& b : rights)
          if (m_mutex(a, b, small)) CHECK(m_mutex(a, b, big));
    }
  }
}

TEST_CASE("pair unreachability") {
  // two schemas each requiring a distinct simple template atom at inv
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (g ?x - object)) "
      "(:durative-action a :parameters (?x - object) "
      ":duration (= ?duration 1) "
      ":condition (and (over all (p ?x))) "
      ":effect (and (at end (g ?x)))) "
      "(:durative-action b :parameters (?y - object) "
      ":duration (= ?duration 1) "
      ":condition (and (over all (p ?y))) "
      ":effect (and (at end (g ?y)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  Template tp = Template::single({"p", 1, 1});  // fixed argument
  const DurativeSchema& a = dd.dur_schemas[0];
  const DurativeSchema& b = dd.dur_schemas[1];
  SchemaClasses ac = t_classes(a.all_literals(), tp);
  SchemaClasses bc = t_classes(b.all_literals(), tp);
  REQUIRE(ac.classes.size() == 1);
  REQUIRE(bc.classes.size() == 1);
  // distinct instances: the matching is empty only if classes share no block;
  // here each class has one block, so M pairs x with y. Two distinct atoms
  // need distinct gamma-objects: use two different classes of one schema
  // instead; with the same block the atoms merge, weight 1.
  Matching m = *class_matching(ac.classes[0], bc.classes[0]);
  CHECK(!pair_unreachable(PairKind::InvEnd, a, ac.classes[0], b,
                          bc.classes[0], m));

  // forced unreachability via condition (i): inv requires p, end requires
  // (not p)
  RawDomain raw2 = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (g ?x - object)) "
      "(:durative-action a :parameters (?x - object) "
      ":duration (= ?duration 1) "
      ":condition (and (over all (p ?x))) "
      ":effect (and (at end (g ?x)))) "
      "(:durative-action b :parameters (?y - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at end (not (p ?y)))) "
      ":effect (and (at end (g ?y)))))",
      "t");
  CanonicalDomain dd2 = canonicalize(raw2);
  const DurativeSchema& a2 = dd2.dur_schemas[0];
  const DurativeSchema& b2 = dd2.dur_schemas[1];
  SchemaClasses ac2 = t_classes(a2.all_literals(), tp);
  SchemaClasses bc2 = t_classes(b2.all_literals(), tp);
  Matching m2 = *class_matching(ac2.classes[0], bc2.classes[0]);
  CHECK(pair_unreachable(PairKind::InvEnd, a2, ac2.classes[0], b2,
                         bc2.classes[0], m2));

  // floortile paint-up vs paint-down: no invariant-side template atoms
  CanonicalDomain d = floortile();
  const DurativeSchema& pu = find_durative(d, "paint-up");
  const DurativeSchema& pd = find_durative(d, "paint-down");
  Template t = t_ft();
  SchemaClasses pu_sc = t_classes(pu.all_literals(), t);
  SchemaClasses pd_sc = t_classes(pd.all_literals(), t);
  const TClass& l2 = class_with(pu_sc, "clear");
  const TClass& l2d = class_with(pd_sc, "clear");
  Matching mf = *class_matching(l2, l2d);
  CHECK(!pair_unreachable(PairKind::InvEnd, pu, l2, pd, l2d, mf));
}

TEST_CASE("relevant right isolation") {
  // depot: the paired ends reduce to one literal under the class matching
  CanonicalDomain depot_dom = depot();
  TemplateAnalysis dp = analyze_template(depot_dom, t_dp());
  CHECK(relevant_right_isolated(dp));

  // no dangerous schemas: vacuously isolated
  CanonicalDomain ft_dom = floortile();
  TemplateAnalysis ft_static =
      analyze_template(ft_dom, Template::single({"robot-at", 2, 2}));
  CHECK(relevant_right_isolated(ft_static));

  // a self-paired schema whose end adds two distinct template atoms
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object)) "
      "(:durative-action a :parameters (?x - object) "
      ":duration (= ?duration 1) :condition (and) "
      ":effect (and (at end (p ?x)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  TemplateAnalysis bad =
      analyze_template(dd, Template::single({"p", 1, 0}));
  CHECK(!relevant_right_isolated(bad));
}

TEST_CASE("relevant left isolation") {
  CanonicalDomain ft_dom = floortile();
  TemplateAnalysis ft = analyze_template(ft_dom, t_ft());
  CHECK(relevant_left_isolated(ft));
  // vacuous
  TemplateAnalysis none =
      analyze_template(ft_dom, Template::single({"robot-at", 2, 2}));
  CHECK(relevant_left_isolated(none));

  // two starts adding the same template atom, non-mutex, reachable
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object)) "
      "(:durative-action a :parameters (?x - object) "
      ":duration (= ?duration 1) :condition (and) "
      ":effect (and (at start (p ?x)) (at end (not (p ?x))))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  TemplateAnalysis bad =
      analyze_template(dd, Template::single({"p", 1, 0}));
  CHECK(!relevant_left_isolated(bad));
}

TEST_CASE("strongly irrelevant unreachable pairs") {
  CanonicalDomain d = floortile();
  Template t = t_ft();
  TemplateAnalysis a = analyze_template(d, t);
  const DurativeSchema& up = find_durative(d, "up");
  SchemaClasses up_sc = t_classes(up.all_literals(), t);
  REQUIRE(up_sc.classes.size() == 2);
  const TClass& l3 = up_sc.classes[0];
  const TClass& l4 = up_sc.classes[1];

  // same class on two copies: the deleted clear atom cannot come back
  // through irrelevant schemas, condition (ii)
  Matching self = *class_matching(l4, l4);
  CHECK(strongly_irrelevant_unreachable(a, up.st, l4, up.st, l4, self));

  // distinct template atoms required: condition (iii)
  const DurativeSchema& pu = find_durative(d, "paint-up");
  SchemaClasses pu_sc = t_classes(pu.all_literals(), t);
  const TClass& l2 = class_with(pu_sc, "painted");
  Matching cross = *class_matching(l3, l2);
  CHECK(strongly_irrelevant_unreachable(a, up.st, l3, pu.st, l2, cross));
}

TEST_CASE("an irrelevant deleter defeats the unreachability argument") {
  // a1 leaves g(x) true which a2 requires false; with no third action that
  // is decisive, with an irrelevant deleter of g it is not
  std::string base =
      "(define (domain d) (:predicates (p ?x - object) (g ?x - object)) "
      "(:action a1 :parameters (?x - object) "
      ":precondition (p ?x) :effect (g ?x)) "
      "(:action a2 :parameters (?y - object) "
      ":precondition (and (p ?y) (not (g ?y))) :effect (not (p ?y)))";
  CanonicalDomain without = canonicalize(parse_domain(base + ")", "t"));
  CanonicalDomain with = canonicalize(parse_domain(
      base +
          " (:action wiper :parameters (?z - object) "
          ":precondition (and) :effect (not (g ?z))))",
      "t"));
  Template tp = Template::single({"p", 1, 1});
  for (bool has_wiper : {false, true}) {
    const CanonicalDomain& dom = has_wiper ? with : without;
    TemplateAnalysis a = analyze_template(dom, tp);
    const InstantaneousSchema& a1 = dom.inst_schemas[0];
    const InstantaneousSchema& a2 = dom.inst_schemas[1];
    SchemaClasses c1 = t_classes(a1.all_literals(), tp);
    SchemaClasses c2 = t_classes(a2.all_literals(), tp);
    REQUIRE(c1.classes.size() == 1);
    REQUIRE(c2.classes.size() == 1);
    Matching m = *class_matching(c1.classes[0], c2.classes[0]);
    bool result =
        strongly_irrelevant_unreachable(a, a1, c1.classes[0], a2,
                                        c2.classes[0], m);
    CHECK(result == !has_wiper);
  }
}

TEST_CASE("relevant non-intertwining") {
  CanonicalDomain ft_dom = floortile();
  TemplateAnalysis ft = analyze_template(ft_dom, t_ft());
  CHECK(relevant_non_intertwining(ft));
  // vacuous dangerous set
  TemplateAnalysis none =
      analyze_template(ft_dom, Template::single({"robot-at", 2, 2}));
  CHECK(relevant_non_intertwining(none));

  // staggered pair: one action consumes the atom the other's end recreates,
  // the second action slips in between
  RawDomain raw = parse_domain(
      "(define (domain d) "
      "(:predicates (q1 ?x - object) (q2 ?x - object) (q3 ?x - object)) "
      "(:durative-action da :parameters (?x - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at start (q1 ?x))) "
      ":effect (and (at start (not (q1 ?x))) (at end (q2 ?x)))) "
      "(:durative-action db :parameters (?y - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at start (not (q1 ?y))) (at start (not (q2 ?y))) "
      "(at start (not (q3 ?y)))) "
      ":effect (and (at end (q3 ?y)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  Template tq = Template::make(
      {{"q1", 1, 1}, {"q2", 1, 1}, {"q3", 1, 1}},
      {{{0, 0}, {1, 0}, {2, 0}}});
  TemplateAnalysis bad = analyze_template(dd, tq);
  CHECK(!relevant_non_intertwining(bad));
}

TEST_CASE("decision procedure on the bundled domains") {
  CanonicalDomain ft = floortile();
  Verdict vft = check_invariance(t_ft(), ft);
  CHECK(vft.invariant);
  CHECK(vft.proof == ProofRule::TypeA);

  CanonicalDomain dp = depot();
  Verdict vdp = check_invariance(t_dp(), dp);
  CHECK(vdp.invariant);
  CHECK(vdp.proof == ProofRule::StarSafety);

  // tile occupancy: unknown, the movement ends stay relevant unbounded
  Template t2 = Template::single({"robot-at", 2, 0});
  Verdict v2 = check_invariance(t2, ft);
  CHECK(!v2.invariant);
  std::set<std::string> failing;
  for (const Failure& f : v2.failures)
    if (f.classification == Classification::RelevantUnbounded &&
        f.fragment == FragmentKind::End)
      failing.insert(f.schema);
  CHECK(failing == std::set<std::string>{"up", "down", "left", "right"});
}

TEST_CASE("verdicts serialize to json") {
  CanonicalDomain ft = floortile();
  Verdict v = check_invariance(t_ft(), ft);
  std::string j = v.to_json(t_ft());
  CHECK(j.find("\"status\":\"invariant\"") != std::string::npos);
  CHECK(j.find("simply-safe-type-a") != std::string::npos);
}

TEST_CASE("matching extensions enumerate every sharing pattern") {
  Matching base;  // empty
  auto exts = matching_extensions(base, {"a", "b"}, {"c", "d"});
  // injective partial maps between two 2-element sets: 1 + 4 + 2
  CHECK(exts.size() == 7);
  // with one pair fixed, only the free variables extend
  Matching m1 = mk_matching({{"a", "c"}});
  CHECK(matching_extensions(m1, {"a", "b"}, {"c", "d"}).size() == 2);
}

TEST_CASE("constants leave pairwise claims uncertain") {
  // a constant argument may or may not coincide with a variable, so neither
  // a mutex nor an unreachability claim is certain
  Literal pk;
  pk.relation = "p";
  pk.args.push_back(Arg::constant("k"));
  InstantaneousSchema adds = mk_schema("adds", {}, {}, {pk}, {});
  InstantaneousSchema dels = mk_schema("dels", {}, {}, {}, {lit1("p", "v")});
  Matching empty;
  CHECK(!m_mutex(adds, dels, empty));

  // weight over {p(k), p(v)} stays One for the certain lower bound
  RawDomain raw = parse_domain(
      "(define (domain d) (:constants k) "
      "(:predicates (p ?x - object) (g ?x - object)) "
      "(:durative-action a :parameters (?v - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at start (p k)) (at end (p ?v))) "
      ":effect (and (at end (g ?v)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  Template tp = Template::single({"p", 1, 0});
  const DurativeSchema& a = dd.dur_schemas[0];
  SchemaClasses sc = t_classes(a.all_literals(), tp);
  REQUIRE(sc.classes.size() == 1);
  AuxSchema aux = make_aux(a);
  // two formally distinct requirements that may collapse onto one object:
  // neither certainly reachable nor certainly unreachable
  CHECK(!aux_reachable(a, aux, sc.classes[0]));
  CHECK(!aux_certainly_unreachable(a, aux, sc.classes[0]));
}

TEST_CASE("certainly unreachable auxiliary pairs") {
  RawDomain raw = parse_domain(
      "(define (domain d) (:predicates (p ?x - object) (g ?x - object)) "
      "(:durative-action a :parameters (?x - object ?y - object) "
      ":duration (= ?duration 1) "
      ":condition (and (at start (p ?x)) (at end (p ?y))) "
      ":effect (and (at end (g ?x)))))",
      "t");
  CanonicalDomain dd = canonicalize(raw);
  Template tp = Template::single({"p", 1, 0});
  const DurativeSchema& a = dd.dur_schemas[0];
  SchemaClasses sc = t_classes(a.all_literals(), tp);
  REQUIRE(sc.classes.size() == 1);  // k = 0 couples both p-literals
  AuxSchema aux = make_aux(a);
  CHECK(!aux_reachable(a, aux, sc.classes[0]));
  CHECK(aux_certainly_unreachable(a, aux, sc.classes[0]));
}
