#include "tempinv/lifted.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "json.hpp"

namespace tempinv {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Unreachable: return "unreachable";
    case Classification::Heavy: return "heavy";
    case Classification::Irrelevant: return "irrelevant";
    case Classification::RelevantBalanced: return "relevant-balanced";
    case Classification::RelevantUnbalanced: return "relevant-unbalanced";
    case Classification::RelevantBounded: return "relevant-bounded";
    case Classification::RelevantUnbounded: return "relevant-unbounded";
  }
  return "";
}

std::string to_string(ProofRule p) {
  switch (p) {
    case ProofRule::AllStronglySafe: return "all-strongly-safe";
    case ProofRule::TypeA: return "simply-safe-type-a";
    case ProofRule::StarSafety: return "star-safety";
    case ProofRule::NonIntertwining: return "non-intertwining";
  }
  return "";
}

std::string to_string(FragmentKind k) {
  switch (k) {
    case FragmentKind::Native: return "body";
    case FragmentKind::Start: return "start";
    case FragmentKind::Invariant: return "invariant";
    case FragmentKind::End: return "end";
  }
  return "";
}

std::string TClass::signature_string() const {
  std::string out = "[";
  for (size_t i = 0; i < signature.size(); ++i) {
    if (i) out += ' ';
    const Arg& a = signature[i];
    out += a.kind == ArgKind::Const ? a.name : "?" + a.name;
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// T-classes

SchemaClasses t_classes(const LiteralSet& literals, const Template& t) {
  SchemaClasses out;

  // components indexed by relation
  std::map<std::string, std::vector<int>> by_relation;
  for (size_t ci = 0; ci < t.components().size(); ++ci)
    by_relation[t.components()[ci].relation].push_back((int)ci);
  for (auto& [rel, cs] : by_relation) {
    if (cs.size() > 1) {
      out.clean = false;
      out.unclean_reason = "two components share relation '" + rel + "'";
      return out;
    }
  }

  std::map<std::vector<Arg>, TClass> classes;  // signature -> class
  for (const Literal& l : literals) {
    auto it = by_relation.find(l.relation);
    if (it == by_relation.end()) continue;
    int ci = it->second[0];
    const Component& c = t.components()[(size_t)ci];
    if ((int)l.args.size() != c.arity) continue;  // arity mismatch: no match
    if (l.quantified()) {
      std::vector<int> qp = l.quant_positions();
      if (!c.has_counted() || qp.size() != 1 || qp[0] != c.counted) {
        // sweeps straddle the instantiation boundary: all-or-nothing fails
        out.clean = false;
        out.unclean_reason = "quantified literal " + print_literal(l) +
                             " does not align with component counted position";
        return out;
      }
    }
    // signature: argument per block; a repeated value across blocks can
    // never be coherent with an injective instance, so the literal is
    // invisible to the template
    std::vector<Arg> sig;
    bool visible = true;
    for (int b = 0; b < t.k(); ++b) {
      int pos = t.position_in_block(b, ci);
      const Arg& a = l.args[(size_t)pos];
      for (const Arg& prev : sig)
        if (prev == a) visible = false;
      sig.push_back(a);
    }
    if (!visible) continue;
    TClass& cls = classes[sig];
    cls.signature = sig;
    cls.literals.push_back(l);
    cls.component_of.push_back(ci);
  }

  for (auto& [sig, cls] : classes) {
    // keep literals sorted together with their component tags
    std::vector<size_t> order(cls.literals.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return cls.literals[a] < cls.literals[b];
    });
    TClass sorted;
    sorted.signature = cls.signature;
    for (size_t i : order) {
      sorted.literals.push_back(cls.literals[i]);
      sorted.component_of.push_back(cls.component_of[i]);
    }
    out.classes.push_back(std::move(sorted));
  }
  return out;
}

PureSets restrict_to_class(const InstantaneousSchema& frag,
                           const TClass& cls) {
  auto pick = [&](const LiteralSet& s) {
    std::vector<Literal> out;
    for (const Literal& l : cls.literals)
      if (s.contains(l)) out.push_back(l);
    return out;
  };
  return {pick(frag.pre_plus), pick(frag.pre_minus), pick(frag.eff_plus),
          pick(frag.eff_minus)};
}

bool class_covers(const std::vector<Literal>& lits,
                  const std::vector<int>& component_of, const Template& t) {
  for (size_t ci = 0; ci < t.components().size(); ++ci) {
    const Component& c = t.components()[ci];
    bool covered = false;
    for (size_t i = 0; i < lits.size(); ++i) {
      if (component_of[i] != (int)ci) continue;
      // a counted component is only exhausted by a full sweep
      if (!c.has_counted() || lits[i].quantified()) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

// l is subsumed by e for every grounding: e sweeps every position where they
// differ.
bool literal_contained(const Literal& l, const Literal& e) {
  if (l.relation != e.relation || l.args.size() != e.args.size()) return false;
  for (size_t i = 0; i < l.args.size(); ++i) {
    const Arg& a = l.args[i];
    const Arg& b = e.args[i];
    if (b.kind == ArgKind::Quant) {
      if (a.kind == ArgKind::Quant) continue;  // both sweep
      continue;                                // e covers any value here
    }
    if (a.kind == ArgKind::Quant) return false;  // l sweeps, e is fixed
    if (!(a == b)) return false;
  }
  return true;
}

bool contained_in_any(const Literal& l, const std::vector<Literal>& set) {
  for (const Literal& e : set)
    if (literal_contained(l, e)) return true;
  return false;
}

// possible structural overlap within one schema (shared variable names)
bool same_schema_may_overlap(const Literal& a, const Literal& b) {
  if (a.relation != b.relation || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Arg& x = a.args[i];
    const Arg& y = b.args[i];
    if (x.kind == ArgKind::Quant || y.kind == ArgKind::Quant) continue;
    if (x.kind == ArgKind::Const && y.kind == ArgKind::Const) {
      if (x.name != y.name) return false;
    } else if (x.kind == ArgKind::Free && y.kind == ArgKind::Free) {
      if (x.name != y.name) return false;  // injective grounding
    }
    // var vs const: possibly equal
  }
  return true;
}

std::vector<Literal> class_union(std::vector<Literal> a,
                                 const std::vector<Literal>& b) {
  for (const Literal& l : b)
    if (std::find(a.begin(), a.end(), l) == a.end()) a.push_back(l);
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

Classification classify_pure(const PureSets& p, const TClass& cls,
                             const Template& t) {
  SymWeight wp = set_weight(p.pre_plus);
  SymWeight we = set_weight(p.eff_plus);
  if (sym_at_least_two(wp)) return Classification::Unreachable;
  if (sym_at_least_two(we)) return Classification::Heavy;
  if (sym_is_zero(we)) return Classification::Irrelevant;
  if (sym_is_one(wp)) {
    std::vector<Literal> effects = class_union(p.eff_plus, p.eff_minus);
    for (const Literal& l : p.pre_plus)
      if (!contained_in_any(l, effects))
        return Classification::RelevantUnbalanced;
    return Classification::RelevantBalanced;
  }
  return class_covers(cls.literals, cls.component_of, t)
             ? Classification::RelevantBounded
             : Classification::RelevantUnbounded;
}

bool strongly_safe(const InstantaneousSchema& frag, const SchemaClasses& sc,
                   const Template& t) {
  if (!sc.clean) return false;
  for (const TClass& cls : sc.classes)
    if (!strongly_safe_class(classify_pure(restrict_to_class(frag, cls), cls, t)))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Auxiliary durative schemas

AuxSchema make_aux(const DurativeSchema& d) {
  AuxSchema aux;
  aux.st_star = d.st;
  aux.st_star.name = d.name + "^st*";
  aux.st_star.pre_plus =
      d.st.pre_plus.set_union(d.inv.pre_plus.set_minus(d.st.eff_plus));
  aux.st_star.pre_minus =
      d.st.pre_minus.set_union(d.inv.pre_minus.set_minus(d.st.eff_minus));
  aux.end_star = d.end;
  aux.end_star.name = d.name + "^end*";
  aux.end_star.pre_plus = d.end.pre_plus.set_union(d.inv.pre_plus);
  aux.end_star.pre_minus = d.end.pre_minus.set_union(d.inv.pre_minus);
  return aux;
}

namespace {

std::vector<Literal> to_vec(const LiteralSet& s) {
  return s.items();
}

// Atoms certainly true (positive = true) or certainly false after the
// fragment runs. Adds win over deletes of the same atom, so positive effects
// count unconditionally while delete effects only count when no add may
// touch them.
std::vector<Literal> gamma_certain(const std::vector<Literal>& pre,
                                   const std::vector<Literal>& eff_same,
                                   const std::vector<Literal>& eff_opp,
                                   bool positive) {
  std::vector<Literal> out;
  auto untouched = [&](const Literal& l) {
    for (const Literal& e : eff_opp)
      if (same_schema_may_overlap(l, e)) return false;
    return true;
  };
  for (const Literal& p : pre)
    if (untouched(p)) out.push_back(p);
  for (const Literal& e : eff_same)
    if (positive || untouched(e)) out.push_back(e);
  return out;
}

}  // namespace

bool aux_executable(const AuxSchema& aux) {
  // executability failures block the safety rules, so the gamma sets may
  // over-approximate: everything the start possibly leaves true or false
  std::vector<Literal> gp = to_vec(aux.st_star.pre_plus);
  for (const Literal& e : aux.st_star.eff_plus) gp.push_back(e);
  std::vector<Literal> gm = to_vec(aux.st_star.pre_minus);
  for (const Literal& e : aux.st_star.eff_minus) gm.push_back(e);
  for (const Literal& g : gp)
    for (const Literal& q : aux.end_star.pre_minus)
      if (same_schema_may_overlap(g, q)) return false;
  for (const Literal& g : gm)
    for (const Literal& q : aux.end_star.pre_plus)
      if (same_schema_may_overlap(g, q)) return false;
  return true;
}

// Reachability claimed here must hold for every grounding: the
// executability part fails on any possible clash, and the weight stays an
// upper bound (formally distinct literals can only collapse).
bool aux_reachable(const DurativeSchema& d, const AuxSchema& aux,
                   const TClass& cls) {
  (void)d;
  PureSets st = restrict_to_class(aux.st_star, cls);
  PureSets end = restrict_to_class(aux.end_star, cls);
  // executability of the restricted pair
  {
    std::vector<Literal> gp = st.pre_plus;
    for (const Literal& e : st.eff_plus) gp.push_back(e);
    std::vector<Literal> gm = st.pre_minus;
    for (const Literal& e : st.eff_minus) gm.push_back(e);
    for (const Literal& g : gp)
      for (const Literal& q : end.pre_minus)
        if (same_schema_may_overlap(g, q)) return false;
    for (const Literal& g : gm)
      for (const Literal& q : end.pre_plus)
        if (same_schema_may_overlap(g, q)) return false;
  }
  std::vector<Literal> carried;
  for (const Literal& l : end.pre_plus)
    if (std::find(st.eff_plus.begin(), st.eff_plus.end(), l) ==
        st.eff_plus.end())
      carried.push_back(l);
  std::vector<Literal> u = class_union(st.pre_plus, carried);
  return sym_at_most_one(set_weight(u));
}

// The converse claim: every grounding of the restricted auxiliary pair is
// unreachable. A certain executability clash or a certain weight of two.
bool aux_certainly_unreachable(const DurativeSchema& d, const AuxSchema& aux,
                               const TClass& cls) {
  (void)d;
  PureSets st = restrict_to_class(aux.st_star, cls);
  PureSets end = restrict_to_class(aux.end_star, cls);
  auto must = [](const Literal& a, const Literal& b) {
    if (a.relation != b.relation || a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (a.args[i].kind == ArgKind::Quant ||
          b.args[i].kind == ArgKind::Quant)
        continue;
      if (!(a.args[i] == b.args[i])) return false;
    }
    return true;
  };
  {
    std::vector<Literal> gp =
        gamma_certain(st.pre_plus, st.eff_plus, st.eff_minus, true);
    std::vector<Literal> gm =
        gamma_certain(st.pre_minus, st.eff_minus, st.eff_plus, false);
    for (const Literal& g : gp)
      for (const Literal& q : end.pre_minus)
        if (must(g, q)) return true;
    for (const Literal& g : gm)
      for (const Literal& q : end.pre_plus)
        if (must(g, q)) return true;
  }
  // lower bound on the joint positive requirement
  std::vector<Literal> u = st.pre_plus;
  for (const Literal& p : end.pre_plus) {
    bool added = false;
    for (const Literal& e : st.eff_plus)
      if (same_schema_may_overlap(p, e)) added = true;
    if (!added) u.push_back(p);
  }
  std::vector<int> group((size_t)u.size());
  for (size_t i = 0; i < u.size(); ++i) group[i] = (int)i;
  auto find = [&](int i) {
    while (group[(size_t)i] != i) i = group[(size_t)i];
    return i;
  };
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (same_schema_may_overlap(u[i], u[j]))
        group[(size_t)find((int)j)] = find((int)i);
  SymWeight w = SymWeight::Zero;
  std::set<int> roots;
  for (size_t i = 0; i < u.size(); ++i) {
    int root = find((int)i);
    if (!roots.insert(root).second) continue;
    bool quant = false;
    for (size_t j = 0; j < u.size(); ++j)
      if (find((int)j) == root && u[j].quantified()) quant = true;
    w = sym_add(w, quant ? SymWeight::Many : SymWeight::One);
  }
  return sym_at_least_two(w);
}

SimplyType simply_safe_type(const DurativeSchema& d, const AuxSchema& aux,
                            const TClass& cls, const Template& t) {
  PureSets st_star = restrict_to_class(aux.st_star, cls);
  PureSets end_star = restrict_to_class(aux.end_star, cls);
  PureSets end = restrict_to_class(d.end, cls);
  PureSets st = restrict_to_class(d.st, cls);

  if (!aux_reachable(d, aux, cls)) return SimplyType::None;
  Classification cst = classify_pure(st_star, cls, t);
  if (!strongly_safe_class(cst)) return SimplyType::None;
  if (classify_pure(end_star, cls, t) != Classification::RelevantUnbounded)
    return SimplyType::None;

  SymWeight wp = set_weight(st_star.pre_plus);
  std::vector<Literal> end_effects = class_union(end.eff_minus, end.eff_plus);
  if (cst == Classification::Irrelevant) {
    if (sym_is_one(wp)) {
      bool in_st_del = true;
      for (const Literal& l : st_star.pre_plus)
        if (!contained_in_any(l, st_star.eff_minus)) in_st_del = false;
      if (in_st_del) return SimplyType::A;
      bool in_end_eff = true;
      for (const Literal& l : st_star.pre_plus)
        if (!contained_in_any(l, end_effects)) in_end_eff = false;
      if (in_end_eff) return SimplyType::B;
      return SimplyType::None;
    }
    if (sym_is_zero(wp)) {
      // (c): Pre-_{st*L} u Eff-_{st*L} u Eff-_{end_L} u Eff+_{end_L} covers T
      std::vector<Literal> m = class_union(st_star.pre_minus, st_star.eff_minus);
      m = class_union(m, end_effects);
      std::vector<int> comp_of;
      std::vector<Literal> lits;
      for (const Literal& l : m) {
        for (size_t i = 0; i < cls.literals.size(); ++i)
          if (cls.literals[i] == l) {
            lits.push_back(l);
            comp_of.push_back(cls.component_of[i]);
          }
      }
      if (class_covers(lits, comp_of, t)) return SimplyType::C;
      return SimplyType::None;
    }
    return SimplyType::None;
  }
  // (d): st*_L relevant (and strongly safe by the prerequisite)
  bool ok = true;
  for (const Literal& l : st.eff_plus)
    if (!contained_in_any(l, end_effects)) ok = false;
  return ok ? SimplyType::D : SimplyType::None;
}

// ---------------------------------------------------------------------------
// Matchings and pairwise literal comparisons

std::string Matching::rewrite(int side, const std::string& var) const {
  const auto& v = side == 0 ? left : right;
  for (const auto& [name, token] : v)
    if (name == var) return token;
  return (side == 0 ? "l:" : "r:") + var;
}

namespace {

std::string arg_token(const Arg& a, int side, const Matching& m) {
  if (a.kind == ArgKind::Const) return "c:" + a.name;
  return m.rewrite(side, a.name);
}

// Whether two joint-alphabet tokens can denote the same object under an
// adapted grounding of this exact matching. Distinct variables ground to
// distinct objects (the grounding through the reduced alphabet is
// injective); only a variable against a constant stays open. Pairwise
// checks quantify over every extension of the class matching separately, so
// unmatched variables of opposite sides are distinct here.
bool tokens_unifiable(const std::string& a, const std::string& b) {
  if (a == b) return true;
  bool ca = a.rfind("c:", 0) == 0;
  bool cb = b.rfind("c:", 0) == 0;
  if (ca && cb) return false;  // distinct constants
  if (ca != cb) return true;   // variable vs constant: possibly equal
  return false;
}

}  // namespace

bool literal_identical(const Literal& a, int side_a, const Literal& b,
                       int side_b, const Matching& m) {
  if (a.relation != b.relation || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Arg& x = a.args[i];
    const Arg& y = b.args[i];
    if (x.kind == ArgKind::Quant || y.kind == ArgKind::Quant) {
      if (x.kind != y.kind) return false;
      if (x.quant_index != y.quant_index) return false;
      continue;
    }
    if (arg_token(x, side_a, m) != arg_token(y, side_b, m)) return false;
  }
  return true;
}

bool literals_must_overlap(const Literal& a, int side_a, const Literal& b,
                           int side_b, const Matching& m) {
  if (a.relation != b.relation || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Arg& x = a.args[i];
    const Arg& y = b.args[i];
    if (x.kind == ArgKind::Quant || y.kind == ArgKind::Quant) continue;
    if (arg_token(x, side_a, m) != arg_token(y, side_b, m)) return false;
  }
  return true;
}

bool literals_may_overlap(const Literal& a, int side_a, const Literal& b,
                          int side_b, const Matching& m) {
  if (a.relation != b.relation || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Arg& x = a.args[i];
    const Arg& y = b.args[i];
    if (x.kind == ArgKind::Quant || y.kind == ArgKind::Quant) continue;
    if (!tokens_unifiable(arg_token(x, side_a, m), arg_token(y, side_b, m)))
      return false;
  }
  return true;
}

// Every pair of adapted groundings shares objects exactly along one matching
// extending the class matching. Pairwise safety conditions are disjunctions
// that may be discharged differently per sharing pattern, so the checks
// enumerate all of them.
std::vector<Matching> matching_extensions(
    const Matching& base, const std::vector<std::string>& left_params,
    const std::vector<std::string>& right_params) {
  auto matched = [](const std::vector<std::pair<std::string, std::string>>& v,
                    const std::string& name) {
    for (const auto& [n, tok] : v)
      if (n == name) return true;
    return false;
  };
  std::vector<std::string> free_left, free_right;
  for (const std::string& p : left_params)
    if (!matched(base.left, p)) free_left.push_back(p);
  for (const std::string& p : right_params)
    if (!matched(base.right, p)) free_right.push_back(p);

  std::vector<Matching> out;
  std::vector<int> pick(free_left.size(), -1);  // index into free_right
  std::vector<bool> used(free_right.size(), false);
  auto emit = [&]() {
    Matching m = base;
    for (size_t i = 0; i < pick.size(); ++i) {
      if (pick[i] < 0) continue;
      std::string tok = "j:x" + std::to_string(out.size()) + "_" +
                        std::to_string(i);
      m.left.emplace_back(free_left[i], tok);
      m.right.emplace_back(free_right[(size_t)pick[i]], tok);
    }
    out.push_back(std::move(m));
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == pick.size()) {
      emit();
      return;
    }
    pick[i] = -1;
    self(self, i + 1);
    for (size_t j = 0; j < free_right.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      pick[i] = (int)j;
      self(self, i + 1);
      used[j] = false;
    }
    pick[i] = -1;
  };
  rec(rec, 0);
  return out;
}

std::optional<Matching> class_matching(const TClass& a, const TClass& b) {
  Matching m;
  if (a.signature.size() != b.signature.size()) return std::nullopt;
  for (size_t i = 0; i < a.signature.size(); ++i) {
    const Arg& x = a.signature[i];
    const Arg& y = b.signature[i];
    std::string joint = "j" + std::to_string(i);
    if (x.kind == ArgKind::Const && y.kind == ArgKind::Const) {
      if (x.name != y.name) return std::nullopt;  // no coherent instance
      continue;
    }
    if (x.kind == ArgKind::Const) {
      m.right.emplace_back(y.name, "c:" + x.name);
    } else if (y.kind == ArgKind::Const) {
      m.left.emplace_back(x.name, "c:" + y.name);
    } else {
      m.left.emplace_back(x.name, "j:" + joint);
      m.right.emplace_back(y.name, "j:" + joint);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pairwise conditions

namespace {

struct SideLit {
  const Literal* lit;
  int side;
};

std::vector<SideLit> sided(const std::vector<Literal>& a,
                           const std::vector<Literal>& b) {
  std::vector<SideLit> out;
  for (const Literal& l : a) out.push_back({&l, 0});
  for (const Literal& l : b) out.push_back({&l, 1});
  return out;
}

std::vector<SideLit> sided_sets(const LiteralSet& a, const LiteralSet& b) {
  std::vector<SideLit> out;
  for (const Literal& l : a) out.push_back({&l, 0});
  for (const Literal& l : b) out.push_back({&l, 1});
  return out;
}

bool any_must_overlap(const std::vector<SideLit>& xs,
                      const std::vector<SideLit>& ys, const Matching& m) {
  for (const SideLit& x : xs)
    for (const SideLit& y : ys)
      if (literals_must_overlap(*x.lit, x.side, *y.lit, y.side, m)) return true;
  return false;
}

// members of `pre` not possibly touched by `eff`
std::vector<SideLit> certainly_kept(const std::vector<SideLit>& pre,
                                    const std::vector<SideLit>& eff,
                                    const Matching& m) {
  std::vector<SideLit> out;
  for (const SideLit& p : pre) {
    bool touched = false;
    for (const SideLit& e : eff)
      if (literals_may_overlap(*p.lit, p.side, *e.lit, e.side, m))
        touched = true;
    if (!touched) out.push_back(p);
  }
  return out;
}

std::vector<SideLit> dedup_identical(std::vector<SideLit> xs,
                                     const Matching& m) {
  std::vector<SideLit> out;
  for (const SideLit& x : xs) {
    bool dup = false;
    for (const SideLit& y : out)
      if (literal_identical(*x.lit, x.side, *y.lit, y.side, m)) dup = true;
    if (!dup) out.push_back(x);
  }
  return out;
}

// Lower bound on |gr(xs)| valid for every adapted grounding: literals that
// may collapse onto each other are merged first.
SymWeight weight_lower_bound(const std::vector<SideLit>& xs,
                             const Matching& m) {
  std::vector<int> group((size_t)xs.size());
  for (size_t i = 0; i < xs.size(); ++i) group[i] = (int)i;
  auto find = [&](int i) {
    while (group[(size_t)i] != i) i = group[(size_t)i];
    return i;
  };
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (literals_may_overlap(*xs[i].lit, xs[i].side, *xs[j].lit, xs[j].side,
                               m))
        group[(size_t)find((int)j)] = find((int)i);
  SymWeight w = SymWeight::Zero;
  std::set<int> seen;
  for (size_t i = 0; i < xs.size(); ++i) {
    int root = find((int)i);
    if (!seen.insert(root).second) continue;
    bool quant = false;
    for (size_t j = 0; j < xs.size(); ++j)
      if (find((int)j) == root && xs[j].lit->quantified()) quant = true;
    w = sym_add(w, quant ? SymWeight::Many : SymWeight::One);
  }
  return w;
}

}  // namespace

bool m_mutex(const InstantaneousSchema& a, const InstantaneousSchema& b,
             const Matching& m) {
  auto pre = [&](const InstantaneousSchema& s, int side) {
    std::vector<SideLit> out;
    for (const Literal& l : s.pre_plus) out.push_back({&l, side});
    for (const Literal& l : s.pre_minus) out.push_back({&l, side});
    return out;
  };
  auto eff = [&](const InstantaneousSchema& s, int side) {
    std::vector<SideLit> out;
    for (const Literal& l : s.eff_plus) out.push_back({&l, side});
    for (const Literal& l : s.eff_minus) out.push_back({&l, side});
    return out;
  };
  auto plus = [&](const InstantaneousSchema& s, int side) {
    std::vector<SideLit> out;
    for (const Literal& l : s.eff_plus) out.push_back({&l, side});
    return out;
  };
  auto minus = [&](const InstantaneousSchema& s, int side) {
    std::vector<SideLit> out;
    for (const Literal& l : s.eff_minus) out.push_back({&l, side});
    return out;
  };
  if (any_must_overlap(plus(a, 0), minus(b, 1), m)) return true;
  if (any_must_overlap(plus(b, 1), minus(a, 0), m)) return true;
  if (any_must_overlap(pre(a, 0), eff(b, 1), m)) return true;
  if (any_must_overlap(pre(b, 1), eff(a, 0), m)) return true;
  return false;
}

bool pair_unreachable(PairKind kind, const DurativeSchema& d1,
                      const TClass& l1, const DurativeSchema& d2,
                      const TClass& l2, const Matching& m) {
  const InstantaneousSchema& f1 = kind == PairKind::InvEnd ? d1.inv : d1.st;
  const InstantaneousSchema& f2 = kind == PairKind::InvEnd ? d2.inv : d2.st;
  const InstantaneousSchema& g1 = kind == PairKind::InvEnd ? d1.end : d1.inv;
  const InstantaneousSchema& g2 = kind == PairKind::InvEnd ? d2.end : d2.inv;

  // (i)/(ii): the joint two-step sequence is not executable
  std::vector<SideLit> pre_plus_1 = sided_sets(f1.pre_plus, f2.pre_plus);
  std::vector<SideLit> pre_minus_1 = sided_sets(f1.pre_minus, f2.pre_minus);
  std::vector<SideLit> eff_plus_1 = sided_sets(f1.eff_plus, f2.eff_plus);
  std::vector<SideLit> eff_minus_1 = sided_sets(f1.eff_minus, f2.eff_minus);
  std::vector<SideLit> gamma_p = certainly_kept(pre_plus_1, eff_minus_1, m);
  for (const SideLit& e : eff_plus_1) gamma_p.push_back(e);
  std::vector<SideLit> gamma_m = certainly_kept(pre_minus_1, eff_plus_1, m);
  for (const SideLit& e : certainly_kept(eff_minus_1, eff_plus_1, m))
    gamma_m.push_back(e);
  if (any_must_overlap(gamma_p, sided_sets(g1.pre_minus, g2.pre_minus), m))
    return true;
  if (any_must_overlap(gamma_m, sided_sets(g1.pre_plus, g2.pre_plus), m))
    return true;

  // (iii): the combined positive requirement weighs at least two
  PureSets r1 = restrict_to_class(f1, l1);
  PureSets r2 = restrict_to_class(f2, l2);
  PureSets s1 = restrict_to_class(g1, l1);
  PureSets s2 = restrict_to_class(g2, l2);
  std::vector<SideLit> first = sided(r1.pre_plus, r2.pre_plus);
  std::vector<SideLit> adds = sided(r1.eff_plus, r2.eff_plus);
  std::vector<SideLit> second;
  for (const SideLit& p : sided(s1.pre_plus, s2.pre_plus)) {
    bool added = false;
    for (const SideLit& e : adds)
      if (literals_may_overlap(*p.lit, p.side, *e.lit, e.side, m)) added = true;
    if (!added) second.push_back(p);
  }
  std::vector<SideLit> u = first;
  for (const SideLit& p : second) u.push_back(p);
  return sym_at_least_two(weight_lower_bound(u, m));
}

// ---------------------------------------------------------------------------
// Template analysis

bool TemplateAnalysis::any_dangerous() const {
  for (const DurativeInfo& d : duratives)
    for (bool b : d.dangerous)
      if (b) return true;
  return false;
}

TemplateAnalysis analyze_template(const CanonicalDomain& domain,
                                  const Template& t) {
  TemplateAnalysis a;
  a.domain = &domain;
  a.tpl = t;

  for (size_t i = 0; i < domain.inst_schemas.size(); ++i) {
    const InstantaneousSchema& s = domain.inst_schemas[i];
    TemplateAnalysis::InstantInfo info;
    info.index = (int)i;
    info.classes = t_classes(s.all_literals(), t);
    if (!info.classes.clean) {
      a.liftable = false;
      a.unliftable_reason = s.name + ": " + info.classes.unclean_reason;
    }
    for (const TClass& cls : info.classes.classes)
      info.cls.push_back(classify_pure(restrict_to_class(s, cls), cls, t));
    a.instants.push_back(std::move(info));
  }
  for (size_t i = 0; i < domain.dur_schemas.size(); ++i) {
    const DurativeSchema& d = domain.dur_schemas[i];
    TemplateAnalysis::DurativeInfo info;
    info.index = (int)i;
    info.classes = t_classes(d.all_literals(), t);
    if (!info.classes.clean) {
      a.liftable = false;
      a.unliftable_reason = d.name + ": " + info.classes.unclean_reason;
    }
    info.aux = make_aux(d);
    info.executable = aux_executable(info.aux);
    for (const TClass& cls : info.classes.classes) {
      Classification st = classify_pure(restrict_to_class(d.st, cls), cls, t);
      Classification inv = classify_pure(restrict_to_class(d.inv, cls), cls, t);
      Classification end = classify_pure(restrict_to_class(d.end, cls), cls, t);
      info.st.push_back(st);
      info.inv.push_back(inv);
      info.end.push_back(end);
      info.st_star.push_back(
          classify_pure(restrict_to_class(info.aux.st_star, cls), cls, t));
      info.end_star.push_back(
          classify_pure(restrict_to_class(info.aux.end_star, cls), cls, t));
      info.dangerous.push_back(!(strongly_safe_class(st) &&
                                 strongly_safe_class(inv) &&
                                 strongly_safe_class(end)));
      info.reachable.push_back(aux_reachable(d, info.aux, cls));
      info.unreachable.push_back(aux_certainly_unreachable(d, info.aux, cls));
      info.typed.push_back(simply_safe_type(d, info.aux, cls, t));
    }
    a.duratives.push_back(std::move(info));
  }
  return a;
}

bool relevant_right_isolated(const TemplateAnalysis& a) {
  const auto& domain = *a.domain;
  struct Danger {
    const TemplateAnalysis::DurativeInfo* info;
    size_t cls;
  };
  std::vector<Danger> dangers;
  for (const auto& d : a.duratives)
    for (size_t c = 0; c < d.dangerous.size(); ++c)
      if (d.dangerous[c]) dangers.push_back({&d, c});

  for (size_t i = 0; i < dangers.size(); ++i) {
    for (size_t j = i; j < dangers.size(); ++j) {
      const DurativeSchema& d1 = domain.dur_schemas[(size_t)dangers[i].info->index];
      const DurativeSchema& d2 = domain.dur_schemas[(size_t)dangers[j].info->index];
      const TClass& l1 = dangers[i].info->classes.classes[dangers[i].cls];
      const TClass& l2 = dangers[j].info->classes.classes[dangers[j].cls];
      std::optional<Matching> base = class_matching(l1, l2);
      if (!base) continue;  // no coherent instance relates the pair
      PureSets e1 = restrict_to_class(d1.end, l1);
      PureSets e2 = restrict_to_class(d2.end, l2);
      for (const Matching& m :
           matching_extensions(*base, d1.params, d2.params)) {
        // (i) combined relevant add effects weigh at most one
        std::vector<SideLit> adds =
            dedup_identical(sided(e1.eff_plus, e2.eff_plus), m);
        SymWeight w = SymWeight::Zero;
        for (const SideLit& x : adds) w = sym_add(w, literal_weight(*x.lit));
        if (sym_at_most_one(w)) continue;
        // (ii) a mutex pair forbids the simultaneous happening
        if (m_mutex(d1.end, d2.end, m) || m_mutex(d1.inv, d2.inv, m)) continue;
        // (iii) the joint (invariants, ends) sequence is unreachable
        if (pair_unreachable(PairKind::InvEnd, d1, l1, d2, l2, m)) continue;
        return false;
      }
    }
  }
  return true;
}

bool relevant_left_isolated(const TemplateAnalysis& a) {
  const auto& domain = *a.domain;
  struct Danger {
    const TemplateAnalysis::DurativeInfo* info;
    size_t cls;
  };
  std::vector<Danger> dangers;
  for (const auto& d : a.duratives)
    for (size_t c = 0; c < d.dangerous.size(); ++c)
      if (d.dangerous[c]) dangers.push_back({&d, c});

  for (size_t i = 0; i < dangers.size(); ++i) {
    for (size_t j = i; j < dangers.size(); ++j) {
      const DurativeSchema& d1 = domain.dur_schemas[(size_t)dangers[i].info->index];
      const DurativeSchema& d2 = domain.dur_schemas[(size_t)dangers[j].info->index];
      const TClass& l1 = dangers[i].info->classes.classes[dangers[i].cls];
      const TClass& l2 = dangers[j].info->classes.classes[dangers[j].cls];
      std::optional<Matching> base = class_matching(l1, l2);
      if (!base) continue;
      for (const Matching& m :
           matching_extensions(*base, d1.params, d2.params)) {
        if (m_mutex(d1.st, d2.st, m) || m_mutex(d1.inv, d2.inv, m)) continue;
        if (pair_unreachable(PairKind::StInv, d1, l1, d2, l2, m)) continue;
        return false;
      }
    }
  }
  return true;
}

namespace {

// Can lit1 (a literal of schema owning base matching pairs) be made equal to
// lit2 by some matching extending `base`? Quantified positions unify with
// anything; bindings must stay injective.
bool unifiable_under(const Literal& lit1, const Literal& lit2,
                     const std::vector<std::pair<Arg, Arg>>& base) {
  if (lit1.relation != lit2.relation || lit1.args.size() != lit2.args.size())
    return false;
  std::vector<std::pair<std::string, std::string>> bind;  // left var -> right
  auto add_bind = [&](const std::string& l, const std::string& r) {
    for (auto& [bl, br] : bind) {
      if (bl == l) return br == r;
      if (br == r) return bl == l;
    }
    bind.emplace_back(l, r);
    return true;
  };
  auto add_pair = [&](const Arg& x, const Arg& y) {
    if (x.kind == ArgKind::Quant || y.kind == ArgKind::Quant) return true;
    if (x.kind == ArgKind::Const && y.kind == ArgKind::Const)
      return x.name == y.name;
    if (x.kind == ArgKind::Const) return add_bind("#" + x.name, y.name);
    if (y.kind == ArgKind::Const) return add_bind(x.name, "#" + y.name);
    return add_bind(x.name, y.name);
  };
  for (const auto& [x, y] : base)
    if (!add_pair(x, y)) return false;
  for (size_t i = 0; i < lit1.args.size(); ++i)
    if (!add_pair(lit1.args[i], lit2.args[i])) return false;
  return true;
}

// True when no grounding that is irrelevant for the template can produce the
// given effect on lit1's ground atom. `sign` selects delete (-) or add (+)
// effects of candidate schemas. For a lit1 in the pair's own class the scan
// follows the constrained-matching rule; any other lit1 grounds outside the
// instantiation, where incoherent groundings of arbitrary schemas are
// irrelevant, so everything unifiable counts as a flipper.
bool no_irrelevant_effect(const TemplateAnalysis& a, const Literal& lit1,
                          const TClass& l1, char sign, bool lit1_in_class) {
  const CanonicalDomain& domain = *a.domain;

  auto scan_fragment = [&](const InstantaneousSchema& frag,
                           const SchemaClasses& classes,
                           const std::vector<Classification>& cls) {
    const LiteralSet& effects = sign == '-' ? frag.eff_minus : frag.eff_plus;
    if (effects.empty()) return true;
    if (!lit1_in_class || classes.classes.empty()) {
      for (const Literal& e : effects)
        if (unifiable_under(lit1, e, {})) return false;
      return true;
    }
    for (size_t c = 0; c < classes.classes.size(); ++c) {
      if (cls[c] != Classification::Irrelevant) continue;
      // base matching: coherence of both classes with one instance
      const TClass& lc = classes.classes[c];
      if (lc.signature.size() != l1.signature.size()) continue;
      std::vector<std::pair<Arg, Arg>> base;
      for (size_t b = 0; b < l1.signature.size(); ++b)
        base.emplace_back(l1.signature[b], lc.signature[b]);
      for (const Literal& e : effects)
        if (unifiable_under(lit1, e, base)) return false;
    }
    return true;
  };

  for (const auto& info : a.instants) {
    const InstantaneousSchema& s = domain.inst_schemas[(size_t)info.index];
    if (!scan_fragment(s, info.classes, info.cls)) return false;
  }
  for (const auto& info : a.duratives) {
    const DurativeSchema& d = domain.dur_schemas[(size_t)info.index];
    // per-fragment classifications over the shared class list
    if (!scan_fragment(d.st, info.classes, info.st)) return false;
    if (!scan_fragment(d.inv, info.classes, info.inv)) return false;
    if (!scan_fragment(d.end, info.classes, info.end)) return false;
  }
  return true;
}

}  // namespace

bool strongly_irrelevant_unreachable(const TemplateAnalysis& a,
                                     const InstantaneousSchema& a1,
                                     const TClass& l1,
                                     const InstantaneousSchema& a2,
                                     const TClass& l2, const Matching& m) {
  // one of the three conditions must hold for every sharing pattern of the
  // two groundings
  auto at = [&](const Matching& ext) {
    // (iii) the pair needs combined weight > 1
    {
      PureSets r1 = restrict_to_class(a1, l1);
      PureSets r2 = restrict_to_class(a2, l2);
      std::vector<SideLit> u;
      for (const Literal& l : r1.pre_plus) u.push_back({&l, 0});
      std::vector<SideLit> adds;
      for (const Literal& l : r1.eff_plus) adds.push_back({&l, 0});
      for (const Literal& p : r2.pre_plus) {
        bool added = false;
        for (const SideLit& e : adds)
          if (literals_may_overlap(p, 1, *e.lit, e.side, ext)) added = true;
        if (!added) u.push_back({&p, 1});
      }
      if (sym_at_least_two(weight_lower_bound(u, ext))) return true;
    }
    // (i)/(ii): a1 certainly leaves an atom in the wrong polarity for a2,
    // and no irrelevant action can flip it back
    auto check = [&](char sign) {
      std::vector<Literal> gamma =
          sign == '-'
              ? gamma_certain(to_vec(a1.pre_plus), to_vec(a1.eff_plus),
                              to_vec(a1.eff_minus), true)
              : gamma_certain(to_vec(a1.pre_minus), to_vec(a1.eff_minus),
                              to_vec(a1.eff_plus), false);
      const LiteralSet& pre2 = sign == '-' ? a2.pre_minus : a2.pre_plus;
      for (const Literal& lit1 : gamma) {
        bool matched = false;
        for (const Literal& lit2 : pre2)
          if (literal_identical(lit1, 0, lit2, 1, ext)) matched = true;
        if (!matched) continue;
        bool in_class = std::find(l1.literals.begin(), l1.literals.end(),
                                  lit1) != l1.literals.end();
        if (no_irrelevant_effect(a, lit1, l1, sign, in_class)) return true;
      }
      return false;
    };
    if (check('-')) return true;  // q true after a1, required false by a2
    if (check('+')) return true;  // q false after a1, required true by a2
    return false;
  };
  for (const Matching& ext : matching_extensions(m, a1.params, a2.params))
    if (!at(ext)) return false;
  return true;
}

bool relevant_non_intertwining(const TemplateAnalysis& a) {
  if (!relevant_left_isolated(a)) return false;
  const CanonicalDomain& domain = *a.domain;

  struct Target {
    const InstantaneousSchema* frag;
    const TClass* cls;
  };
  // candidate (alpha2, L2): not the end fragment of a dangerous class and
  // not irrelevant, or the start fragment of a dangerous class
  std::vector<Target> targets;
  for (const auto& info : a.instants) {
    const InstantaneousSchema& s = domain.inst_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c)
      if (info.cls[c] != Classification::Irrelevant)
        targets.push_back({&s, &info.classes.classes[c]});
  }
  for (const auto& info : a.duratives) {
    const DurativeSchema& d = domain.dur_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c) {
      const TClass& cls = info.classes.classes[c];
      bool dangerous = info.dangerous[c];
      // start fragment
      if (dangerous || info.st[c] != Classification::Irrelevant)
        targets.push_back({&d.st, &cls});
      // invariant fragment: never an end fragment
      if (info.inv[c] != Classification::Irrelevant)
        targets.push_back({&d.inv, &cls});
      // end fragment: exempt when it belongs to a dangerous class
      if (!dangerous && info.end[c] != Classification::Irrelevant)
        targets.push_back({&d.end, &cls});
    }
  }

  for (const auto& info : a.duratives) {
    const DurativeSchema& d1 = domain.dur_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c) {
      if (!info.dangerous[c]) continue;
      const TClass& l1 = info.classes.classes[c];
      for (const Target& tgt : targets) {
        std::optional<Matching> m = class_matching(l1, *tgt.cls);
        if (!m) continue;
        if (!strongly_irrelevant_unreachable(a, d1.st, l1, *tgt.frag, *tgt.cls,
                                             *m))
          return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Decision procedure

namespace {

std::optional<Literal> unbounded_add_literal(const InstantaneousSchema& frag,
                                             const TClass& cls) {
  PureSets p = restrict_to_class(frag, cls);
  if (p.eff_plus.size() == 1 && !p.eff_plus[0].quantified())
    return p.eff_plus[0];
  return std::nullopt;
}

void collect_failures(const TemplateAnalysis& a, Verdict& v) {
  const CanonicalDomain& domain = *a.domain;
  auto bad = [](Classification c) {
    return c == Classification::Heavy ||
           c == Classification::RelevantUnbalanced ||
           c == Classification::RelevantUnbounded;
  };
  for (const auto& info : a.instants) {
    const InstantaneousSchema& s = domain.inst_schemas[(size_t)info.index];
    for (size_t c = 0; c < info.classes.classes.size(); ++c) {
      if (!bad(info.cls[c])) continue;
      Failure f;
      f.schema = s.name;
      f.fragment = FragmentKind::Native;
      f.class_signature = info.classes.classes[c].signature_string();
      f.classification = info.cls[c];
      if (info.cls[c] == Classification::RelevantUnbounded)
        f.relevant_literal =
            unbounded_add_literal(s, info.classes.classes[c]);
      v.failures.push_back(std::move(f));
    }
  }
  for (const auto& info : a.duratives) {
    const DurativeSchema& d = domain.dur_schemas[(size_t)info.index];
    struct Part {
      const InstantaneousSchema* frag;
      FragmentKind kind;
      const std::vector<Classification>* cls;
    };
    Part parts[3] = {{&d.st, FragmentKind::Start, &info.st},
                     {&d.inv, FragmentKind::Invariant, &info.inv},
                     {&d.end, FragmentKind::End, &info.end}};
    for (const Part& part : parts) {
      for (size_t c = 0; c < info.classes.classes.size(); ++c) {
        Classification k = (*part.cls)[c];
        if (!bad(k)) continue;
        Failure f;
        f.schema = d.name;
        f.fragment = part.kind;
        f.class_signature = info.classes.classes[c].signature_string();
        f.classification = k;
        if (k == Classification::RelevantUnbounded)
          f.relevant_literal =
              unbounded_add_literal(*part.frag, info.classes.classes[c]);
        v.failures.push_back(std::move(f));
      }
    }
  }
}

}  // namespace

Verdict check_invariance(const TemplateAnalysis& a) {
  Verdict v;
  if (!a.liftable) {
    Failure f;
    f.schema = a.unliftable_reason;
    v.failures.push_back(f);
    return v;
  }
  const CanonicalDomain& domain = *a.domain;

  // Strong safety of every schema, native and fragments.
  bool all_ss = true;
  bool natives_ss = true;
  for (const auto& info : a.instants)
    for (Classification c : info.cls)
      if (!strongly_safe_class(c)) all_ss = natives_ss = false;
  for (const auto& info : a.duratives)
    for (size_t c = 0; c < info.classes.classes.size(); ++c)
      if (!(strongly_safe_class(info.st[c]) &&
            strongly_safe_class(info.inv[c]) &&
            strongly_safe_class(info.end[c])))
        all_ss = false;
  if (all_ss) {
    v.invariant = true;
    v.proof = ProofRule::AllStronglySafe;
    return v;
  }

  // Type-(a) rule: dangerous classes simply safe of type (a); everything
  // else irrelevant or balanced.
  {
    bool ok = true;
    for (const auto& info : a.duratives)
      for (size_t c = 0; c < info.classes.classes.size(); ++c)
        if (info.dangerous[c] && info.typed[c] != SimplyType::A) ok = false;
    if (ok)
      for (const auto& info : a.instants)
        for (Classification c : info.cls)
          if (c != Classification::Irrelevant &&
              c != Classification::RelevantBalanced)
            ok = false;
    if (ok) {
      for (const auto& info : a.duratives) {
        for (size_t c = 0; c < info.classes.classes.size(); ++c) {
          bool exempt = info.dangerous[c];
          auto fine = [](Classification k) {
            return k == Classification::Irrelevant ||
                   k == Classification::RelevantBalanced;
          };
          if (!exempt && !(fine(info.st[c]) && fine(info.end[c]))) ok = false;
          if (!fine(info.inv[c])) ok = false;
        }
      }
    }
    if (ok) {
      v.invariant = true;
      v.proof = ProofRule::TypeA;
      return v;
    }
  }

  // Star safety: dangerous classes have reachable, strongly safe auxiliary
  // schemas, and ends cannot collide.
  {
    bool ok = natives_ss;
    for (const auto& info : a.duratives)
      for (size_t c = 0; c < info.classes.classes.size(); ++c)
        if (info.dangerous[c] &&
            !(info.reachable[c] && strongly_safe_class(info.st_star[c]) &&
              strongly_safe_class(info.end_star[c])))
          ok = false;
    if (ok && relevant_right_isolated(a)) {
      v.invariant = true;
      v.proof = ProofRule::StarSafety;
      return v;
    }
  }

  // Non-intertwining rule: auxiliary schemas safe, dangerous starts cannot
  // interleave.
  {
    bool ok = natives_ss;
    for (const auto& info : a.duratives) {
      if (!info.executable) ok = false;
      for (size_t c = 0; c < info.classes.classes.size() && ok; ++c) {
        bool ss_aux = strongly_safe_class(info.st_star[c]) &&
                      strongly_safe_class(info.end_star[c]);
        bool unreach = strongly_safe_class(info.st_star[c]) &&
                       info.unreachable[c];
        bool typed = info.typed[c] != SimplyType::None;
        if (!(ss_aux || unreach || typed)) ok = false;
      }
    }
    if (ok && relevant_non_intertwining(a)) {
      v.invariant = true;
      v.proof = ProofRule::NonIntertwining;
      return v;
    }
  }

  (void)domain;
  collect_failures(a, v);
  return v;
}

Verdict check_invariance(const Template& t, const CanonicalDomain& domain) {
  TemplateAnalysis a = analyze_template(domain, t);
  return check_invariance(a);
}

std::string Verdict::to_json(const Template& t) const {
  nlohmann::json j;
  j["template"] = template_key(t);
  j["status"] = invariant ? "invariant" : "unknown";
  if (invariant) {
    j["proof"] = to_string(proof);
  } else {
    nlohmann::json fs = nlohmann::json::array();
    for (const Failure& f : failures) {
      nlohmann::json jf;
      jf["schema"] = f.schema;
      jf["fragment"] = to_string(f.fragment);
      jf["class"] = f.class_signature;
      jf["classification"] = to_string(f.classification);
      if (f.relevant_literal)
        jf["literal"] = print_literal(*f.relevant_literal);
      fs.push_back(jf);
    }
    j["failures"] = fs;
  }
  return j.dump();
}

}  // namespace tempinv
