#include "tempinv/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tempinv {

std::string print_literal(const Literal& l) {
  std::string out = "(" + l.relation;
  for (const Arg& a : l.args) {
    out += ' ';
    switch (a.kind) {
      case ArgKind::Free: out += "?" + a.name; break;
      case ArgKind::Const: out += a.name; break;
      case ArgKind::Quant: out += "?q" + std::to_string(a.quant_index); break;
    }
  }
  return out + ")";
}

void LiteralSet::insert(Literal l) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
  if (it == lits_.end() || !(*it == l)) lits_.insert(it, std::move(l));
}

bool LiteralSet::contains(const Literal& l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

void LiteralSet::erase(const Literal& l) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
  if (it != lits_.end() && *it == l) lits_.erase(it);
}

LiteralSet LiteralSet::set_union(const LiteralSet& o) const {
  LiteralSet out = *this;
  for (const Literal& l : o.lits_) out.insert(l);
  return out;
}

LiteralSet LiteralSet::set_minus(const LiteralSet& o) const {
  LiteralSet out;
  for (const Literal& l : lits_)
    if (!o.contains(l)) out.insert(l);
  return out;
}

LiteralSet LiteralSet::set_intersect(const LiteralSet& o) const {
  LiteralSet out;
  for (const Literal& l : lits_)
    if (o.contains(l)) out.insert(l);
  return out;
}

LiteralSet InstantaneousSchema::all_literals() const {
  return pre_plus.set_union(pre_minus).set_union(eff_plus).set_union(eff_minus);
}

LiteralSet DurativeSchema::all_literals() const {
  return st.all_literals().set_union(inv.all_literals()).set_union(
      end.all_literals());
}

const RelationInfo* CanonicalDomain::find_relation(const std::string& n) const {
  for (const RelationInfo& r : relations)
    if (r.name == n) return &r;
  return nullptr;
}

bool CanonicalDomain::is_modifiable(const std::string& relation) const {
  const RelationInfo* r = find_relation(relation);
  return r && !r->is_static;
}

std::vector<std::string> CanonicalDomain::type_closure(
    const std::string& ty) const {
  std::vector<std::string> out;
  std::string cur = ty;
  while (true) {
    out.push_back(cur);
    if (cur == "object") break;
    std::string parent = "object";
    for (auto& t : types)
      if (t.first == cur) parent = t.second;
    cur = parent;
  }
  return out;
}

std::string type_relation_name(const std::string& type) {
  return "is-" + type;
}

namespace {

[[noreturn]] void unsupported(const std::string& what) {
  throw CanonError(CanonError::Kind::Unsupported,
                   "unsupported construct: " + what);
}

struct QuantScope {
  std::vector<std::string> vars;  // innermost last
  int index_of(const std::string& n) const {
    for (int i = (int)vars.size() - 1; i >= 0; --i)
      if (vars[(size_t)i] == n) return i;
    return -1;
  }
};

Literal make_literal(const Formula& atom, const QuantScope& scope) {
  Literal l;
  l.relation = atom.pred;
  std::map<int, int> local;  // scope index -> local quant index
  for (const Term& t : atom.args) {
    if (!t.is_var) {
      l.args.push_back(Arg::constant(t.name));
      continue;
    }
    int si = scope.index_of(t.name);
    if (si < 0) {
      l.args.push_back(Arg::free_var(t.name.substr(1)));  // drop '?'
    } else {
      auto [it, fresh] = local.emplace(si, (int)local.size());
      l.args.push_back(Arg::quant(it->second));
      (void)fresh;
    }
  }
  return l;
}

// Pushes conjunction/negation/universals down to literals. `negated` tracks
// the sign context, `scope` the enclosing universal variables.
void normalize_into(const Formula& f, bool negated, QuantScope& scope,
                    LiteralSet& plus, LiteralSet& minus) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      Literal l = make_literal(f, scope);
      (negated ? minus : plus).insert(std::move(l));
      return;
    }
    case Formula::Kind::Not:
      if (negated) {
        // double negation
        normalize_into(f.children[0], false, scope, plus, minus);
        return;
      }
      if (f.children[0].kind != Formula::Kind::Atom &&
          f.children[0].kind != Formula::Kind::Not)
        unsupported("negated compound formula");
      normalize_into(f.children[0], true, scope, plus, minus);
      return;
    case Formula::Kind::And:
      if (negated) unsupported("negated conjunction");
      for (const Formula& c : f.children)
        normalize_into(c, false, scope, plus, minus);
      return;
    case Formula::Kind::Or:
      unsupported("disjunction");
    case Formula::Kind::Exists:
      unsupported("existential quantifier");
    case Formula::Kind::When:
      unsupported("conditional effect");
    case Formula::Kind::Equals:
      unsupported("equality atom");
    case Formula::Kind::Timed:
      unsupported("nested temporal annotation");
    case Formula::Kind::Forall: {
      if (negated) unsupported("negated universal quantifier");
      size_t base = scope.vars.size();
      for (const TypedVar& v : f.quant_vars) {
        if (v.type != "object")
          fprintf(stderr,
                  "warning: typed quantified variable %s - %s ranges over all "
                  "objects\n",
                  v.name.c_str(), v.type.c_str());
        scope.vars.push_back(v.name);
      }
      // distribute over an inner conjunction; body literals keep the
      // quantifier
      const Formula* body = &f.children[0];
      if (body->kind == Formula::Kind::And) {
        for (const Formula& c : *&body->children)
          normalize_into(c, false, scope, plus, minus);
      } else {
        normalize_into(*body, false, scope, plus, minus);
      }
      scope.vars.resize(base);
      return;
    }
  }
}

struct TimedSets {
  Formula st{}, inv{}, end{};
};

// Splits a durative condition/effect conjunction by its annotations.
TimedSets split_timed(const Formula& f, bool is_effect) {
  TimedSets out;
  out.st.kind = Formula::Kind::And;
  out.inv.kind = Formula::Kind::And;
  out.end.kind = Formula::Kind::And;
  auto route = [&](const Formula& g) {
    if (g.kind != Formula::Kind::Timed)
      unsupported("durative formula without temporal annotation");
    switch (g.tag) {
      case TimeTag::AtStart: out.st.children.push_back(g.children[0]); break;
      case TimeTag::OverAll:
        if (is_effect) unsupported("over-all effect");
        out.inv.children.push_back(g.children[0]);
        break;
      case TimeTag::AtEnd: out.end.children.push_back(g.children[0]); break;
    }
  };
  if (f.kind == Formula::Kind::And) {
    for (const Formula& c : f.children) route(c);
  } else {
    route(f);
  }
  return out;
}

InstantaneousSchema normalize_schema_part(const std::string& name,
                                          const std::vector<std::string>& params,
                                          const Formula& cond,
                                          const Formula& eff) {
  InstantaneousSchema s;
  s.name = name;
  s.params = params;
  QuantScope scope;
  normalize_into(cond, false, scope, s.pre_plus, s.pre_minus);
  normalize_into(eff, false, scope, s.eff_plus, s.eff_minus);
  return s;
}

void rename_args(LiteralSet& set, const std::map<std::string, std::string>& m) {
  LiteralSet out;
  for (Literal l : set) {
    for (Arg& a : l.args)
      if (a.kind == ArgKind::Free) a.name = m.at(a.name);
    out.insert(std::move(l));
  }
  set = out;
}

void rename_schema(InstantaneousSchema& s,
                   const std::map<std::string, std::string>& m) {
  for (std::string& p : s.params) p = m.at(p);
  rename_args(s.pre_plus, m);
  rename_args(s.pre_minus, m);
  rename_args(s.eff_plus, m);
  rename_args(s.eff_minus, m);
}

void check_illegal_durative(const DurativeSchema& d) {
  auto reject = [&](const Literal& l, int which) {
    throw CanonError(CanonError::Kind::IllegalDurative,
                     "illegal durative schema '" + d.name + "': literal " +
                         print_literal(l) + " violates condition " +
                         std::to_string(which));
  };
  // 1. l in Pre-inv and l in (Pre+st \ Eff-st) u Eff+st
  for (const Literal& l : d.inv.pre_minus) {
    if ((d.st.pre_plus.contains(l) && !d.st.eff_minus.contains(l)) ||
        d.st.eff_plus.contains(l))
      reject(l, 1);
  }
  // 2. l in Pre+inv and l in (Pre-st \ Eff+st) u Eff-st
  for (const Literal& l : d.inv.pre_plus) {
    if ((d.st.pre_minus.contains(l) && !d.st.eff_plus.contains(l)) ||
        d.st.eff_minus.contains(l))
      reject(l, 2);
  }
  // 3. l in Pre+inv and l in Pre-end
  for (const Literal& l : d.inv.pre_plus)
    if (d.end.pre_minus.contains(l)) reject(l, 3);
  // 4. l in Pre-inv and l in Pre+end
  for (const Literal& l : d.inv.pre_minus)
    if (d.end.pre_plus.contains(l)) reject(l, 4);
}

}  // namespace

std::pair<LiteralSet, LiteralSet> normalize_formula(const Formula& f,
                                                    Polarity polarity) {
  LiteralSet plus, minus;
  QuantScope scope;
  normalize_into(f, polarity == Polarity::Negative, scope, plus, minus);
  return {std::move(plus), std::move(minus)};
}

CanonicalDomain canonicalize(const RawDomain& raw) {
  CanonicalDomain dom;
  dom.name = raw.name;
  dom.types = raw.types;
  dom.constants = raw.constants;

  std::set<std::string> type_names;
  for (auto& t : raw.types) type_names.insert(t.first);

  // declared predicates
  for (const Predicate& p : raw.predicates) {
    RelationInfo r;
    r.name = p.name;
    r.arity = (int)p.params.size();
    for (const TypedVar& v : p.params) r.param_types.push_back(v.type);
    dom.relations.push_back(std::move(r));
  }
  // type relations
  for (const std::string& t : type_names) {
    std::string rn = type_relation_name(t);
    if (raw.find_predicate(rn))
      throw CanonError(CanonError::Kind::NameClash,
                       "predicate '" + rn + "' clashes with the relation "
                       "synthesized for type '" + t + "'");
    RelationInfo r;
    r.name = rn;
    r.arity = 1;
    r.param_types = {"object"};
    r.type_relation = true;
    dom.relations.push_back(std::move(r));
  }
  std::sort(dom.relations.begin(), dom.relations.end(),
            [](const RelationInfo& a, const RelationInfo& b) {
              return a.name < b.name;
            });

  int ordinal = 0;
  for (const RawAction& a : raw.actions) {
    ++ordinal;
    std::vector<std::string> params;
    LiteralSet typing;  // is-T(v) preconditions
    for (const TypedVar& v : a.params) {
      params.push_back(v.name.substr(1));  // drop '?'
      if (v.type != "object") {
        Literal l;
        l.relation = type_relation_name(v.type);
        l.args.push_back(Arg::free_var(v.name.substr(1)));
        typing.insert(std::move(l));
      }
    }
    // rename apart: v -> v_<ordinal>
    std::map<std::string, std::string> renaming;
    for (const std::string& p : params) renaming[p] = p + "_" + std::to_string(ordinal);

    if (!a.durative) {
      InstantaneousSchema s =
          normalize_schema_part(a.name, params, a.condition, a.effect);
      s.pre_plus = s.pre_plus.set_union(typing);
      rename_schema(s, renaming);
      dom.inst_schemas.push_back(std::move(s));
    } else {
      TimedSets cond = split_timed(a.condition, false);
      TimedSets eff = split_timed(a.effect, true);
      DurativeSchema d;
      d.name = a.name;
      d.params = params;
      d.st = normalize_schema_part(a.name + "^st", params, cond.st, eff.st);
      d.inv = normalize_schema_part(a.name + "^inv", params, cond.inv,
                                    Formula{});
      d.end = normalize_schema_part(a.name + "^end", params, cond.end, eff.end);
      d.st.pre_plus = d.st.pre_plus.set_union(typing);
      check_illegal_durative(d);
      for (std::string& p : d.params) p = renaming.at(p);
      rename_schema(d.st, renaming);
      rename_schema(d.inv, renaming);
      rename_schema(d.end, renaming);
      dom.dur_schemas.push_back(std::move(d));
    }
  }

  // static = absent from every effect
  std::set<std::string> in_effects;
  auto collect = [&](const InstantaneousSchema& s) {
    for (const Literal& l : s.eff_plus) in_effects.insert(l.relation);
    for (const Literal& l : s.eff_minus) in_effects.insert(l.relation);
  };
  for (const InstantaneousSchema& s : dom.inst_schemas) collect(s);
  for (const DurativeSchema& d : dom.dur_schemas) {
    collect(d.st);
    collect(d.inv);
    collect(d.end);
  }
  for (RelationInfo& r : dom.relations)
    r.is_static = in_effects.find(r.name) == in_effects.end();

  return dom;
}

namespace {

std::string schema_part_sexpr(const InstantaneousSchema& s,
                              const std::string& tag) {
  auto set_sexpr = [](const char* tag2, const LiteralSet& set) {
    std::string out = std::string("(") + tag2;
    for (const Literal& l : set) {
      if (!l.quantified()) {
        out += " " + print_literal(l);
        continue;
      }
      out += " (forall (";
      for (int q = 0; q < l.quant_var_count(); ++q) {
        if (q) out += ' ';
        out += "?q" + std::to_string(q);
      }
      out += ") " + print_literal(l) + ")";
    }
    return out + ")";
  };
  std::string out = "    (" + tag + " ";
  out += set_sexpr("pre+", s.pre_plus) + " ";
  out += set_sexpr("pre-", s.pre_minus) + " ";
  out += set_sexpr("eff+", s.eff_plus) + " ";
  out += set_sexpr("eff-", s.eff_minus) + ")";
  return out;
}

std::string params_sexpr(const std::vector<std::string>& params) {
  std::string out = "(params";
  for (const std::string& p : params) out += " ?" + p;
  return out + ")";
}

}  // namespace

std::string emit_canonical(const CanonicalDomain& d) {
  std::string out = "(canonical-domain\n  (name " + d.name + ")\n";
  out += "  (types";
  for (auto& t : d.types) out += " (" + t.first + " " + t.second + ")";
  out += ")\n";
  if (!d.constants.empty()) {
    out += "  (constants";
    for (auto& c : d.constants) out += " (" + c.name + " " + c.type + ")";
    out += ")\n";
  }
  out += "  (relations\n";
  for (const RelationInfo& r : d.relations) {
    out += "    (" + r.name + " " + std::to_string(r.arity) + " (";
    for (size_t i = 0; i < r.param_types.size(); ++i) {
      if (i) out += ' ';
      out += r.param_types[i];
    }
    out += ")";
    if (r.is_static) out += " static";
    if (r.type_relation) out += " type-relation";
    out += ")\n";
  }
  out += "  )\n";
  for (const InstantaneousSchema& s : d.inst_schemas) {
    out += "  (instantaneous (name " + s.name + ") " + params_sexpr(s.params) +
           "\n" + schema_part_sexpr(s, "body") + ")\n";
  }
  for (const DurativeSchema& s : d.dur_schemas) {
    out += "  (durative (name " + s.name + ") " + params_sexpr(s.params) + "\n";
    out += schema_part_sexpr(s.st, "start") + "\n";
    out += schema_part_sexpr(s.inv, "invariant") + "\n";
    out += schema_part_sexpr(s.end, "end") + ")\n";
  }
  out += ")\n";
  return out;
}

namespace {

[[noreturn]] void cfail(const std::string& file, SourcePos pos,
                        const std::string& msg) {
  throw ParseError(file, pos, msg);
}

Literal parse_canonical_literal(const std::string& file, const Sexpr& e,
                                std::map<std::string, int>* qvars) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list)
    cfail(file, e.pos, "malformed literal");
  Literal l;
  l.relation = e.items[0].atom;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const std::string& a = e.items[i].atom;
    if (e.items[i].is_list) cfail(file, e.items[i].pos, "malformed argument");
    if (!a.empty() && a[0] == '?') {
      std::string bare = a.substr(1);
      if (qvars && qvars->count(bare))
        l.args.push_back(Arg::quant((*qvars)[bare]));
      else
        l.args.push_back(Arg::free_var(bare));
    } else {
      l.args.push_back(Arg::constant(a));
    }
  }
  return l;
}

LiteralSet parse_canonical_set(const std::string& file, const Sexpr& e) {
  LiteralSet out;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const Sexpr& le = e.items[i];
    if (le.head() == "forall") {
      if (le.items.size() != 3 || !le.items[1].is_list)
        cfail(file, le.pos, "malformed forall literal");
      std::map<std::string, int> qvars;
      for (const Sexpr& v : le.items[1].items)
        qvars[v.atom.substr(1)] = (int)qvars.size();
      out.insert(parse_canonical_literal(file, le.items[2], &qvars));
    } else {
      out.insert(parse_canonical_literal(file, le, nullptr));
    }
  }
  return out;
}

InstantaneousSchema parse_schema_part(const std::string& file, const Sexpr& e,
                                      const std::string& name,
                                      const std::vector<std::string>& params) {
  InstantaneousSchema s;
  s.name = name;
  s.params = params;
  if (e.items.size() != 5) cfail(file, e.pos, "malformed schema part");
  s.pre_plus = parse_canonical_set(file, e.items[1]);
  s.pre_minus = parse_canonical_set(file, e.items[2]);
  s.eff_plus = parse_canonical_set(file, e.items[3]);
  s.eff_minus = parse_canonical_set(file, e.items[4]);
  return s;
}

}  // namespace

CanonicalDomain parse_canonical(const std::string& text,
                                const std::string& filename) {
  std::vector<Sexpr> forms = parse_sexprs(text, filename);
  if (forms.size() != 1 || forms[0].head() != "canonical-domain")
    cfail(filename, forms.empty() ? SourcePos{} : forms[0].pos,
          "expected (canonical-domain ...)");
  CanonicalDomain d;
  for (size_t i = 1; i < forms[0].items.size(); ++i) {
    const Sexpr& sec = forms[0].items[i];
    const std::string& h = sec.head();
    if (h == "name") {
      d.name = sec.items[1].atom;
    } else if (h == "types") {
      for (size_t j = 1; j < sec.items.size(); ++j)
        d.types.emplace_back(sec.items[j].items[0].atom,
                             sec.items[j].items[1].atom);
    } else if (h == "constants") {
      for (size_t j = 1; j < sec.items.size(); ++j)
        d.constants.push_back(
            {sec.items[j].items[0].atom, sec.items[j].items[1].atom});
    } else if (h == "relations") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexpr& re = sec.items[j];
        RelationInfo r;
        r.name = re.items[0].atom;
        r.arity = std::stoi(re.items[1].atom);
        for (const Sexpr& t : re.items[2].items)
          r.param_types.push_back(t.atom);
        for (size_t k = 3; k < re.items.size(); ++k) {
          if (re.items[k].is_sym("static")) r.is_static = true;
          if (re.items[k].is_sym("type-relation")) r.type_relation = true;
        }
        d.relations.push_back(std::move(r));
      }
    } else if (h == "instantaneous" || h == "durative") {
      std::string name;
      std::vector<std::string> params;
      std::vector<const Sexpr*> parts;
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexpr& f = sec.items[j];
        if (f.head() == "name") name = f.items[1].atom;
        else if (f.head() == "params") {
          for (size_t k = 1; k < f.items.size(); ++k)
            params.push_back(f.items[k].atom.substr(1));
        } else {
          parts.push_back(&f);
        }
      }
      if (h == "instantaneous") {
        if (parts.size() != 1) cfail(filename, sec.pos, "malformed schema");
        d.inst_schemas.push_back(
            parse_schema_part(filename, *parts[0], name, params));
      } else {
        if (parts.size() != 3) cfail(filename, sec.pos, "malformed schema");
        DurativeSchema ds;
        ds.name = name;
        ds.params = params;
        ds.st = parse_schema_part(filename, *parts[0], name + "^st", params);
        ds.inv = parse_schema_part(filename, *parts[1], name + "^inv", params);
        ds.end = parse_schema_part(filename, *parts[2], name + "^end", params);
        d.dur_schemas.push_back(std::move(ds));
      }
    } else {
      cfail(filename, sec.pos, "unknown canonical section '" + h + "'");
    }
  }
  return d;
}

}  // namespace tempinv

