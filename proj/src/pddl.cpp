#include "tempinv/pddl.hpp"

#include <algorithm>
#include <set>

namespace tempinv {

namespace {

[[noreturn]] void fail(const std::string& file, SourcePos pos,
                       const std::string& msg) {
  throw ParseError(file, pos, msg);
}

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

// Parses a PDDL typed list "a b - t c d - u e" into (name, type) pairs.
// Names left untyped get "object".
std::vector<TypedVar> parse_typed_list(const std::string& file,
                                       const std::vector<Sexpr>& items,
                                       size_t begin, bool want_vars) {
  std::vector<TypedVar> out;
  std::vector<std::string> pending;
  for (size_t i = begin; i < items.size(); ++i) {
    const Sexpr& it = items[i];
    if (it.is_list) fail(file, it.pos, "expected name in typed list");
    if (it.atom == "-") {
      if (i + 1 >= items.size() || items[i + 1].is_list)
        fail(file, it.pos, "expected type after '-'");
      const std::string& ty = items[i + 1].atom;
      for (auto& n : pending) out.push_back({n, ty});
      pending.clear();
      ++i;
      continue;
    }
    if (want_vars != is_variable(it.atom))
      fail(file, it.pos,
           want_vars ? "expected variable (?name)" : "unexpected variable");
    pending.push_back(it.atom);
  }
  for (auto& n : pending) out.push_back({n, "object"});
  return out;
}

class FormulaParser {
 public:
  FormulaParser(std::string file, bool allow_timed)
      : file_(std::move(file)), allow_timed_(allow_timed) {}

  Formula parse(const Sexpr& e) {
    if (!e.is_list) fail(file_, e.pos, "expected formula");
    Formula f;
    f.pos = e.pos;
    const std::string& h = e.head();
    if (h == "and") {
      f.kind = Formula::Kind::And;
      for (size_t i = 1; i < e.items.size(); ++i)
        f.children.push_back(parse(e.items[i]));
      return f;
    }
    if (h == "or") {
      f.kind = Formula::Kind::Or;
      for (size_t i = 1; i < e.items.size(); ++i)
        f.children.push_back(parse(e.items[i]));
      return f;
    }
    if (h == "not") {
      if (e.items.size() != 2) fail(file_, e.pos, "'not' takes one argument");
      f.kind = Formula::Kind::Not;
      f.children.push_back(parse(e.items[1]));
      return f;
    }
    if (h == "forall" || h == "exists") {
      if (e.items.size() != 3 || !e.items[1].is_list)
        fail(file_, e.pos, "'" + h + "' takes a variable list and a body");
      f.kind = h == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists;
      f.quant_vars = parse_typed_list(file_, e.items[1].items, 0, true);
      if (f.quant_vars.empty())
        fail(file_, e.items[1].pos, "empty quantifier variable list");
      f.children.push_back(parse(e.items[2]));
      return f;
    }
    if (h == "when") {
      if (e.items.size() != 3)
        fail(file_, e.pos, "'when' takes a condition and an effect");
      f.kind = Formula::Kind::When;
      f.children.push_back(parse(e.items[1]));
      f.children.push_back(parse(e.items[2]));
      return f;
    }
    if (h == "=") {
      if (e.items.size() != 3) fail(file_, e.pos, "'=' takes two arguments");
      f.kind = Formula::Kind::Equals;
      f.args.push_back(parse_term(e.items[1]));
      f.args.push_back(parse_term(e.items[2]));
      return f;
    }
    // "(at start ...)" only reads as an annotation where one is allowed;
    // otherwise "at" is an ordinary predicate (e.g. Depot's at/2).
    if ((h == "at" || h == "over") && allow_timed_ && e.items.size() == 3 &&
        !e.items[1].is_list &&
        (e.items[1].atom == "start" || e.items[1].atom == "end" ||
         e.items[1].atom == "all")) {
      const std::string& w = e.items[1].atom;
      f.kind = Formula::Kind::Timed;
      if (h == "at" && w == "start")
        f.tag = TimeTag::AtStart;
      else if (h == "at" && w == "end")
        f.tag = TimeTag::AtEnd;
      else if (h == "over" && w == "all")
        f.tag = TimeTag::OverAll;
      else
        fail(file_, e.pos, "unknown temporal annotation '" + h + " " + w + "'");
      // annotations do not nest
      FormulaParser inner(file_, false);
      f.children.push_back(inner.parse(e.items[2]));
      return f;
    }
    if (h.empty()) fail(file_, e.pos, "expected formula");
    // plain atom
    f.kind = Formula::Kind::Atom;
    f.pred = h;
    for (size_t i = 1; i < e.items.size(); ++i)
      f.args.push_back(parse_term(e.items[i]));
    return f;
  }

 private:
  Term parse_term(const Sexpr& e) {
    if (e.is_list) fail(file_, e.pos, "expected term");
    return Term{is_variable(e.atom), e.atom};
  }

  std::string file_;
  bool allow_timed_;
};

// Checks arity against declarations and that every variable is bound by a
// parameter or an enclosing quantifier.
void check_formula(const std::string& file, const RawDomain& d,
                   const Formula& f, std::vector<std::string>& scope) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      const Predicate* p = d.find_predicate(f.pred);
      if (!p)
        throw UndeclaredPredicateError(file, f.pos,
                                       "undeclared predicate '" + f.pred + "'");
      if (p->params.size() != f.args.size())
        fail(file, f.pos,
             "arity mismatch for '" + f.pred + "': expected " +
                 std::to_string(p->params.size()) + ", got " +
                 std::to_string(f.args.size()));
      for (const Term& t : f.args) {
        if (t.is_var &&
            std::find(scope.begin(), scope.end(), t.name) == scope.end())
          fail(file, f.pos, "unbound variable '" + t.name + "'");
      }
      return;
    }
    case Formula::Kind::Equals:
      for (const Term& t : f.args) {
        if (t.is_var &&
            std::find(scope.begin(), scope.end(), t.name) == scope.end())
          fail(file, f.pos, "unbound variable '" + t.name + "'");
      }
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      size_t base = scope.size();
      for (const TypedVar& v : f.quant_vars) scope.push_back(v.name);
      for (const Formula& c : f.children) check_formula(file, d, c, scope);
      scope.resize(base);
      return;
    }
    default:
      for (const Formula& c : f.children) check_formula(file, d, c, scope);
      return;
  }
}

void check_type_declared(const std::string& file, SourcePos pos,
                         const RawDomain& d, const std::string& ty) {
  if (ty == "object") return;
  for (auto& t : d.types)
    if (t.first == ty) return;
  fail(file, pos, "undeclared type '" + ty + "'");
}

}  // namespace

const Predicate* RawDomain::find_predicate(const std::string& n) const {
  for (const Predicate& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

RawDomain parse_domain(const std::string& text, const std::string& filename) {
  std::vector<Sexpr> forms = parse_sexprs(text, filename);
  if (forms.size() != 1 || !forms[0].is_list || forms[0].head() != "define")
    fail(filename, forms.empty() ? SourcePos{} : forms[0].pos,
         "expected a single (define (domain ...) ...) form");
  const Sexpr& top = forms[0];
  if (top.items.size() < 2 || !top.items[1].is_list ||
      top.items[1].head() != "domain" || top.items[1].items.size() != 2)
    fail(filename, top.pos, "expected (domain <name>)");

  RawDomain d;
  d.name = top.items[1].items[1].atom;

  for (size_t i = 2; i < top.items.size(); ++i) {
    const Sexpr& sec = top.items[i];
    if (!sec.is_list) fail(filename, sec.pos, "expected a domain section");
    const std::string& h = sec.head();
    if (h == ":requirements") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const std::string& r = sec.items[j].atom;
        d.requirements.push_back(r);
        if (r != ":typing" && r != ":durative-actions")
          fprintf(stderr, "%s: warning: requirement %s is not honored\n",
                  filename.c_str(), r.c_str());
      }
    } else if (h == ":types") {
      // typed list of type names; parents default to object
      std::vector<TypedVar> ts =
          parse_typed_list(filename, sec.items, 1, false);
      for (auto& t : ts) d.types.emplace_back(t.name, t.type);
    } else if (h == ":constants") {
      d.constants = parse_typed_list(filename, sec.items, 1, false);
    } else if (h == ":predicates") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexpr& pe = sec.items[j];
        if (!pe.is_list || pe.items.empty() || pe.items[0].is_list)
          fail(filename, pe.pos, "malformed predicate declaration");
        Predicate p;
        p.name = pe.items[0].atom;
        if (d.find_predicate(p.name))
          fail(filename, pe.pos, "duplicate predicate '" + p.name + "'");
        p.params = parse_typed_list(filename, pe.items, 1, true);
        d.predicates.push_back(std::move(p));
      }
    } else if (h == ":functions") {
      fprintf(stderr, "%s: warning: :functions section ignored\n",
              filename.c_str());
    } else if (h == ":action" || h == ":durative-action") {
      RawAction a;
      a.pos = sec.pos;
      a.durative = h == ":durative-action";
      if (sec.items.size() < 2 || sec.items[1].is_list)
        fail(filename, sec.pos, "expected action name");
      a.name = sec.items[1].atom;
      for (const RawAction& other : d.actions)
        if (other.name == a.name)
          fail(filename, sec.pos, "duplicate action '" + a.name + "'");
      bool saw_cond = false, saw_eff = false;
      for (size_t j = 2; j + 1 < sec.items.size(); j += 2) {
        const Sexpr& key = sec.items[j];
        const Sexpr& val = sec.items[j + 1];
        if (key.is_list) fail(filename, key.pos, "expected :keyword");
        if (key.atom == ":parameters") {
          if (!val.is_list) fail(filename, val.pos, "expected parameter list");
          a.params = parse_typed_list(filename, val.items, 0, true);
        } else if (key.atom == ":duration") {
          if (!a.durative)
            fail(filename, key.pos, ":duration on instantaneous action");
          a.duration_text = print_sexpr(val);
        } else if (key.atom == ":precondition" || key.atom == ":condition") {
          if ((key.atom == ":condition") != a.durative)
            fail(filename, key.pos, "wrong condition keyword for action kind");
          FormulaParser fp(filename, a.durative);
          a.condition = fp.parse(val);
          saw_cond = true;
        } else if (key.atom == ":effect") {
          FormulaParser fp(filename, a.durative);
          a.effect = fp.parse(val);
          saw_eff = true;
        } else {
          fail(filename, key.pos, "unknown action field '" + key.atom + "'");
        }
      }
      if (!saw_cond) a.condition.kind = Formula::Kind::And;
      if (!saw_eff) a.effect.kind = Formula::Kind::And;
      d.actions.push_back(std::move(a));
    } else {
      fail(filename, sec.pos, "unknown domain section '" + h + "'");
    }
  }

  // referenced types must be declared (or object)
  for (auto& t : d.types)
    if (t.second != "object") check_type_declared(filename, top.pos, d, t.second);
  for (const Predicate& p : d.predicates)
    for (const TypedVar& v : p.params)
      check_type_declared(filename, top.pos, d, v.type);
  for (const RawAction& a : d.actions) {
    for (const TypedVar& v : a.params)
      check_type_declared(filename, a.pos, d, v.type);
    std::vector<std::string> scope;
    for (const TypedVar& v : a.params) scope.push_back(v.name);
    check_formula(filename, d, a.condition, scope);
    check_formula(filename, d, a.effect, scope);
  }
  return d;
}

RawProblem parse_problem(const std::string& text, const std::string& filename,
                         const RawDomain& domain) {
  std::vector<Sexpr> forms = parse_sexprs(text, filename);
  if (forms.size() != 1 || !forms[0].is_list || forms[0].head() != "define")
    fail(filename, forms.empty() ? SourcePos{} : forms[0].pos,
         "expected a single (define (problem ...) ...) form");
  const Sexpr& top = forms[0];
  if (top.items.size() < 2 || !top.items[1].is_list ||
      top.items[1].head() != "problem" || top.items[1].items.size() != 2)
    fail(filename, top.pos, "expected (problem <name>)");

  RawProblem p;
  p.name = top.items[1].items[1].atom;
  p.goal.kind = Formula::Kind::And;

  for (size_t i = 2; i < top.items.size(); ++i) {
    const Sexpr& sec = top.items[i];
    if (!sec.is_list) fail(filename, sec.pos, "expected a problem section");
    const std::string& h = sec.head();
    if (h == ":domain") {
      if (sec.items.size() != 2) fail(filename, sec.pos, "malformed :domain");
      p.domain_name = sec.items[1].atom;
    } else if (h == ":objects") {
      p.objects = parse_typed_list(filename, sec.items, 1, false);
      std::set<std::string> seen;
      for (const TypedVar& o : p.objects)
        if (!seen.insert(o.name).second)
          fail(filename, sec.pos, "duplicate object '" + o.name + "'");
    } else if (h == ":init") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexpr& ae = sec.items[j];
        if (!ae.is_list || ae.items.empty() || ae.items[0].is_list)
          fail(filename, ae.pos, "malformed init atom");
        GroundAtomText g;
        g.pred = ae.items[0].atom;
        g.pos = ae.pos;
        const Predicate* decl = domain.find_predicate(g.pred);
        if (!decl)
          throw UndeclaredPredicateError(
              filename, ae.pos, "undeclared predicate '" + g.pred + "' in :init");
        for (size_t k = 1; k < ae.items.size(); ++k) {
          if (ae.items[k].is_list || is_variable(ae.items[k].atom))
            fail(filename, ae.items[k].pos, "init atoms must be ground");
          g.args.push_back(ae.items[k].atom);
        }
        if (g.args.size() != decl->params.size())
          fail(filename, ae.pos, "arity mismatch for '" + g.pred + "' in :init");
        p.init.push_back(std::move(g));
      }
    } else if (h == ":goal") {
      if (sec.items.size() != 2) fail(filename, sec.pos, "malformed :goal");
      FormulaParser fp(filename, false);
      p.goal = fp.parse(sec.items[1]);
      std::vector<std::string> scope;
      check_formula(filename, domain, p.goal, scope);
    } else if (h == ":metric") {
      fprintf(stderr, "%s: warning: :metric section ignored\n",
              filename.c_str());
    } else {
      fail(filename, sec.pos, "unknown problem section '" + h + "'");
    }
  }
  return p;
}

namespace {

std::string print_typed_list(const std::vector<TypedVar>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += vs[i].name + " - " + vs[i].type;
  }
  return out;
}

}  // namespace

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::string out = "(" + f.pred;
      for (const Term& t : f.args) out += " " + t.name;
      return out + ")";
    }
    case Formula::Kind::Equals:
      return "(= " + f.args[0].name + " " + f.args[1].name + ")";
    case Formula::Kind::Not:
      return "(not " + print_formula(f.children[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const Formula& c : f.children) out += " " + print_formula(c);
      return out + ")";
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string out = f.kind == Formula::Kind::Forall ? "(forall (" : "(exists (";
      out += print_typed_list(f.quant_vars);
      return out + ") " + print_formula(f.children[0]) + ")";
    }
    case Formula::Kind::When:
      return "(when " + print_formula(f.children[0]) + " " +
             print_formula(f.children[1]) + ")";
    case Formula::Kind::Timed: {
      std::string ann = f.tag == TimeTag::AtStart  ? "at start"
                        : f.tag == TimeTag::AtEnd ? "at end"
                                                   : "over all";
      return "(" + ann + " " + print_formula(f.children[0]) + ")";
    }
  }
  return "";
}

std::string print_domain(const RawDomain& d) {
  std::string out = "(define (domain " + d.name + ")\n";
  if (!d.requirements.empty()) {
    out += "  (:requirements";
    for (auto& r : d.requirements) out += " " + r;
    out += ")\n";
  }
  if (!d.types.empty()) {
    out += "  (:types";
    for (auto& t : d.types) out += " " + t.first + " - " + t.second;
    out += ")\n";
  }
  if (!d.constants.empty())
    out += "  (:constants " + print_typed_list(d.constants) + ")\n";
  out += "  (:predicates\n";
  for (const Predicate& p : d.predicates) {
    out += "    (" + p.name;
    if (!p.params.empty()) out += " " + print_typed_list(p.params);
    out += ")\n";
  }
  out += "  )\n";
  for (const RawAction& a : d.actions) {
    out += a.durative ? "  (:durative-action " : "  (:action ";
    out += a.name + "\n";
    out += "    :parameters (" + print_typed_list(a.params) + ")\n";
    if (a.durative) out += "    :duration " + a.duration_text + "\n";
    out += a.durative ? "    :condition " : "    :precondition ";
    out += print_formula(a.condition) + "\n";
    out += "    :effect " + print_formula(a.effect) + ")\n";
  }
  out += ")\n";
  return out;
}

bool formulas_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.pred != b.pred || a.args != b.args ||
      a.quant_vars != b.quant_vars ||
      a.children.size() != b.children.size())
    return false;
  if (a.kind == Formula::Kind::Timed && a.tag != b.tag) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!formulas_equal(a.children[i], b.children[i])) return false;
  return true;
}

bool domains_equal(const RawDomain& a, const RawDomain& b) {
  if (a.name != b.name || a.requirements != b.requirements ||
      a.types != b.types || a.constants != b.constants)
    return false;
  if (a.predicates.size() != b.predicates.size() ||
      a.actions.size() != b.actions.size())
    return false;
  for (size_t i = 0; i < a.predicates.size(); ++i)
    if (a.predicates[i].name != b.predicates[i].name ||
        a.predicates[i].params != b.predicates[i].params)
      return false;
  for (size_t i = 0; i < a.actions.size(); ++i) {
    const RawAction& x = a.actions[i];
    const RawAction& y = b.actions[i];
    if (x.name != y.name || x.params != y.params || x.durative != y.durative ||
        x.duration_text != y.duration_text ||
        !formulas_equal(x.condition, y.condition) ||
        !formulas_equal(x.effect, y.effect))
      return false;
  }
  return true;
}

}  // namespace tempinv
