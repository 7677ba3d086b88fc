// PDDL2.1 frontend: raw domain/problem model and recursive-descent parsing
// over s-expressions. Temporal annotations and duration expressions are kept
// as-is; no normalization happens here.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempinv/sexpr.hpp"

namespace tempinv {

struct TypedVar {
  std::string name;
  std::string type;  // "object" when unspecified

  bool operator==(const TypedVar&) const = default;
};

struct Term {
  bool is_var = false;
  std::string name;

  bool operator==(const Term&) const = default;
};

enum class TimeTag { AtStart, OverAll, AtEnd };

struct Formula {
  enum class Kind {
    Atom,
    Not,
    And,
    Or,
    Forall,
    Exists,
    When,
    Equals,
    Timed,
  };

  Kind kind = Kind::And;
  // Atom
  std::string pred;
  std::vector<Term> args;
  // Not/And/Or/Forall/Exists/When/Timed
  std::vector<Formula> children;
  // Forall/Exists
  std::vector<TypedVar> quant_vars;
  // Timed
  TimeTag tag = TimeTag::AtStart;
  SourcePos pos;
};

struct RawAction {
  std::string name;
  std::vector<TypedVar> params;
  bool durative = false;
  std::string duration_text;  // opaque, durative only
  Formula condition;          // plain or with Timed wrappers (durative)
  Formula effect;
  SourcePos pos;
};

struct Predicate {
  std::string name;
  std::vector<TypedVar> params;
};

struct RawDomain {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<std::pair<std::string, std::string>> types;  // name -> parent
  std::vector<TypedVar> constants;
  std::vector<Predicate> predicates;
  std::vector<RawAction> actions;

  const Predicate* find_predicate(const std::string& n) const;
};

struct GroundAtomText {
  std::string pred;
  std::vector<std::string> args;
  SourcePos pos;
};

struct RawProblem {
  std::string name;
  std::string domain_name;
  std::vector<TypedVar> objects;
  std::vector<GroundAtomText> init;
  Formula goal;
};

class UndeclaredPredicateError : public ParseError {
 public:
  using ParseError::ParseError;
};

RawDomain parse_domain(const std::string& text, const std::string& filename);
RawProblem parse_problem(const std::string& text, const std::string& filename,
                         const RawDomain& domain);

// Deterministic pretty-printer; parse(print(d)) is structurally identical
// to d.
std::string print_domain(const RawDomain& d);
std::string print_formula(const Formula& f);

bool formulas_equal(const Formula& a, const Formula& b);
bool domains_equal(const RawDomain& a, const RawDomain& b);

}  // namespace tempinv
