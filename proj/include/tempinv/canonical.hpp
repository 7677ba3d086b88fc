// Canonical planning model: schemas whose conditions and effects are sets of
// universally quantified positive literals, durative actions split into
// (start, invariant, end) triples, and types compiled to static unary
// relations checked as preconditions.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempinv/pddl.hpp"

namespace tempinv {

enum class ArgKind { Free, Const, Quant };

struct Arg {
  ArgKind kind = ArgKind::Free;
  std::string name;     // Free/Const
  int quant_index = -1; // Quant: local index in order of first occurrence

  static Arg free_var(std::string n) { return {ArgKind::Free, std::move(n), -1}; }
  static Arg constant(std::string n) { return {ArgKind::Const, std::move(n), -1}; }
  static Arg quant(int idx) { return {ArgKind::Quant, "", idx}; }

  bool operator==(const Arg& o) const {
    if (kind != o.kind) return false;
    return kind == ArgKind::Quant ? quant_index == o.quant_index
                                  : name == o.name;
  }
  bool operator<(const Arg& o) const {
    if (kind != o.kind) return kind < o.kind;
    return kind == ArgKind::Quant ? quant_index < o.quant_index
                                  : name < o.name;
  }
};

// One canonical literal: relation applied to free variables, constants and
// locally-quantified positions. Sign is carried by set membership, not here.
struct Literal {
  std::string relation;
  std::vector<Arg> args;

  bool quantified() const {
    for (const Arg& a : args)
      if (a.kind == ArgKind::Quant) return true;
    return false;
  }
  // distinct quantified variables
  int quant_var_count() const {
    int mx = -1;
    for (const Arg& a : args)
      if (a.kind == ArgKind::Quant && a.quant_index > mx) mx = a.quant_index;
    return mx + 1;
  }
  std::vector<int> quant_positions() const {
    std::vector<int> out;
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i].kind == ArgKind::Quant) out.push_back((int)i);
    return out;
  }

  bool operator==(const Literal& o) const {
    return relation == o.relation && args == o.args;
  }
  bool operator<(const Literal& o) const {
    if (relation != o.relation) return relation < o.relation;
    return args < o.args;
  }
};

std::string print_literal(const Literal& l);

// Sorted, duplicate-free literal set.
class LiteralSet {
 public:
  LiteralSet() = default;

  void insert(Literal l);
  bool contains(const Literal& l) const;
  void erase(const Literal& l);
  bool empty() const { return lits_.empty(); }
  size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const std::vector<Literal>& items() const { return lits_; }

  LiteralSet set_union(const LiteralSet& o) const;
  LiteralSet set_minus(const LiteralSet& o) const;
  LiteralSet set_intersect(const LiteralSet& o) const;

  bool operator==(const LiteralSet& o) const { return lits_ == o.lits_; }

 private:
  std::vector<Literal> lits_;
};

struct InstantaneousSchema {
  std::string name;
  std::vector<std::string> params;  // free argument names, renamed apart
  LiteralSet pre_plus, pre_minus, eff_plus, eff_minus;

  LiteralSet all_literals() const;
};

struct DurativeSchema {
  std::string name;
  std::vector<std::string> params;
  InstantaneousSchema st, inv, end;

  LiteralSet all_literals() const;
};

struct RelationInfo {
  std::string name;
  int arity = 0;
  std::vector<std::string> param_types;  // "object" entries when untyped
  bool is_static = false;
  bool type_relation = false;  // synthesized is-T relation
};

class CanonError : public std::runtime_error {
 public:
  enum class Kind { Unsupported, IllegalDurative, NameClash, Other };

  CanonError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CanonicalDomain {
  std::string name;
  std::vector<RelationInfo> relations;  // sorted by name
  std::vector<std::pair<std::string, std::string>> types;  // name -> parent
  std::vector<TypedVar> constants;
  std::vector<InstantaneousSchema> inst_schemas;
  std::vector<DurativeSchema> dur_schemas;

  const RelationInfo* find_relation(const std::string& n) const;
  bool is_modifiable(const std::string& relation) const;
  // All supertypes of ty including itself (and "object").
  std::vector<std::string> type_closure(const std::string& ty) const;
};

// Normalizes one formula (no temporal annotations) into positive/negative
// literal sets. Throws CanonError(Unsupported) on disjunction, existential,
// conditional effect, equality, or negated compound.
enum class Polarity { Positive, Negative };
std::pair<LiteralSet, LiteralSet> normalize_formula(const Formula& f,
                                                    Polarity polarity);

CanonicalDomain canonicalize(const RawDomain& raw);

// Deterministic s-expression form of a canonical domain, and its reader.
std::string emit_canonical(const CanonicalDomain& d);
CanonicalDomain parse_canonical(const std::string& text,
                                const std::string& filename);

// Name of the unary static relation for a type.
std::string type_relation_name(const std::string& type);

}  // namespace tempinv
