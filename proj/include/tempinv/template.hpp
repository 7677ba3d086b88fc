// Invariant templates: components with one optional counted argument, an
// admissible partition of the fixed arguments, instances and instantiations
// over a problem's objects, and the saturating symbolic weight.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempinv/canonical.hpp"

namespace tempinv {

struct Component {
  std::string relation;
  int arity = 0;
  int counted = 0;  // == arity when there is no counted argument

  bool has_counted() const { return counted < arity; }
  std::vector<int> fixed_positions() const {
    std::vector<int> out;
    for (int i = 0; i < arity; ++i)
      if (i != counted) out.push_back(i);
    return out;
  }

  bool operator==(const Component&) const = default;
  bool operator<(const Component& o) const {
    if (relation != o.relation) return relation < o.relation;
    if (arity != o.arity) return arity < o.arity;
    return counted < o.counted;
  }
};

// (component index, argument position)
struct FixedArg {
  int comp = 0;
  int pos = 0;
  bool operator==(const FixedArg&) const = default;
  bool operator<(const FixedArg& o) const {
    return comp != o.comp ? comp < o.comp : pos < o.pos;
  }
};

class Template {
 public:
  // Throws CanonError if the partition is not admissible (every block must
  // contain exactly one fixed argument of every component).
  static Template make(std::vector<Component> components,
                       std::vector<std::vector<FixedArg>> blocks);
  // Single component with the only admissible partition.
  static Template single(Component c);

  const std::vector<Component>& components() const { return components_; }
  const std::vector<std::vector<FixedArg>>& blocks() const { return blocks_; }
  int k() const { return (int)blocks_.size(); }
  // block index of a fixed argument
  int block_of(int comp, int pos) const;
  // position of component `comp` in block `b`
  int position_in_block(int b, int comp) const;

  bool operator==(const Template& o) const;

 private:
  std::vector<Component> components_;
  std::vector<std::vector<FixedArg>> blocks_;
};

// Canonical text form, e.g. "{clear 0, painted 0 [1], robot-at 1 [0]}".
// Equal strings iff templates are equal up to component order and block
// naming.
std::string template_key(const Template& t);

// Parses a key against the domain's relation table (for arities).
Template parse_template_key(const CanonicalDomain& domain,
                            const std::string& key);

enum class SymWeight { Zero, One, Many };

SymWeight sym_add(SymWeight a, SymWeight b);
SymWeight literal_weight(const Literal& l);          // One, or Many when quantified
SymWeight set_weight(const std::vector<Literal>& ls);
inline bool sym_is_zero(SymWeight w) { return w == SymWeight::Zero; }
inline bool sym_is_one(SymWeight w) { return w == SymWeight::One; }
inline bool sym_at_most_one(SymWeight w) { return w != SymWeight::Many; }
inline bool sym_at_least_two(SymWeight w) { return w == SymWeight::Many; }

// Instance: one object name per partition block, pairwise distinct.
using TemplateInstance = std::vector<std::string>;

std::vector<TemplateInstance> enumerate_instances(
    const Template& t, const std::vector<std::string>& objects);

// Object universe used for instantiation sweeps. When relation signatures
// are supplied, atoms whose arguments violate the declared parameter types
// are dropped (they can never hold).
struct ObjectUniverse {
  std::vector<std::string> objects;                       // deterministic order
  const CanonicalDomain* domain = nullptr;                // optional typing
  std::vector<std::vector<std::string>> object_types;     // closure per object

  static ObjectUniverse untyped(std::vector<std::string> objects);
  static ObjectUniverse typed(const CanonicalDomain& domain,
                              const std::vector<TypedVar>& objects);
  bool object_has_type(int obj_index, const std::string& type) const;
};

struct GroundAtom {
  std::string relation;
  std::vector<std::string> args;

  bool operator==(const GroundAtom&) const = default;
  bool operator<(const GroundAtom& o) const {
    if (relation != o.relation) return relation < o.relation;
    return args < o.args;
  }
};

std::string print_atom(const GroundAtom& a);

// All ground atoms of the instantiation, sorted.
std::vector<GroundAtom> instantiate(const Template& t,
                                    const TemplateInstance& inst,
                                    const ObjectUniverse& universe);

size_t instance_weight(const std::vector<GroundAtom>& state,
                       const std::vector<GroundAtom>& instantiation);

}  // namespace tempinv
