#include "tempinv/template.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tempinv {

Template Template::make(std::vector<Component> components,
                        std::vector<std::vector<FixedArg>> blocks) {
  if (components.empty())
    throw CanonError(CanonError::Kind::Other, "template needs a component");
  // sort components, remap block references
  std::vector<int> order(components.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return components[(size_t)a] < components[(size_t)b];
  });
  std::vector<int> inv(order.size());
  for (size_t i = 0; i < order.size(); ++i) inv[(size_t)order[i]] = (int)i;
  std::vector<Component> sorted;
  for (int i : order) sorted.push_back(components[(size_t)i]);
  for (auto& blk : blocks)
    for (FixedArg& fa : blk) fa.comp = inv[(size_t)fa.comp];

  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1])
      throw CanonError(CanonError::Kind::Other, "duplicate template component");

  // admissibility: each block holds exactly one fixed argument per component
  std::set<FixedArg> seen;
  for (auto& blk : blocks) {
    std::vector<int> per_comp(sorted.size(), 0);
    for (const FixedArg& fa : blk) {
      if (fa.comp < 0 || fa.comp >= (int)sorted.size())
        throw CanonError(CanonError::Kind::Other, "bad component index");
      const Component& c = sorted[(size_t)fa.comp];
      if (fa.pos < 0 || fa.pos >= c.arity || fa.pos == c.counted)
        throw CanonError(CanonError::Kind::Other, "not a fixed position");
      if (!seen.insert(fa).second)
        throw CanonError(CanonError::Kind::Other, "fixed argument reused");
      per_comp[(size_t)fa.comp]++;
    }
    for (int n : per_comp)
      if (n != 1)
        throw CanonError(CanonError::Kind::Other,
                         "partition not admissible: a block must contain "
                         "exactly one fixed argument of every component");
  }
  // every fixed argument covered
  for (size_t ci = 0; ci < sorted.size(); ++ci)
    for (int pos : sorted[ci].fixed_positions())
      if (!seen.count(FixedArg{(int)ci, pos}))
        throw CanonError(CanonError::Kind::Other,
                         "partition not admissible: uncovered fixed argument");

  // canonical block order: ascending positions of component 0
  std::sort(blocks.begin(), blocks.end(),
            [&](const std::vector<FixedArg>& a,
                const std::vector<FixedArg>& b) {
              auto pos0 = [&](const std::vector<FixedArg>& blk) {
                for (const FixedArg& fa : blk)
                  if (fa.comp == 0) return fa.pos;
                return -1;
              };
              return pos0(a) < pos0(b);
            });
  for (auto& blk : blocks) std::sort(blk.begin(), blk.end());

  Template t;
  t.components_ = std::move(sorted);
  t.blocks_ = std::move(blocks);
  return t;
}

Template Template::single(Component c) {
  std::vector<std::vector<FixedArg>> blocks;
  for (int pos : c.fixed_positions()) blocks.push_back({FixedArg{0, pos}});
  return make({std::move(c)}, std::move(blocks));
}

int Template::block_of(int comp, int pos) const {
  for (size_t b = 0; b < blocks_.size(); ++b)
    for (const FixedArg& fa : blocks_[b])
      if (fa.comp == comp && fa.pos == pos) return (int)b;
  return -1;
}

int Template::position_in_block(int b, int comp) const {
  for (const FixedArg& fa : blocks_[(size_t)b])
    if (fa.comp == comp) return fa.pos;
  return -1;
}

bool Template::operator==(const Template& o) const {
  return template_key(*this) == template_key(o);
}

std::string template_key(const Template& t) {
  // Fixed positions are listed in block order so that the partition is
  // readable off the key; the counted position is bracketed and last.
  std::string out = "{";
  for (size_t ci = 0; ci < t.components().size(); ++ci) {
    if (ci) out += ", ";
    const Component& c = t.components()[(size_t)ci];
    out += c.relation;
    for (int b = 0; b < t.k(); ++b)
      out += " " + std::to_string(t.position_in_block(b, (int)ci));
    if (c.has_counted()) out += " [" + std::to_string(c.counted) + "]";
  }
  return out + "}";
}

Template parse_template_key(const CanonicalDomain& domain,
                            const std::string& key) {
  auto bad = [&](const std::string& why) -> CanonError {
    return CanonError(CanonError::Kind::Other,
                      "bad template key '" + key + "': " + why);
  };
  std::string s = key;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw bad("expected {...}");
  s = s.substr(1, s.size() - 2);

  std::vector<Component> comps;
  std::vector<std::vector<int>> fixed_by_rank;  // per comp: block rank -> pos
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && s[i] == ' ') ++i; };
  while (i < s.size()) {
    skip_ws();
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != ',') ++j;
    std::string rel = s.substr(i, j - i);
    if (rel.empty()) throw bad("missing relation name");
    i = j;
    std::vector<int> fixed;
    int counted = -1;
    while (true) {
      skip_ws();
      if (i >= s.size() || s[i] == ',') break;
      bool bracket = s[i] == '[';
      if (bracket) ++i;
      size_t k = i;
      while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
      if (k == i) throw bad("expected position number");
      int pos = std::stoi(s.substr(i, k - i));
      i = k;
      if (bracket) {
        if (i >= s.size() || s[i] != ']') throw bad("missing ']'");
        ++i;
        if (counted >= 0) throw bad("two counted positions");
        counted = pos;
      } else {
        fixed.push_back(pos);
      }
    }
    if (i < s.size() && s[i] == ',') ++i;
    const RelationInfo* r = domain.find_relation(rel);
    if (!r) throw bad("unknown relation '" + rel + "'");
    int arity = (int)fixed.size() + (counted >= 0 ? 1 : 0);
    if (arity != r->arity)
      throw bad("positions do not cover arity of '" + rel + "'");
    Component c{rel, arity, counted >= 0 ? counted : arity};
    comps.push_back(c);
    fixed_by_rank.push_back(fixed);
  }
  if (comps.empty()) throw bad("no components");
  size_t k = fixed_by_rank[0].size();
  std::vector<std::vector<FixedArg>> blocks(k);
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    if (fixed_by_rank[ci].size() != k)
      throw bad("components disagree on fixed-argument count");
    for (size_t b = 0; b < k; ++b)
      blocks[b].push_back(FixedArg{(int)ci, fixed_by_rank[ci][b]});
  }
  return Template::make(std::move(comps), std::move(blocks));
}

SymWeight sym_add(SymWeight a, SymWeight b) {
  if (a == SymWeight::Zero) return b;
  if (b == SymWeight::Zero) return a;
  return SymWeight::Many;  // One+One saturates
}

SymWeight literal_weight(const Literal& l) {
  return l.quantified() ? SymWeight::Many : SymWeight::One;
}

SymWeight set_weight(const std::vector<Literal>& ls) {
  SymWeight w = SymWeight::Zero;
  for (const Literal& l : ls) w = sym_add(w, literal_weight(l));
  return w;
}

std::vector<TemplateInstance> enumerate_instances(
    const Template& t, const std::vector<std::string>& objects) {
  std::vector<TemplateInstance> out;
  int k = t.k();
  TemplateInstance cur;
  std::vector<bool> used(objects.size(), false);
  // injective assignments of objects to blocks, lexicographic
  auto rec = [&](auto&& self, int block) -> void {
    if (block == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = 0; i < objects.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(objects[i]);
      self(self, block + 1);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec, 0);
  return out;
}

ObjectUniverse ObjectUniverse::untyped(std::vector<std::string> objects) {
  ObjectUniverse u;
  u.objects = std::move(objects);
  return u;
}

ObjectUniverse ObjectUniverse::typed(const CanonicalDomain& domain,
                                     const std::vector<TypedVar>& objects) {
  ObjectUniverse u;
  u.domain = &domain;
  for (const TypedVar& o : objects) {
    u.objects.push_back(o.name);
    u.object_types.push_back(domain.type_closure(o.type));
  }
  return u;
}

bool ObjectUniverse::object_has_type(int obj_index,
                                     const std::string& type) const {
  if (!domain) return true;
  if (type == "object") return true;
  const auto& tys = object_types[(size_t)obj_index];
  return std::find(tys.begin(), tys.end(), type) != tys.end();
}

std::string print_atom(const GroundAtom& a) {
  std::string out = a.relation + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += a.args[i];
  }
  return out + ")";
}

std::vector<GroundAtom> instantiate(const Template& t,
                                    const TemplateInstance& inst,
                                    const ObjectUniverse& universe) {
  std::vector<GroundAtom> out;
  const RelationInfo* sig = nullptr;
  auto arg_ok = [&](int pos, const std::string& obj) {
    if (!universe.domain || !sig) return true;
    auto it = std::find(universe.objects.begin(), universe.objects.end(), obj);
    if (it == universe.objects.end()) return false;
    int oi = (int)(it - universe.objects.begin());
    return universe.object_has_type(oi, sig->param_types[(size_t)pos]);
  };
  for (size_t ci = 0; ci < t.components().size(); ++ci) {
    const Component& c = t.components()[ci];
    sig = universe.domain ? universe.domain->find_relation(c.relation) : nullptr;
    GroundAtom base;
    base.relation = c.relation;
    base.args.assign((size_t)c.arity, "");
    bool fixed_ok = true;
    for (int b = 0; b < t.k(); ++b) {
      int pos = t.position_in_block(b, (int)ci);
      base.args[(size_t)pos] = inst[(size_t)b];
      if (!arg_ok(pos, inst[(size_t)b])) fixed_ok = false;
    }
    if (!fixed_ok) continue;
    if (!c.has_counted()) {
      out.push_back(base);
      continue;
    }
    for (size_t oi = 0; oi < universe.objects.size(); ++oi) {
      if (!arg_ok(c.counted, universe.objects[oi])) continue;
      GroundAtom a = base;
      a.args[(size_t)c.counted] = universe.objects[oi];
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t instance_weight(const std::vector<GroundAtom>& state,
                       const std::vector<GroundAtom>& instantiation) {
  // both sorted
  size_t n = 0;
  auto it = state.begin();
  for (const GroundAtom& a : instantiation) {
    it = std::lower_bound(it, state.end(), a);
    if (it == state.end()) break;
    if (*it == a) ++n;
  }
  return n;
}

}  // namespace tempinv
