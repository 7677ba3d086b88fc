#include "tempinv/ground.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace tempinv {

namespace {

std::vector<AtomId> sorted_unique(std::vector<AtomId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool sorted_contains(const std::vector<AtomId>& v, AtomId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

bool sorted_disjoint(const std::vector<AtomId>& a,
                     const std::vector<AtomId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

}  // namespace

GroundContext::GroundContext(const CanonicalDomain& domain,
                             const RawProblem& problem)
    : domain_(&domain) {
  std::vector<TypedVar> objs = problem.objects;
  for (const TypedVar& c : domain.constants) objs.push_back(c);
  universe_ = ObjectUniverse::typed(domain, objs);

  // typed ground-atom universe
  for (const RelationInfo& r : domain.relations) {
    std::vector<std::vector<std::string>> cols((size_t)r.arity);
    for (int p = 0; p < r.arity; ++p)
      for (size_t oi = 0; oi < universe_.objects.size(); ++oi)
        if (universe_.object_has_type((int)oi, r.param_types[(size_t)p]))
          cols[(size_t)p].push_back(universe_.objects[oi]);
    std::vector<size_t> idx((size_t)r.arity, 0);
    if (r.arity == 0) {
      atoms_.push_back(GroundAtom{r.name, {}});
    } else {
      bool any_empty = false;
      for (auto& c : cols) any_empty |= c.empty();
      while (!any_empty) {
        GroundAtom a;
        a.relation = r.name;
        for (int p = 0; p < r.arity; ++p)
          a.args.push_back(cols[(size_t)p][idx[(size_t)p]]);
        atoms_.push_back(std::move(a));
        int p = r.arity - 1;
        while (p >= 0 && ++idx[(size_t)p] == cols[(size_t)p].size()) {
          idx[(size_t)p] = 0;
          --p;
        }
        if (p < 0) break;
      }
    }
  }
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());

  for (size_t i = 0; i < atoms_.size(); ++i) {
    const RelationInfo* r = domain.find_relation(atoms_[i].relation);
    if (r && !r->is_static) modifiable_.push_back((AtomId)i);
  }

  // init: declared atoms plus type-relation facts
  for (const GroundAtomText& g : problem.init) {
    AtomId id = atom_id(GroundAtom{g.pred, g.args});
    if (id < 0)
      throw CanonError(CanonError::Kind::Other,
                       "init atom outside typed universe: " + g.pred);
    init_.push_back(id);
  }
  for (size_t oi = 0; oi < universe_.objects.size(); ++oi) {
    for (const std::string& ty : universe_.object_types[oi]) {
      if (ty == "object") continue;
      AtomId id = atom_id(
          GroundAtom{type_relation_name(ty), {universe_.objects[oi]}});
      if (id >= 0) init_.push_back(id);
    }
  }
  init_ = sorted_unique(std::move(init_));
}

AtomId GroundContext::atom_id(const GroundAtom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || !(*it == a)) return -1;
  return (AtomId)(it - atoms_.begin());
}

std::vector<AtomId> GroundContext::to_ids(
    const std::vector<GroundAtom>& atoms) const {
  std::vector<AtomId> out;
  for (const GroundAtom& a : atoms) {
    AtomId id = atom_id(a);
    if (id >= 0) out.push_back(id);
  }
  return sorted_unique(std::move(out));
}

bool GroundAction::applicable(const std::vector<AtomId>& state) const {
  for (AtomId a : pre_plus)
    if (!sorted_contains(state, a)) return false;
  return sorted_disjoint(pre_minus, state);
}

namespace {

void expand_literal(const Literal& l,
                    const std::map<std::string, std::string>& grounding,
                    const GroundContext& ctx, std::vector<AtomId>& out) {
  int nq = l.quant_var_count();
  const auto& objects = ctx.universe().objects;
  std::vector<size_t> pick((size_t)std::max(nq, 0), 0);
  while (true) {
    GroundAtom a;
    a.relation = l.relation;
    for (const Arg& arg : l.args) {
      switch (arg.kind) {
        case ArgKind::Const:
          a.args.push_back(arg.name);
          break;
        case ArgKind::Free: {
          auto it = grounding.find(arg.name);
          if (it == grounding.end())
            throw std::invalid_argument("grounding not total on " + arg.name);
          a.args.push_back(it->second);
          break;
        }
        case ArgKind::Quant:
          a.args.push_back(objects[pick[(size_t)arg.quant_index]]);
          break;
      }
    }
    AtomId id = ctx.atom_id(a);
    if (id >= 0) out.push_back(id);
    if (nq == 0) return;
    int q = nq - 1;
    while (q >= 0 && ++pick[(size_t)q] == objects.size()) {
      pick[(size_t)q] = 0;
      --q;
    }
    if (q < 0) return;
  }
}

std::vector<AtomId> expand_set(const LiteralSet& set,
                               const std::map<std::string, std::string>& gr,
                               const GroundContext& ctx) {
  std::vector<AtomId> out;
  for (const Literal& l : set) expand_literal(l, gr, ctx, out);
  return sorted_unique(std::move(out));
}

}  // namespace

GroundAction ground_action(const InstantaneousSchema& schema,
                           const std::map<std::string, std::string>& grounding,
                           const GroundContext& ctx) {
  // grounding functions are injective throughout the model
  std::set<std::string> values;
  for (const std::string& p : schema.params) {
    auto it = grounding.find(p);
    if (it == grounding.end())
      throw std::invalid_argument("grounding not total on parameter " + p);
    if (!values.insert(it->second).second)
      throw std::invalid_argument("grounding is not injective");
  }
  GroundAction a;
  a.name = schema.name + "(";
  for (size_t i = 0; i < schema.params.size(); ++i) {
    if (i) a.name += ',';
    a.name += grounding.at(schema.params[i]);
  }
  a.name += ")";
  a.pre_plus = expand_set(schema.pre_plus, grounding, ctx);
  a.pre_minus = expand_set(schema.pre_minus, grounding, ctx);
  a.eff_plus = expand_set(schema.eff_plus, grounding, ctx);
  a.eff_minus = expand_set(schema.eff_minus, grounding, ctx);
  return a;
}

namespace {

// Enumerates injective typed groundings; static preconditions are checked
// against Init (statics never change, so this prune is exact).
template <typename Fn>
void for_each_grounding(const std::vector<std::string>& params,
                        const GroundContext& ctx, Fn&& fn) {
  const auto& objects = ctx.universe().objects;
  std::map<std::string, std::string> gr;
  std::vector<bool> used(objects.size(), false);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == params.size()) {
      fn(gr);
      return;
    }
    for (size_t oi = 0; oi < objects.size(); ++oi) {
      if (used[oi]) continue;
      used[oi] = true;
      gr[params[i]] = objects[oi];
      self(self, i + 1);
      gr.erase(params[i]);
      used[oi] = false;
    }
  };
  rec(rec, 0);
}

bool static_pre_ok(const GroundAction& a, const GroundContext& ctx) {
  const auto& init = ctx.init_atoms();
  for (AtomId id : a.pre_plus) {
    const RelationInfo* r = ctx.domain().find_relation(ctx.atom(id).relation);
    if (r && r->is_static && !sorted_contains(init, id)) return false;
  }
  for (AtomId id : a.pre_minus) {
    const RelationInfo* r = ctx.domain().find_relation(ctx.atom(id).relation);
    if (r && r->is_static && sorted_contains(init, id)) return false;
  }
  return true;
}

bool grounding_typed_ok(const GroundAction& a, const GroundContext& ctx,
                        const LiteralSet& pre_plus,
                        const std::map<std::string, std::string>& gr) {
  // a type precondition whose atom fell outside the typed universe can never
  // hold; expand_set dropped it, so re-check here
  for (const Literal& l : pre_plus) {
    if (l.quantified()) continue;
    GroundAtom atom;
    atom.relation = l.relation;
    bool ok = true;
    for (const Arg& arg : l.args) {
      if (arg.kind == ArgKind::Const) atom.args.push_back(arg.name);
      else if (arg.kind == ArgKind::Free) atom.args.push_back(gr.at(arg.name));
      else ok = false;
    }
    if (ok && ctx.atom_id(atom) < 0) return false;
  }
  (void)a;
  return true;
}

}  // namespace

GroundedInstance ground_all(const GroundContext& ctx) {
  GroundedInstance gi;
  for (const InstantaneousSchema& s : ctx.domain().inst_schemas) {
    for_each_grounding(s.params, ctx, [&](const auto& gr) {
      GroundAction a = ground_action(s, gr, ctx);
      if (!grounding_typed_ok(a, ctx, s.pre_plus, gr)) return;
      if (!static_pre_ok(a, ctx)) return;
      gi.instantaneous.push_back(std::move(a));
    });
  }
  for (const DurativeSchema& d : ctx.domain().dur_schemas) {
    for_each_grounding(d.params, ctx, [&](const auto& gr) {
      GroundDurative g;
      g.st = ground_action(d.st, gr, ctx);
      g.inv = ground_action(d.inv, gr, ctx);
      g.end = ground_action(d.end, gr, ctx);
      g.name = g.st.name.substr(0, g.st.name.find('^')) +
               g.st.name.substr(g.st.name.find('('));
      if (!grounding_typed_ok(g.st, ctx, d.st.pre_plus, gr)) return;
      if (!static_pre_ok(g.st, ctx) || !static_pre_ok(g.inv, ctx) ||
          !static_pre_ok(g.end, ctx))
        return;
      gi.durative.push_back(std::move(g));
    });
  }
  return gi;
}

std::string print_event(const Event& e, const GroundedInstance& gi) {
  switch (e.kind) {
    case Event::Kind::Instant:
      return gi.instantaneous[(size_t)e.index].name;
    case Event::Kind::Start:
      return "start " + gi.durative[(size_t)e.index].name;
    case Event::Kind::End:
      return "end " + gi.durative[(size_t)e.index].name;
  }
  return "";
}

namespace {

bool non_interfering(const GroundAction& a, const GroundAction& b) {
  // no moving targets: Pre_a disjoint from Eff_b (both signs), and add/delete
  // effects do not conflict
  auto pre_vs_eff = [](const GroundAction& x, const GroundAction& y) {
    return sorted_disjoint(x.pre_plus, y.eff_plus) &&
           sorted_disjoint(x.pre_plus, y.eff_minus) &&
           sorted_disjoint(x.pre_minus, y.eff_plus) &&
           sorted_disjoint(x.pre_minus, y.eff_minus);
  };
  return pre_vs_eff(a, b) && pre_vs_eff(b, a) &&
         sorted_disjoint(a.eff_plus, b.eff_minus) &&
         sorted_disjoint(b.eff_plus, a.eff_minus);
}

}  // namespace

std::optional<TimedState> apply_happening(const GroundedInstance& gi,
                                          const TimedState& state,
                                          const std::vector<Event>& events,
                                          InapplicableReason* why) {
  auto fail = [&](InapplicableReason r) -> std::optional<TimedState> {
    if (why) *why = r;
    return std::nullopt;
  };
  if (events.empty()) return fail(InapplicableReason::Precondition);

  std::vector<int> ending;
  std::vector<int> starting;
  std::vector<const GroundAction*> acting;
  for (const Event& e : events) {
    switch (e.kind) {
      case Event::Kind::Instant:
        acting.push_back(&gi.instantaneous[(size_t)e.index]);
        break;
      case Event::Kind::Start:
        starting.push_back(e.index);
        acting.push_back(&gi.durative[(size_t)e.index].st);
        break;
      case Event::Kind::End: {
        ending.push_back(e.index);
        acting.push_back(&gi.durative[(size_t)e.index].end);
        break;
      }
    }
  }
  // ends must match open actions (multiset)
  {
    std::vector<int> avail = state.open;
    for (int d : ending) {
      auto it = std::find(avail.begin(), avail.end(), d);
      if (it == avail.end()) return fail(InapplicableReason::Precondition);
      avail.erase(it);
    }
  }

  // actions open across the happening contribute their invariant fragments
  std::vector<int> across = state.open;
  for (int d : ending) {
    auto it = std::find(across.begin(), across.end(), d);
    across.erase(it);
  }
  std::vector<const GroundAction*> interference = acting;
  for (int d : across) interference.push_back(&gi.durative[(size_t)d].inv);

  for (size_t i = 0; i < interference.size(); ++i)
    for (size_t j = i + 1; j < interference.size(); ++j)
      if (!non_interfering(*interference[i], *interference[j]))
        return fail(InapplicableReason::Interference);

  for (const GroundAction* a : acting)
    if (!a->applicable(state.atoms)) return fail(InapplicableReason::Precondition);

  // invariant conditions: ending actions up to this happening, actions open
  // across in both the pre and post state
  for (int d : ending)
    if (!gi.durative[(size_t)d].inv.applicable(state.atoms))
      return fail(InapplicableReason::InvViolated);
  for (int d : across)
    if (!gi.durative[(size_t)d].inv.applicable(state.atoms))
      return fail(InapplicableReason::InvViolated);

  TimedState next;
  {
    std::vector<AtomId> del, add;
    for (const GroundAction* a : acting) {
      del.insert(del.end(), a->eff_minus.begin(), a->eff_minus.end());
      add.insert(add.end(), a->eff_plus.begin(), a->eff_plus.end());
    }
    del = sorted_unique(std::move(del));
    add = sorted_unique(std::move(add));
    for (AtomId id : state.atoms)
      if (!sorted_contains(del, id)) next.atoms.push_back(id);
    for (AtomId id : add)
      if (!sorted_contains(next.atoms, id)) next.atoms.push_back(id);
    next.atoms = sorted_unique(std::move(next.atoms));
  }
  next.open = across;
  for (int d : starting) next.open.push_back(d);
  std::sort(next.open.begin(), next.open.end());

  // starting and open-across invariants must hold in the result
  for (int d : across)
    if (!gi.durative[(size_t)d].inv.applicable(next.atoms))
      return fail(InapplicableReason::InvViolated);
  for (int d : starting)
    if (!gi.durative[(size_t)d].inv.applicable(next.atoms))
      return fail(InapplicableReason::InvViolated);

  return next;
}

Closure reachable_search(const GroundContext& ctx, const GroundedInstance& gi,
                         const SearchBounds& bounds) {
  Closure cl;
  TimedState init;
  init.atoms = ctx.init_atoms();
  cl.states.push_back(init);
  cl.parent.push_back(-1);
  cl.incoming.push_back({});
  cl.depth.push_back(0);

  std::map<TimedState, int> seen;
  seen[init] = 0;

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int si = frontier.front();
    frontier.pop_front();
    if (cl.depth[(size_t)si] >= bounds.max_happenings) continue;
    const TimedState state = cl.states[(size_t)si];

    // candidate events, deterministic order
    std::vector<Event> candidates;
    for (size_t i = 0; i < gi.instantaneous.size(); ++i)
      if (gi.instantaneous[i].applicable(state.atoms))
        candidates.push_back({Event::Kind::Instant, (int)i});
    for (size_t i = 0; i < gi.durative.size(); ++i)
      if (gi.durative[i].st.applicable(state.atoms))
        candidates.push_back({Event::Kind::Start, (int)i});
    {
      std::set<int> open_set(state.open.begin(), state.open.end());
      for (int d : open_set)
        if (gi.durative[(size_t)d].end.applicable(state.atoms))
          candidates.push_back({Event::Kind::End, d});
    }

    // nonempty subsets up to max_simultaneous, lexicographic
    std::vector<int> pick;
    auto expand = [&](const std::vector<Event>& events) {
      std::optional<TimedState> next = apply_happening(gi, state, events);
      if (!next) return;
      auto [it, fresh] = seen.emplace(*next, (int)cl.states.size());
      if (!fresh) return;
      if (cl.states.size() >= bounds.state_cap) {
        cl.capped = true;
        return;
      }
      cl.states.push_back(*next);
      cl.parent.push_back(si);
      cl.incoming.push_back(events);
      cl.depth.push_back(cl.depth[(size_t)si] + 1);
      frontier.push_back(it->second);
    };
    auto rec = [&](auto&& self, size_t from) -> void {
      if (cl.capped) return;
      if (!pick.empty()) {
        std::vector<Event> events;
        for (int i : pick) events.push_back(candidates[(size_t)i]);
        expand(events);
      }
      if ((int)pick.size() >= bounds.max_simultaneous) return;
      for (size_t i = from; i < candidates.size(); ++i) {
        pick.push_back((int)i);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    if (cl.capped) break;
  }
  return cl;
}

GroundClass classify_ground(const GroundAction& a,
                            const std::vector<AtomId>& instantiation) {
  auto restrict = [&](const std::vector<AtomId>& s) {
    std::vector<AtomId> out;
    for (AtomId id : s)
      if (sorted_contains(instantiation, id)) out.push_back(id);
    return out;
  };
  std::vector<AtomId> p_plus = restrict(a.pre_plus);
  std::vector<AtomId> p_minus = restrict(a.pre_minus);
  std::vector<AtomId> e_plus = restrict(a.eff_plus);
  std::vector<AtomId> e_minus = restrict(a.eff_minus);

  if (p_plus.size() >= 2) return GroundClass::Unreachable;
  if (e_plus.size() >= 2) return GroundClass::Heavy;
  if (e_plus.empty()) return GroundClass::Irrelevant;
  // relevant
  if (p_plus.size() == 1) {
    AtomId q = p_plus[0];
    bool in_effects = sorted_contains(e_plus, q) || sorted_contains(e_minus, q);
    return in_effects ? GroundClass::RelevantBalanced
                      : GroundClass::RelevantUnbalanced;
  }
  std::vector<AtomId> all = p_plus;
  all.insert(all.end(), p_minus.begin(), p_minus.end());
  all.insert(all.end(), e_plus.begin(), e_plus.end());
  all.insert(all.end(), e_minus.begin(), e_minus.end());
  all = sorted_unique(std::move(all));
  return all == instantiation ? GroundClass::RelevantBounded
                              : GroundClass::RelevantUnbounded;
}

VerifyResult verify_template(const Template& t, const GroundContext& ctx,
                             const GroundedInstance& gi,
                             const SearchBounds& bounds) {
  VerifyResult res;
  std::vector<TemplateInstance> instances =
      enumerate_instances(t, ctx.universe().objects);
  std::vector<std::vector<AtomId>> inst_atoms;
  for (const TemplateInstance& inst : instances)
    inst_atoms.push_back(ctx.to_ids(instantiate(t, inst, ctx.universe())));

  auto weight = [&](const std::vector<AtomId>& state, size_t ii) {
    size_t n = 0;
    for (AtomId id : inst_atoms[ii])
      if (sorted_contains(state, id)) ++n;
    return n;
  };

  for (size_t ii = 0; ii < instances.size(); ++ii) {
    if (weight(ctx.init_atoms(), ii) >= 2) {
      res.status = VerifyResult::Status::InitViolation;
      res.init_instance = instances[ii];
      return res;
    }
  }

  Closure cl = reachable_search(ctx, gi, bounds);
  res.depth_explored = bounds.max_happenings;
  for (size_t si = 0; si < cl.states.size(); ++si) {
    for (size_t ii = 0; ii < instances.size(); ++ii) {
      if (weight(cl.states[si].atoms, ii) >= 2) {
        res.status = VerifyResult::Status::Violated;
        res.violating_instance = instances[ii];
        std::vector<std::vector<Event>> trace;
        for (int cur = (int)si; cur > 0; cur = cl.parent[(size_t)cur])
          trace.push_back(cl.incoming[(size_t)cur]);
        std::reverse(trace.begin(), trace.end());
        res.witness = std::move(trace);
        return res;
      }
    }
  }
  if (cl.capped) {
    res.status = VerifyResult::Status::Inconclusive;
    return res;
  }
  res.status = VerifyResult::Status::Holds;
  return res;
}

}  // namespace tempinv
