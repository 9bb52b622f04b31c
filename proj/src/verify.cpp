#include "cse/verify.hpp"

#include <algorithm>

#include "cse/simplify.hpp"

namespace cse {

const char* to_string(LeafVerdict::Kind k) {
  switch (k) {
    case LeafVerdict::Kind::Matched: return "matched";
    case LeafVerdict::Kind::Unmatched: return "unmatched";
    case LeafVerdict::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

void MatchReport::tally() {
  matched = unmatched = inconclusive = 0;
  for (const auto& r : rows) {
    switch (r.kind) {
      case LeafVerdict::Kind::Matched: matched++; break;
      case LeafVerdict::Kind::Unmatched: unmatched++; break;
      case LeafVerdict::Kind::Inconclusive: inconclusive++; break;
    }
  }
}

namespace {

// Route profile of a leaf: the fixed number of classic edge steps on its
// root path plus one (parameter, core length) term per template
// application. The classic-tree depth covered by an instantiation is then
// base + sum(core_len_i * nu_i), which prunes the valuation search to the
// depths that can actually correspond.
struct RouteProfile {
  long base = 0;
  std::vector<std::pair<int, int>> terms;  // (param id, core length), root-to-leaf
};

RouteProfile route_profile(const ExecTree& t, int leaf) {
  RouteProfile rp;
  std::vector<int> rev;
  for (int id = leaf; id > 0; id = t.nodes[id].parent) rev.push_back(id);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    const TreeNode& n = t.nodes[*it];
    if (n.template_id >= 0) {
      rp.base += n.exit_steps;
      rp.terms.push_back({n.param, n.core_len});
    } else {
      rp.base += 1;
    }
  }
  return rp;
}

void enum_valuations(const RouteProfile& rp, size_t idx, long remaining, int bound,
                     bool exact, Valuation& cur, std::vector<Valuation>& out) {
  if (idx == rp.terms.size()) {
    if (!exact || remaining == 0) out.push_back(cur);
    return;
  }
  auto [param, weight] = rp.terms[idx];
  long kmax = std::min<long>(bound, weight > 0 ? remaining / weight : bound);
  for (long k = 0; k <= kmax; ++k) {
    cur.values[param] = k;
    enum_valuations(rp, idx + 1, remaining - k * weight, bound, exact, cur, out);
  }
  cur.values.erase(param);
}

/// Valuations (componentwise <= bound) whose covered classic depth is
/// exactly `depth` (exact mode) or at most `depth`; lexicographic order.
std::vector<Valuation> valuations_for_depth(const RouteProfile& rp, long depth, int bound,
                                            bool exact) {
  std::vector<Valuation> out;
  if (depth < rp.base) return out;
  Valuation cur;
  enum_valuations(rp, 0, depth - rp.base, bound, exact, cur, out);
  return out;
}

bool abort_on_failed_leaves(const ExecTree& a, const ExecTree& b, MatchReport& rep) {
  if (a.has_failed_leaves() || b.has_failed_leaves()) {
    rep.aborted = true;
    rep.diagnostic =
        "a tree contains failed leaves; the leaf correspondence is only "
        "defined for trees without them";
    return true;
  }
  return false;
}

long count_cut_leaves(const ExecTree& t) {
  long n = 0;
  for (const TreeNode& node : t.nodes)
    if (node.children.empty() && node.cut) n++;
  return n;
}

}  // namespace

MatchReport check_soundness(const ExecTree& classic, const ExecTree& compact, int bound,
                            const SolverConfig& cfg) {
  MatchReport rep;
  rep.bound = bound;
  if (abort_on_failed_leaves(classic, compact, rep)) return rep;
  rep.excluded_cut_leaves = count_cut_leaves(classic);

  std::vector<int> compact_leaves = compact.true_leaf_ids();

  for (int leaf : classic.true_leaf_ids()) {
    const ProgState& target = classic.nodes[leaf].state;
    const int target_depth = classic.nodes[leaf].depth;
    LeafVerdict row;
    row.leaf = leaf;

    bool saw_unknown = false;
    bool saw_parametric = false;
    bool tried_any = false;
    bool candidates = false;
    for (int cid : compact_leaves) {
      const ProgState& cand = compact.nodes[cid].state;
      if (cand.loc != target.loc) continue;
      candidates = true;
      if (!cand.params.empty()) saw_parametric = true;
      RouteProfile rp = route_profile(compact, cid);
      for (const Valuation& val :
           valuations_for_depth(rp, target_depth, bound, /*exact=*/true)) {
        tried_any = true;
        EquivOutcome eq = states_equivalent(target, instantiate(cand, val), cfg);
        if (eq.verdict == Equiv::Yes) {
          row.kind = LeafVerdict::Kind::Matched;
          row.counterpart = cid;
          row.valuation = val;
          break;
        }
        if (eq.verdict == Equiv::Unknown) saw_unknown = true;
      }
      if (row.kind == LeafVerdict::Kind::Matched) break;
    }
    if (row.kind != LeafVerdict::Kind::Matched) {
      if (saw_unknown) {
        row.kind = LeafVerdict::Kind::Inconclusive;
        row.note = "solver unknown";
      } else if (saw_parametric && !tried_any) {
        row.kind = LeafVerdict::Kind::Inconclusive;
        row.note = "bound exhausted";
      } else {
        row.kind = LeafVerdict::Kind::Unmatched;
        row.note = candidates ? "no equivalent instantiation"
                              : "no compact leaf at location " + target.loc;
      }
    }
    rep.rows.push_back(std::move(row));
  }
  rep.tally();
  return rep;
}

MatchReport check_completeness(const ExecTree& compact, const ExecTree& classic,
                               int bound, const SolverConfig& cfg) {
  MatchReport rep;
  rep.bound = bound;
  if (abort_on_failed_leaves(compact, classic, rep)) return rep;
  rep.excluded_cut_leaves = count_cut_leaves(compact);

  std::vector<int> classic_leaves = classic.true_leaf_ids();

  for (int leaf : compact.true_leaf_ids()) {
    const ProgState& src = compact.nodes[leaf].state;
    LeafVerdict row;
    row.leaf = leaf;
    bool failed = false;
    bool saw_unknown = false;

    // only instantiations whose covered classic path fits the classic
    // tree's depth limit can have a counterpart in the bounded tree
    RouteProfile rp = route_profile(compact, leaf);
    for (const Valuation& val :
         valuations_for_depth(rp, classic.depth_limit, bound, /*exact=*/false)) {
      ProgState inst = instantiate(src, val);
      SatResult sat = satisfiable(inst.pc, cfg);
      if (sat.verdict == Sat::Unsat) continue;  // no classic counterpart expected
      if (sat.verdict == Sat::Unknown) {
        saw_unknown = true;
        continue;
      }
      long covered_depth = rp.base;
      for (auto [param, weight] : rp.terms)
        covered_depth += weight * val.values.at(param);
      bool found = false;
      bool inner_unknown = false;
      for (int cid : classic_leaves) {
        const ProgState& cand = classic.nodes[cid].state;
        if (cand.loc != inst.loc) continue;
        if (classic.nodes[cid].depth != covered_depth) continue;
        EquivOutcome eq = states_equivalent(cand, inst, cfg);
        if (eq.verdict == Equiv::Yes) {
          found = true;
          row.counterpart = cid;
          row.valuation = val;
          break;
        }
        if (eq.verdict == Equiv::Unknown) inner_unknown = true;
      }
      if (!found) {
        if (inner_unknown) {
          saw_unknown = true;
        } else {
          failed = true;
          row.kind = LeafVerdict::Kind::Unmatched;
          row.note = "no classic leaf matches valuation " + val.str();
          break;
        }
      }
    }
    if (!failed) {
      if (saw_unknown) {
        row.kind = LeafVerdict::Kind::Inconclusive;
        row.note = "solver unknown";
      } else {
        row.kind = LeafVerdict::Kind::Matched;
      }
    }
    rep.rows.push_back(std::move(row));
  }
  rep.tally();
  return rep;
}

MatchReport check_template_properties(const Flowgraph& fg, const Cycle& c,
                                      const Template& t, int nu_max,
                                      const SolverConfig& cfg) {
  MatchReport rep;
  rep.bound = nu_max;
  SymMemory theta_I = identity_memory(fg.var_universe());
  ProgState frame(c.entry, theta_I, f_true());

  int rowid = 0;
  for (size_t xi = 0; xi < t.exits.size(); ++xi) {
    const TemplateExit& ex = t.exits[xi];
    const Edge* exit_edge = &fg.edges[ex.exit_edge_index];
    for (int nu = 0; nu <= nu_max; ++nu, ++rowid) {
      LeafVerdict row;
      row.leaf = rowid;
      row.note = "exit " + ex.loc + " nu=" + std::to_string(nu);

      // concrete route: nu core iterations, then the exit prefix
      Path rho;
      rho.start = c.entry;
      for (int i = 0; i < nu; ++i)
        rho.edges.insert(rho.edges.end(), c.core.edges.begin(), c.core.edges.end());
      Path tail = exit_prefix(c, exit_edge);
      rho.edges.insert(rho.edges.end(), tail.edges.begin(), tail.edges.end());
      ProgState concrete = execute_path(fg, rho, theta_I, f_true());

      // parametric route: compose the instantiated template exit
      Valuation val(std::map<int, long long>{{t.param, nu}});
      row.valuation = val;
      ProgState composed = compose_state(frame, instantiate(ProgState(ex.loc, ex.mem, ex.pc), val));

      SatResult sat_concrete = satisfiable(concrete.pc, cfg);
      SatResult sat_composed = satisfiable(composed.pc, cfg);
      EquivOutcome eq = states_equivalent(concrete, composed, cfg);

      if (eq.verdict == Equiv::No) {
        row.kind = LeafVerdict::Kind::Unmatched;
        row.note += "; states differ";
      } else if ((sat_composed.verdict == Sat::Sat && sat_concrete.verdict == Sat::Unsat) ||
                 (sat_composed.verdict == Sat::Unsat && sat_concrete.verdict == Sat::Sat)) {
        row.kind = LeafVerdict::Kind::Unmatched;
        row.note += "; feasibility disagrees";
      } else if (eq.verdict == Equiv::Unknown || sat_concrete.verdict == Sat::Unknown ||
                 sat_composed.verdict == Sat::Unknown) {
        row.kind = LeafVerdict::Kind::Inconclusive;
        row.note += "; solver unknown";
      } else {
        row.kind = LeafVerdict::Kind::Matched;
      }
      rep.rows.push_back(std::move(row));
    }
  }
  rep.tally();
  return rep;
}

}  // namespace cse
