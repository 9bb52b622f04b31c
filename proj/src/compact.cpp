#include "cse/compact.hpp"

#include "cse/simplify.hpp"

namespace cse {

int choose_template(const std::string& loc, const std::vector<Template>& pool,
                    const SelectionStrategy& strat, std::mt19937_64& rng) {
  if (strat.kind == SelectionStrategy::Kind::Never) return -1;
  std::vector<int> matches;
  for (size_t i = 0; i < pool.size(); ++i)
    if (pool[i].entry == loc && pool[i].applicable())
      matches.push_back(static_cast<int>(i));
  if (matches.empty()) return -1;
  if (strat.kind == SelectionStrategy::Kind::First) return matches.front();
  std::uniform_int_distribution<size_t> pick(0, matches.size() - 1);
  return matches[pick(rng)];
}

ExecTree run_compact(const Flowgraph& fg, const std::vector<Template>& pool,
                     const SelectionStrategy& strat, const SolverConfig& cfg,
                     const Limits& lim, ParamGen& pg) {
  std::mt19937_64 rng(strat.seed);

  ExpandHook hook = [&](const ProgState& s, std::vector<Candidate>& out) -> bool {
    int ti = choose_template(s.loc, pool, strat, rng);
    if (ti < 0) return false;
    const Template& t = pool[ti];
    int fresh = pg.fresh();
    ExprPtr fresh_param = mk_param(fresh);
    for (size_t xi = 0; xi < t.exits.size(); ++xi) {
      const TemplateExit& ex = t.exits[xi];
      // rename the template's parameter, then compose onto the current state
      ProgState renamed(ex.loc, subst_param(ex.mem, t.param, fresh_param),
                        subst_param(ex.pc, t.param, fresh_param));
      Candidate c;
      c.state = compose_state(s, renamed);
      c.template_id = ti;
      c.template_exit = static_cast<int>(xi);
      c.param = fresh;
      c.core_len = static_cast<int>(t.cycle.core.edges.size());
      c.exit_steps = ex.path_edges;
      c.label = "(" + t.core_label() + ")^" + to_string(fresh_param) + " " + ex.path_suffix;
      out.push_back(std::move(c));
    }
    return true;
  };

  return bfs_execute(fg, cfg, lim, hook);
}

}  // namespace cse
