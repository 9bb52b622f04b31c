#include "cse/templates.hpp"

#include <algorithm>

#include "cse/equiv.hpp"
#include "cse/simplify.hpp"

namespace cse {

std::string Template::core_label() const {
  std::string s;
  for (const Edge* e : cycle.core.edges) s += e->dst;  // "cdb" for core b c d b
  return s;
}

std::string TemplateFailure::str() const {
  switch (reason) {
    case Reason::CoreInfeasibleOrUnknown:
      return "core " + cycle.core_string() + ": single iteration not provably feasible";
    case Reason::MemoryDerivationIncomplete: {
      std::string vars;
      for (const auto& v : bottom_vars) vars += (vars.empty() ? "" : ", ") + v;
      return "core " + cycle.core_string() + ": no progression found for {" + vars + "}";
    }
    case Reason::ExitFeasibilityUnknown:
      return "core " + cycle.core_string() + ": exit feasibility undecided (edge #" +
             std::to_string(exit_edge_index) + ")";
  }
  return "?";
}

DeriveResult derive_parametric_memory(const SymMemory& theta, const Flowgraph& fg,
                                      int kappa) {
  const ExprPtr kap = mk_param(kappa);
  SymMemory star;
  for (const auto& a : fg.array_vars) star.entries[a] = mk_sym(a);

  std::set<std::string> pending(fg.int_vars.begin(), fg.int_vars.end());

  bool change = true;
  while (change) {
    change = false;
    // iterate in declaration order
    for (const auto& a : fg.int_vars) {
      if (!pending.count(a)) continue;
      const ExprPtr cur = simplify(theta.at(a));
      LinearMatch lm = match_linear(cur);

      if (lm.single_symbol && lm.symbol == a && lm.coeff == 1) {
        // R1: arithmetic progression ~a + c (c may be 0)
        star.entries[a] = simplify(mk_add(mk_sym(a), mk_mul(kap, mk_int(lm.offset))));
        pending.erase(a);
        change = true;
        continue;
      }
      if (lm.single_symbol && lm.symbol == a && lm.offset == 0) {
        // R2: geometric progression ~a * c
        star.entries[a] = simplify(mk_mul(mk_sym(a), mk_pow(mk_int(lm.coeff), kap)));
        pending.erase(a);
        change = true;
        continue;
      }
      // R3: every symbol of g already derived
      std::set<std::string> scalars, arrays;
      collect_symbols(cur, scalars, arrays);
      bool ready = true;
      for (const auto& b : scalars)
        if (pending.count(b)) {
          ready = false;
          break;
        }
      if (!ready) continue;
      SymMemory prev = subst_param(star, kappa, mk_sub(kap, mk_int(1)));
      ExprPtr last_iter = simplify(subst_symbols(prev, cur));
      star.entries[a] =
          simplify(mk_ite(mk_cmp(CmpOp::Gt, kap, mk_int(0)), last_iter, mk_sym(a)));
      pending.erase(a);
      change = true;
    }
  }

  DeriveResult r;
  r.theta_star = std::move(star);
  r.bottom.assign(pending.begin(), pending.end());
  return r;
}

FormulaPtr build_parametric_pc(const SymMemory& theta_star, const FormulaPtr& phi,
                               int kappa) {
  const std::string tau = "t0";
  SymMemory at_tau = subst_param(theta_star, kappa, mk_bvar(tau));
  FormulaPtr body = simplify(subst_symbols(at_tau, phi));
  return conjoin(mk_cmp(CmpOp::Ge, mk_param(kappa), mk_int(0)),
                 simplify(mk_forall(tau, mk_int(0), mk_param(kappa), body)));
}

TemplateResult compute_template(const Flowgraph& fg, const Cycle& c,
                                const SolverConfig& cfg, ParamGen& pg) {
  SymMemory theta_I = identity_memory(fg.var_universe());

  // one iteration of the core, then its feasibility
  ProgState once = execute_path(fg, c.core, theta_I, f_true());
  if (satisfiable(once.pc, cfg).verdict != Sat::Sat)
    return TemplateFailure{TemplateFailure::Reason::CoreInfeasibleOrUnknown, c, {}, -1};

  const int kappa = pg.fresh();
  DeriveResult derived = derive_parametric_memory(once.mem, fg, kappa);
  if (!derived.bottom.empty())
    return TemplateFailure{TemplateFailure::Reason::MemoryDerivationIncomplete, c,
                           derived.bottom, -1};

  FormulaPtr phi_star = build_parametric_pc(derived.theta_star, once.pc, kappa);

  Template t;
  t.entry = c.entry;
  t.param = kappa;
  t.cycle = c;
  t.theta_star = derived.theta_star;
  t.phi_star = phi_star;

  for (const Edge* exit : c.exits) {
    Path rho = exit_prefix(c, exit);
    ProgState hat = execute_path(fg, rho, theta_I, f_true());
    SatResult feas = satisfiable(hat.pc, cfg);
    if (feas.verdict == Sat::Unknown)
      return TemplateFailure{TemplateFailure::Reason::ExitFeasibilityUnknown, c, {},
                             exit->index};
    if (feas.verdict != Sat::Sat) continue;  // infeasible exits get no element

    TemplateExit te;
    te.loc = exit->dst;
    te.mem = compose_mem(derived.theta_star, hat.mem);
    te.pc = conjoin(phi_star, simplify(subst_symbols(derived.theta_star, hat.pc)));
    te.exit_edge_index = exit->index;
    te.path_edges = static_cast<int>(rho.edges.size());
    std::string suffix;
    for (const Edge* e : rho.edges) suffix += e->dst;
    te.path_suffix = suffix;
    t.exits.push_back(std::move(te));
  }
  return t;
}

TemplatePool compute_all_templates(const Flowgraph& fg, const SolverConfig& cfg,
                                   ParamGen& pg, int cycle_cap) {
  TemplatePool pool;
  CycleSet cs = enumerate_cycles(fg, cycle_cap);
  pool.cycles_truncated = cs.truncated;
  for (const Cycle& c : cs.cycles) {
    TemplateResult r = compute_template(fg, c, cfg, pg);
    if (std::holds_alternative<Template>(r))
      pool.templates.push_back(std::get<Template>(std::move(r)));
    else
      pool.failures.push_back(std::get<TemplateFailure>(std::move(r)));
  }
  return pool;
}

}  // namespace cse
