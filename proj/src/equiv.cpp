#include "cse/equiv.hpp"

#include <stdexcept>

#include "cse/simplify.hpp"

namespace cse {

const char* to_string(Equiv e) {
  switch (e) {
    case Equiv::Yes: return "YES";
    case Equiv::No: return "NO";
    case Equiv::Unknown: return "UNKNOWN";
  }
  return "?";
}

ExprPtr subst_bound(const ExprPtr& e, const std::string& name, const ExprPtr& repl) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::Param: return e;
    case ExprKind::BoundVar: return e->name == name ? repl : e;
    case ExprKind::Add:
      return mk_add(subst_bound(e->lhs, name, repl), subst_bound(e->rhs, name, repl));
    case ExprKind::Sub:
      return mk_sub(subst_bound(e->lhs, name, repl), subst_bound(e->rhs, name, repl));
    case ExprKind::Mul:
      return mk_mul(subst_bound(e->lhs, name, repl), subst_bound(e->rhs, name, repl));
    case ExprKind::Pow:
      return mk_pow(subst_bound(e->lhs, name, repl), subst_bound(e->rhs, name, repl));
    case ExprKind::Select: return mk_select(e->name, subst_bound(e->lhs, name, repl));
    case ExprKind::Ite:
      return mk_ite(subst_bound(e->cond, name, repl), subst_bound(e->lhs, name, repl),
                    subst_bound(e->rhs, name, repl));
  }
  return e;
}

FormulaPtr subst_bound(const FormulaPtr& f, const std::string& name, const ExprPtr& repl) {
  switch (f->kind) {
    case FormKind::BoolLit: return f;
    case FormKind::Cmp:
      return mk_cmp(f->op, subst_bound(f->lhs, name, repl), subst_bound(f->rhs, name, repl));
    case FormKind::And:
    case FormKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& g : f->args) args.push_back(subst_bound(g, name, repl));
      return f->kind == FormKind::And ? mk_and(std::move(args)) : mk_or(std::move(args));
    }
    case FormKind::Not: return mk_not(subst_bound(f->args[0], name, repl));
    case FormKind::Implies:
      return mk_implies(subst_bound(f->args[0], name, repl),
                        subst_bound(f->args[1], name, repl));
    case FormKind::Forall: {
      ExprPtr lo = subst_bound(f->lo, name, repl);
      ExprPtr hi = subst_bound(f->hi, name, repl);
      // an inner quantifier over the same name shadows it
      FormulaPtr body = f->bound == name ? f->body : subst_bound(f->body, name, repl);
      return mk_forall(f->bound, lo, hi, body);
    }
  }
  return f;
}

FormulaPtr expand_bounded_foralls(const FormulaPtr& f, long long max_width) {
  switch (f->kind) {
    case FormKind::BoolLit:
    case FormKind::Cmp: return f;
    case FormKind::And:
    case FormKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& g : f->args) args.push_back(expand_bounded_foralls(g, max_width));
      return f->kind == FormKind::And ? mk_and(std::move(args)) : mk_or(std::move(args));
    }
    case FormKind::Not: return mk_not(expand_bounded_foralls(f->args[0], max_width));
    case FormKind::Implies:
      return mk_implies(expand_bounded_foralls(f->args[0], max_width),
                        expand_bounded_foralls(f->args[1], max_width));
    case FormKind::Forall: {
      FormulaPtr body = expand_bounded_foralls(f->body, max_width);
      if (f->lo->kind == ExprKind::IntLit && f->hi->kind == ExprKind::IntLit) {
        long long lo = f->lo->num, hi = f->hi->num;
        if (hi - lo <= max_width) {
          std::vector<FormulaPtr> parts;
          for (long long t = lo; t < hi; ++t)
            parts.push_back(subst_bound(body, f->bound, mk_int(t)));
          return mk_and(std::move(parts));
        }
      }
      return mk_forall(f->bound, f->lo, f->hi, body);
    }
  }
  return f;
}

namespace {

// not (p1 <-> p2) as the explicit XOR expansion
FormulaPtr xor_form(const FormulaPtr& p1, const FormulaPtr& p2) {
  return mk_or({mk_and({p1, mk_not(p2)}), mk_and({p2, mk_not(p1)})});
}

EquivOutcome decide(const std::vector<FormulaPtr>& diffs, const SolverConfig& cfg) {
  EquivOutcome out;
  if (diffs.empty()) {
    out.verdict = Equiv::Yes;
    return out;
  }
  SatResult r = satisfiable(mk_or(diffs), cfg);
  switch (r.verdict) {
    case Sat::Unsat: out.verdict = Equiv::Yes; break;
    case Sat::Sat:
      out.verdict = Equiv::No;
      out.witness = r.model;
      break;
    case Sat::Unknown:
      out.verdict = Equiv::Unknown;
      out.diagnostic = r.diagnostic;
      break;
  }
  return out;
}

bool syntactically_same(const FormulaPtr& a, const FormulaPtr& b, long long width) {
  if (equal(a, b)) return true;
  return equal(simplify(expand_bounded_foralls(a, width)),
               simplify(expand_bounded_foralls(b, width)));
}

}  // namespace

EquivOutcome formulas_equivalent(const FormulaPtr& f1, const FormulaPtr& f2,
                                 const SolverConfig& cfg, const EquivOptions& opts) {
  FormulaPtr a = simplify(f1), b = simplify(f2);
  if (opts.syntactic_fast_path && syntactically_same(a, b, opts.expand_width)) {
    EquivOutcome out;
    out.verdict = Equiv::Yes;
    return out;
  }
  return decide({xor_form(a, b)}, cfg);
}

EquivOutcome states_equivalent(const ProgState& s1, const ProgState& s2,
                               const SolverConfig& cfg, const EquivOptions& opts) {
  if (!s1.params.empty() || !s2.params.empty())
    throw std::invalid_argument("states_equivalent requires parameter-free states");
  EquivOutcome out;
  if (s1.loc != s2.loc) {
    out.verdict = Equiv::No;
    out.diagnostic = "different locations: " + s1.loc + " vs " + s2.loc;
    return out;
  }
  if (!s1.mem.same_universe(s2.mem))
    throw MismatchedUniverse("states_equivalent over different variable sets");

  // array variables are those read through Select anywhere in either state
  std::set<std::string> scalars, arrays;
  collect_symbols(s1.pc, scalars, arrays);
  collect_symbols(s2.pc, scalars, arrays);
  for (const auto& [var, e] : s1.mem.entries) collect_symbols(e, scalars, arrays);
  for (const auto& [var, e] : s2.mem.entries) collect_symbols(e, scalars, arrays);

  std::vector<FormulaPtr> diffs;
  for (const auto& [var, e1] : s1.mem.entries) {
    ExprPtr a = simplify(e1);
    ExprPtr b = simplify(s2.mem.at(var));
    if (equal(a, b)) continue;
    if (a->kind == ExprKind::Symbol && b->kind == ExprKind::Symbol &&
        (arrays.count(a->name) || arrays.count(b->name))) {
      // two distinct array symbols: extensional disagreement at a fresh index
      ExprPtr idx = mk_sym("@extidx");
      diffs.push_back(mk_cmp(CmpOp::Ne, mk_select(a->name, idx), mk_select(b->name, idx)));
      continue;
    }
    diffs.push_back(mk_cmp(CmpOp::Ne, a, b));
  }

  FormulaPtr p1 = simplify(s1.pc), p2 = simplify(s2.pc);
  if (!(opts.syntactic_fast_path && syntactically_same(p1, p2, opts.expand_width)))
    diffs.push_back(xor_form(p1, p2));
  return decide(diffs, cfg);
}

}  // namespace cse
