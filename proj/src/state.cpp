#include "cse/state.hpp"

#include <sstream>

#include "cse/simplify.hpp"

namespace cse {

const ExprPtr& SymMemory::at(const std::string& var) const {
  auto it = entries.find(var);
  if (it == entries.end())
    throw MismatchedUniverse("variable not in memory: " + var);
  return it->second;
}

bool SymMemory::same_universe(const SymMemory& other) const {
  if (entries.size() != other.entries.size()) return false;
  auto a = entries.begin();
  auto b = other.entries.begin();
  for (; a != entries.end(); ++a, ++b)
    if (a->first != b->first) return false;
  return true;
}

SymMemory identity_memory(const std::set<std::string>& vars) {
  SymMemory m;
  for (const auto& v : vars) m.entries.emplace(v, mk_sym(v));
  return m;
}

ExprPtr subst_symbols(const SymMemory& mem, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Param:
    case ExprKind::BoundVar: return e;
    case ExprKind::Symbol: {
      auto it = mem.entries.find(e->name);
      return it == mem.entries.end() ? e : it->second;
    }
    case ExprKind::Add: return mk_add(subst_symbols(mem, e->lhs), subst_symbols(mem, e->rhs));
    case ExprKind::Sub: return mk_sub(subst_symbols(mem, e->lhs), subst_symbols(mem, e->rhs));
    case ExprKind::Mul: return mk_mul(subst_symbols(mem, e->lhs), subst_symbols(mem, e->rhs));
    case ExprKind::Pow: return mk_pow(subst_symbols(mem, e->lhs), subst_symbols(mem, e->rhs));
    case ExprKind::Select:
      // The array part is itself a symbol; read-only arrays always map to
      // themselves, so only the index can change.
      return mk_select(e->name, subst_symbols(mem, e->lhs));
    case ExprKind::Ite:
      return mk_ite(subst_symbols(mem, e->cond), subst_symbols(mem, e->lhs),
                    subst_symbols(mem, e->rhs));
  }
  return e;
}

FormulaPtr subst_symbols(const SymMemory& mem, const FormulaPtr& f) {
  switch (f->kind) {
    case FormKind::BoolLit: return f;
    case FormKind::Cmp:
      return mk_cmp(f->op, subst_symbols(mem, f->lhs), subst_symbols(mem, f->rhs));
    case FormKind::And: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& g : f->args) args.push_back(subst_symbols(mem, g));
      return mk_and(std::move(args));
    }
    case FormKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& g : f->args) args.push_back(subst_symbols(mem, g));
      return mk_or(std::move(args));
    }
    case FormKind::Not: return mk_not(subst_symbols(mem, f->args[0]));
    case FormKind::Implies:
      return mk_implies(subst_symbols(mem, f->args[0]), subst_symbols(mem, f->args[1]));
    case FormKind::Forall:
      return mk_forall(f->bound, subst_symbols(mem, f->lo), subst_symbols(mem, f->hi),
                       subst_symbols(mem, f->body));
  }
  return f;
}

SymMemory compose_mem(const SymMemory& m1, const SymMemory& m2) {
  if (!m1.same_universe(m2))
    throw MismatchedUniverse("compose_mem over different variable sets");
  SymMemory r;
  for (const auto& [var, val] : m2.entries)
    r.entries.emplace(var, simplify(subst_symbols(m1, val)));
  return r;
}

Valuation::Valuation(std::map<int, long long> v) : values(std::move(v)) {
  for (const auto& [id, n] : values)
    if (n < 0)
      throw std::invalid_argument("valuation of k#" + std::to_string(id) +
                                  " is negative");
}

bool Valuation::covers(const std::set<int>& params) const {
  for (int p : params)
    if (!values.count(p)) return false;
  return true;
}

std::string Valuation::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [id, n] : values) {
    if (!first) os << ',';
    first = false;
    os << "k#" << id << "=" << n;
  }
  os << '}';
  return os.str();
}

namespace {
ExprPtr param_value(const Valuation& v, int id) {
  auto it = v.values.find(id);
  if (it == v.values.end())
    throw MissingParameter("no value for parameter k#" + std::to_string(id));
  return mk_int(it->second);
}
}  // namespace

ExprPtr instantiate(const ExprPtr& x, const Valuation& v) {
  switch (x->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::BoundVar: return x;
    case ExprKind::Param: return param_value(v, x->param);
    case ExprKind::Add: return mk_add(instantiate(x->lhs, v), instantiate(x->rhs, v));
    case ExprKind::Sub: return mk_sub(instantiate(x->lhs, v), instantiate(x->rhs, v));
    case ExprKind::Mul: return mk_mul(instantiate(x->lhs, v), instantiate(x->rhs, v));
    case ExprKind::Pow: return mk_pow(instantiate(x->lhs, v), instantiate(x->rhs, v));
    case ExprKind::Select: return mk_select(x->name, instantiate(x->lhs, v));
    case ExprKind::Ite:
      return mk_ite(instantiate(x->cond, v), instantiate(x->lhs, v),
                    instantiate(x->rhs, v));
  }
  return x;
}

FormulaPtr instantiate(const FormulaPtr& x, const Valuation& v) {
  switch (x->kind) {
    case FormKind::BoolLit: return x;
    case FormKind::Cmp:
      return mk_cmp(x->op, instantiate(x->lhs, v), instantiate(x->rhs, v));
    case FormKind::And: {
      std::vector<FormulaPtr> args;
      args.reserve(x->args.size());
      for (const auto& g : x->args) args.push_back(instantiate(g, v));
      return mk_and(std::move(args));
    }
    case FormKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(x->args.size());
      for (const auto& g : x->args) args.push_back(instantiate(g, v));
      return mk_or(std::move(args));
    }
    case FormKind::Not: return mk_not(instantiate(x->args[0], v));
    case FormKind::Implies:
      return mk_implies(instantiate(x->args[0], v), instantiate(x->args[1], v));
    case FormKind::Forall:
      return mk_forall(x->bound, instantiate(x->lo, v), instantiate(x->hi, v),
                       instantiate(x->body, v));
  }
  return x;
}

SymMemory instantiate(const SymMemory& m, const Valuation& v) {
  SymMemory r;
  for (const auto& [var, val] : m.entries) r.entries.emplace(var, instantiate(val, v));
  return r;
}

ExprPtr subst_param(const ExprPtr& x, int id, const ExprPtr& repl) {
  switch (x->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::BoundVar: return x;
    case ExprKind::Param: return x->param == id ? repl : x;
    case ExprKind::Add: return mk_add(subst_param(x->lhs, id, repl), subst_param(x->rhs, id, repl));
    case ExprKind::Sub: return mk_sub(subst_param(x->lhs, id, repl), subst_param(x->rhs, id, repl));
    case ExprKind::Mul: return mk_mul(subst_param(x->lhs, id, repl), subst_param(x->rhs, id, repl));
    case ExprKind::Pow: return mk_pow(subst_param(x->lhs, id, repl), subst_param(x->rhs, id, repl));
    case ExprKind::Select: return mk_select(x->name, subst_param(x->lhs, id, repl));
    case ExprKind::Ite:
      return mk_ite(subst_param(x->cond, id, repl), subst_param(x->lhs, id, repl),
                    subst_param(x->rhs, id, repl));
  }
  return x;
}

FormulaPtr subst_param(const FormulaPtr& x, int id, const ExprPtr& repl) {
  switch (x->kind) {
    case FormKind::BoolLit: return x;
    case FormKind::Cmp:
      return mk_cmp(x->op, subst_param(x->lhs, id, repl), subst_param(x->rhs, id, repl));
    case FormKind::And: {
      std::vector<FormulaPtr> args;
      args.reserve(x->args.size());
      for (const auto& g : x->args) args.push_back(subst_param(g, id, repl));
      return mk_and(std::move(args));
    }
    case FormKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(x->args.size());
      for (const auto& g : x->args) args.push_back(subst_param(g, id, repl));
      return mk_or(std::move(args));
    }
    case FormKind::Not: return mk_not(subst_param(x->args[0], id, repl));
    case FormKind::Implies:
      return mk_implies(subst_param(x->args[0], id, repl), subst_param(x->args[1], id, repl));
    case FormKind::Forall:
      return mk_forall(x->bound, subst_param(x->lo, id, repl), subst_param(x->hi, id, repl),
                       subst_param(x->body, id, repl));
  }
  return x;
}

SymMemory subst_param(const SymMemory& m, int id, const ExprPtr& repl) {
  SymMemory r;
  for (const auto& [var, val] : m.entries)
    r.entries.emplace(var, subst_param(val, id, repl));
  return r;
}

std::set<int> collect_state_params(const SymMemory& mem, const FormulaPtr& pc) {
  std::set<int> out;
  for (const auto& [var, val] : mem.entries) collect_params(val, out);
  collect_params(pc, out);
  return out;
}

ProgState::ProgState(std::string l, SymMemory m, FormulaPtr p)
    : loc(std::move(l)), mem(std::move(m)), pc(std::move(p)) {
  params = collect_state_params(mem, pc);
}

ProgState compose_state(const ProgState& s1, const ProgState& s2) {
  ProgState r;
  r.loc = s2.loc;
  r.mem = compose_mem(s1.mem, s2.mem);
  r.pc = conjoin(s1.pc, simplify(subst_symbols(s1.mem, s2.pc)));
  r.params = collect_state_params(r.mem, r.pc);
  return r;
}

ProgState instantiate(const ProgState& s, const Valuation& v) {
  ProgState r;
  r.loc = s.loc;
  r.mem = instantiate(s.mem, v);
  r.pc = instantiate(s.pc, v);
  r.params = collect_state_params(r.mem, r.pc);
  return r;
}

}  // namespace cse
