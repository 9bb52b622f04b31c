#include "cse/expr.hpp"

#include <sstream>

namespace cse {

namespace {

ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }
FormulaPtr make(Formula f) { return std::make_shared<Formula>(std::move(f)); }

const FormulaPtr& true_singleton() {
  static const FormulaPtr t = make(Formula{.kind = FormKind::BoolLit, .bval = true});
  return t;
}
const FormulaPtr& false_singleton() {
  static const FormulaPtr f = make(Formula{.kind = FormKind::BoolLit, .bval = false});
  return f;
}

}  // namespace

ExprPtr mk_int(long long v) { return make(Expr{.kind = ExprKind::IntLit, .num = v}); }
ExprPtr mk_sym(std::string var) {
  return make(Expr{.kind = ExprKind::Symbol, .name = std::move(var)});
}
ExprPtr mk_param(int id) { return make(Expr{.kind = ExprKind::Param, .param = id}); }
ExprPtr mk_bvar(std::string name) {
  return make(Expr{.kind = ExprKind::BoundVar, .name = std::move(name)});
}
ExprPtr mk_add(ExprPtr l, ExprPtr r) {
  return make(Expr{.kind = ExprKind::Add, .lhs = std::move(l), .rhs = std::move(r)});
}
ExprPtr mk_sub(ExprPtr l, ExprPtr r) {
  return make(Expr{.kind = ExprKind::Sub, .lhs = std::move(l), .rhs = std::move(r)});
}
ExprPtr mk_mul(ExprPtr l, ExprPtr r) {
  return make(Expr{.kind = ExprKind::Mul, .lhs = std::move(l), .rhs = std::move(r)});
}
ExprPtr mk_pow(ExprPtr base, ExprPtr exp) {
  return make(Expr{.kind = ExprKind::Pow, .lhs = std::move(base), .rhs = std::move(exp)});
}
ExprPtr mk_select(std::string array, ExprPtr idx) {
  return make(Expr{.kind = ExprKind::Select, .name = std::move(array), .lhs = std::move(idx)});
}
ExprPtr mk_ite(FormulaPtr c, ExprPtr t, ExprPtr e) {
  return make(Expr{.kind = ExprKind::Ite,
                   .lhs = std::move(t),
                   .rhs = std::move(e),
                   .cond = std::move(c)});
}

FormulaPtr f_true() { return true_singleton(); }
FormulaPtr f_false() { return false_singleton(); }
FormulaPtr mk_bool(bool b) { return b ? f_true() : f_false(); }

FormulaPtr mk_cmp(CmpOp op, ExprPtr l, ExprPtr r) {
  return make(Formula{.kind = FormKind::Cmp, .op = op, .lhs = std::move(l), .rhs = std::move(r)});
}
FormulaPtr mk_and(std::vector<FormulaPtr> args) {
  if (args.empty()) return f_true();
  if (args.size() == 1) return args.front();
  return make(Formula{.kind = FormKind::And, .args = std::move(args)});
}
FormulaPtr mk_and2(FormulaPtr a, FormulaPtr b) {
  return make(Formula{.kind = FormKind::And, .args = {std::move(a), std::move(b)}});
}
FormulaPtr mk_or(std::vector<FormulaPtr> args) {
  if (args.empty()) return f_false();
  if (args.size() == 1) return args.front();
  return make(Formula{.kind = FormKind::Or, .args = std::move(args)});
}
FormulaPtr mk_not(FormulaPtr a) {
  return make(Formula{.kind = FormKind::Not, .args = {std::move(a)}});
}
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return make(Formula{.kind = FormKind::Implies, .args = {std::move(a), std::move(b)}});
}
FormulaPtr mk_forall(std::string bound, ExprPtr lo, ExprPtr hi, FormulaPtr body) {
  return make(Formula{.kind = FormKind::Forall,
                      .bound = std::move(bound),
                      .lo = std::move(lo),
                      .hi = std::move(hi),
                      .body = std::move(body)});
}

FormulaPtr conjoin(FormulaPtr a, FormulaPtr b) {
  if (a->kind == FormKind::BoolLit && a->bval) return b;
  if (b->kind == FormKind::BoolLit && b->bval) return a;
  return mk_and2(std::move(a), std::move(b));
}

// ---- comparison ----

namespace {
template <typename T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}
}  // namespace

int compare(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case ExprKind::IntLit: return cmp3(a->num, b->num);
    case ExprKind::Symbol:
    case ExprKind::BoundVar: return a->name.compare(b->name);
    case ExprKind::Param: return cmp3(a->param, b->param);
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Pow: {
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    }
    case ExprKind::Select: {
      if (int c = a->name.compare(b->name)) return c;
      return compare(a->lhs, b->lhs);
    }
    case ExprKind::Ite: {
      if (int c = compare(a->cond, b->cond)) return c;
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    }
  }
  return 0;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case FormKind::BoolLit: return cmp3(a->bval, b->bval);
    case FormKind::Cmp: {
      if (int c = cmp3(static_cast<int>(a->op), static_cast<int>(b->op))) return c;
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    }
    case FormKind::And:
    case FormKind::Or:
    case FormKind::Not:
    case FormKind::Implies: {
      if (int c = cmp3(a->args.size(), b->args.size())) return c;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (int c = compare(a->args[i], b->args[i])) return c;
      return 0;
    }
    case FormKind::Forall: {
      if (int c = a->bound.compare(b->bound)) return c;
      if (int c = compare(a->lo, b->lo)) return c;
      if (int c = compare(a->hi, b->hi)) return c;
      return compare(a->body, b->body);
    }
  }
  return 0;
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }
bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

// ---- traversal ----

void collect_symbols(const ExprPtr& e, std::set<std::string>& scalars,
                     std::set<std::string>& arrays) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Param:
    case ExprKind::BoundVar: return;
    case ExprKind::Symbol: scalars.insert(e->name); return;
    case ExprKind::Select:
      arrays.insert(e->name);
      collect_symbols(e->lhs, scalars, arrays);
      return;
    case ExprKind::Ite:
      collect_symbols(e->cond, scalars, arrays);
      collect_symbols(e->lhs, scalars, arrays);
      collect_symbols(e->rhs, scalars, arrays);
      return;
    default:
      collect_symbols(e->lhs, scalars, arrays);
      collect_symbols(e->rhs, scalars, arrays);
      return;
  }
}

void collect_symbols(const FormulaPtr& f, std::set<std::string>& scalars,
                     std::set<std::string>& arrays) {
  switch (f->kind) {
    case FormKind::BoolLit: return;
    case FormKind::Cmp:
      collect_symbols(f->lhs, scalars, arrays);
      collect_symbols(f->rhs, scalars, arrays);
      return;
    case FormKind::Forall:
      collect_symbols(f->lo, scalars, arrays);
      collect_symbols(f->hi, scalars, arrays);
      collect_symbols(f->body, scalars, arrays);
      return;
    default:
      for (const auto& g : f->args) collect_symbols(g, scalars, arrays);
      return;
  }
}

void collect_params(const ExprPtr& e, std::set<int>& out) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::BoundVar: return;
    case ExprKind::Param: out.insert(e->param); return;
    case ExprKind::Select: collect_params(e->lhs, out); return;
    case ExprKind::Ite:
      collect_params(e->cond, out);
      collect_params(e->lhs, out);
      collect_params(e->rhs, out);
      return;
    default:
      collect_params(e->lhs, out);
      collect_params(e->rhs, out);
      return;
  }
}

void collect_params(const FormulaPtr& f, std::set<int>& out) {
  switch (f->kind) {
    case FormKind::BoolLit: return;
    case FormKind::Cmp:
      collect_params(f->lhs, out);
      collect_params(f->rhs, out);
      return;
    case FormKind::Forall:
      collect_params(f->lo, out);
      collect_params(f->hi, out);
      collect_params(f->body, out);
      return;
    default:
      for (const auto& g : f->args) collect_params(g, out);
      return;
  }
}

namespace {
bool contains_pow(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::Param:
    case ExprKind::BoundVar: return false;
    case ExprKind::Pow: return true;
    case ExprKind::Select: return contains_pow(e->lhs);
    case ExprKind::Ite:
      return contains_pow(e->cond) || contains_pow(e->lhs) || contains_pow(e->rhs);
    default: return contains_pow(e->lhs) || contains_pow(e->rhs);
  }
}
}  // namespace

bool contains_pow(const FormulaPtr& f) {
  switch (f->kind) {
    case FormKind::BoolLit: return false;
    case FormKind::Cmp: return contains_pow(f->lhs) || contains_pow(f->rhs);
    case FormKind::Forall:
      return contains_pow(f->lo) || contains_pow(f->hi) || contains_pow(f->body);
    default:
      for (const auto& g : f->args)
        if (contains_pow(g)) return true;
      return false;
  }
}

// ---- printing ----

const char* cmp_op_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

CmpOp cmp_negate(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

namespace {

// Expression precedence: 0 additive, 1 multiplicative, 2 atom.
void print_expr(std::ostream& os, const ExprPtr& e, PrintStyle st, int parent_prec) {
  auto paren = [&](int prec, auto&& fn) {
    if (prec < parent_prec) {
      os << '(';
      fn();
      os << ')';
    } else {
      fn();
    }
  };
  switch (e->kind) {
    case ExprKind::IntLit:
      if (e->num < 0 && parent_prec > 0) {
        os << '(' << e->num << ')';
      } else {
        os << e->num;
      }
      return;
    case ExprKind::Symbol:
      if (st == PrintStyle::Symbolic) os << '~';
      os << e->name;
      return;
    case ExprKind::Param: os << "k#" << e->param; return;
    case ExprKind::BoundVar: os << e->name; return;
    case ExprKind::Add:
      paren(0, [&] {
        print_expr(os, e->lhs, st, 0);
        os << " + ";
        print_expr(os, e->rhs, st, 1);
      });
      return;
    case ExprKind::Sub:
      paren(0, [&] {
        print_expr(os, e->lhs, st, 0);
        os << " - ";
        print_expr(os, e->rhs, st, 1);
      });
      return;
    case ExprKind::Mul:
      paren(1, [&] {
        print_expr(os, e->lhs, st, 1);
        os << '*';
        print_expr(os, e->rhs, st, 2);
      });
      return;
    case ExprKind::Pow:
      os << "pow(";
      print_expr(os, e->lhs, st, 0);
      os << ',';
      print_expr(os, e->rhs, st, 0);
      os << ')';
      return;
    case ExprKind::Select:
      os << e->name;
      os << (st == PrintStyle::Source ? '[' : '(');
      print_expr(os, e->lhs, st, 0);
      os << (st == PrintStyle::Source ? ']' : ')');
      return;
    case ExprKind::Ite:
      os << "ite(" << to_string(e->cond, st) << ',';
      print_expr(os, e->lhs, st, 0);
      os << ',';
      print_expr(os, e->rhs, st, 0);
      os << ')';
      return;
  }
}

// Formula precedence: 0 ||, 1 &&, 2 unary/atom.
void print_form(std::ostream& os, const FormulaPtr& f, PrintStyle st, int parent_prec) {
  auto paren = [&](int prec, auto&& fn) {
    if (prec < parent_prec) {
      os << '(';
      fn();
      os << ')';
    } else {
      fn();
    }
  };
  switch (f->kind) {
    case FormKind::BoolLit: os << (f->bval ? "true" : "false"); return;
    case FormKind::Cmp:
      print_expr(os, f->lhs, st, 0);
      os << ' ' << cmp_op_str(f->op) << ' ';
      print_expr(os, f->rhs, st, 0);
      return;
    case FormKind::And:
      paren(1, [&] {
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << " && ";
          print_form(os, f->args[i], st, 2);
        }
      });
      return;
    case FormKind::Or:
      paren(0, [&] {
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << " || ";
          print_form(os, f->args[i], st, 1);
        }
      });
      return;
    case FormKind::Not:
      os << '!';
      if (f->args[0]->kind == FormKind::BoolLit) {
        print_form(os, f->args[0], st, 2);
      } else {
        os << '(';
        print_form(os, f->args[0], st, 0);
        os << ')';
      }
      return;
    case FormKind::Implies:
      os << '(';
      print_form(os, f->args[0], st, 0);
      os << " -> ";
      print_form(os, f->args[1], st, 0);
      os << ')';
      return;
    case FormKind::Forall:
      paren(1, [&] {
        os << "forall " << f->bound << " in [";
        print_expr(os, f->lo, st, 0);
        os << ',';
        print_expr(os, f->hi, st, 0);
        os << ") . ";
        print_form(os, f->body, st, 2);
      });
      return;
  }
}

}  // namespace

std::string to_string(const ExprPtr& e, PrintStyle style) {
  std::ostringstream os;
  print_expr(os, e, style, 0);
  return os.str();
}

std::string to_string(const FormulaPtr& f, PrintStyle style) {
  std::ostringstream os;
  print_form(os, f, style, 0);
  return os.str();
}

}  // namespace cse
