#include "cse/simplify.hpp"

#include <algorithm>
#include <cstdlib>

namespace cse {

namespace {

// Linear combination c0 + sum(coeff_i * term_i), terms non-literal and
// sorted structurally. Terms with coefficient 0 are removed.
struct Lin {
  long long c0 = 0;
  std::vector<std::pair<long long, ExprPtr>> terms;
};

void add_term(Lin& l, long long coeff, const ExprPtr& term) {
  if (coeff == 0) return;
  auto it = std::lower_bound(
      l.terms.begin(), l.terms.end(), term,
      [](const auto& a, const ExprPtr& t) { return compare(a.second, t) < 0; });
  if (it != l.terms.end() && compare(it->second, term) == 0) {
    it->first += coeff;
    if (it->first == 0) l.terms.erase(it);
  } else {
    l.terms.insert(it, {coeff, term});
  }
}

void accumulate(Lin& into, const Lin& other, long long scale) {
  into.c0 += scale * other.c0;
  for (const auto& [c, t] : other.terms) add_term(into, scale * c, t);
}

// Flattens a canonical product term into its factor list.
void factors_of(const ExprPtr& t, std::vector<ExprPtr>& out) {
  if (t->kind == ExprKind::Mul) {
    factors_of(t->lhs, out);
    factors_of(t->rhs, out);
  } else {
    out.push_back(t);
  }
}

ExprPtr product_term(const ExprPtr& a, const ExprPtr& b) {
  std::vector<ExprPtr> fs;
  factors_of(a, fs);
  factors_of(b, fs);
  std::sort(fs.begin(), fs.end(), [](const ExprPtr& x, const ExprPtr& y) {
    return compare(x, y) < 0;
  });
  ExprPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = mk_mul(acc, fs[i]);
  return acc;
}

Lin mul_lin(const Lin& a, const Lin& b) {
  Lin r;
  r.c0 = a.c0 * b.c0;
  for (const auto& [c, t] : b.terms) add_term(r, a.c0 * c, t);
  for (const auto& [c, t] : a.terms) add_term(r, b.c0 * c, t);
  for (const auto& [ca, ta] : a.terms)
    for (const auto& [cb, tb] : b.terms) add_term(r, ca * cb, product_term(ta, tb));
  return r;
}

Lin linearize(const ExprPtr& e);

Lin lin_atom(const ExprPtr& simplified) {
  Lin l;
  if (simplified->kind == ExprKind::IntLit) {
    l.c0 = simplified->num;
  } else {
    l.terms.push_back({1, simplified});
  }
  return l;
}

Lin linearize(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Add: {
      Lin l = linearize(e->lhs);
      accumulate(l, linearize(e->rhs), 1);
      return l;
    }
    case ExprKind::Sub: {
      Lin l = linearize(e->lhs);
      accumulate(l, linearize(e->rhs), -1);
      return l;
    }
    case ExprKind::Mul: return mul_lin(linearize(e->lhs), linearize(e->rhs));
    default: return lin_atom(simplify(e));
  }
}

ExprPtr scaled(long long c, const ExprPtr& t) {
  return c == 1 ? t : mk_mul(mk_int(c), t);
}

ExprPtr rebuild(const Lin& l) {
  if (l.terms.empty()) return mk_int(l.c0);
  ExprPtr acc = scaled(l.terms[0].first, l.terms[0].second);
  for (size_t i = 1; i < l.terms.size(); ++i) {
    auto [c, t] = l.terms[i];
    acc = c > 0 ? mk_add(acc, scaled(c, t)) : mk_sub(acc, scaled(-c, t));
  }
  if (l.c0 > 0) acc = mk_add(acc, mk_int(l.c0));
  if (l.c0 < 0) acc = mk_sub(acc, mk_int(-l.c0));
  return acc;
}

bool literal(const FormulaPtr& f, bool v) {
  return f->kind == FormKind::BoolLit && f->bval == v;
}

bool fold_cmp(CmpOp op, long long a, long long b) {
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
  }
  return false;
}

}  // namespace

ExprPtr simplify(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::Param:
    case ExprKind::BoundVar: return e;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: return rebuild(linearize(e));
    case ExprKind::Pow: {
      ExprPtr b = simplify(e->lhs), x = simplify(e->rhs);
      if (x->kind == ExprKind::IntLit) {
        if (x->num == 0) return mk_int(1);
        if (x->num == 1) return b;
        if (b->kind == ExprKind::IntLit && x->num > 0 && x->num <= 62) {
          long long r = 1;
          bool ok = true;
          for (long long i = 0; i < x->num; ++i) {
            r *= b->num;
            if (std::llabs(r) > (1LL << 60)) { ok = false; break; }
          }
          if (ok) return mk_int(r);
        }
      }
      if (b->kind == ExprKind::IntLit && b->num == 1) return mk_int(1);
      return mk_pow(b, x);
    }
    case ExprKind::Select: return mk_select(e->name, simplify(e->lhs));
    case ExprKind::Ite: {
      FormulaPtr c = simplify(e->cond);
      ExprPtr t = simplify(e->lhs), f = simplify(e->rhs);
      if (literal(c, true)) return t;
      if (literal(c, false)) return f;
      if (equal(t, f)) return t;
      return mk_ite(c, t, f);
    }
  }
  return e;
}

FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case FormKind::BoolLit: return f;
    case FormKind::Cmp: {
      ExprPtr l = simplify(f->lhs), r = simplify(f->rhs);
      if (l->kind == ExprKind::IntLit && r->kind == ExprKind::IntLit)
        return mk_bool(fold_cmp(f->op, l->num, r->num));
      if (equal(l, r)) {
        switch (f->op) {
          case CmpOp::Eq:
          case CmpOp::Le:
          case CmpOp::Ge: return f_true();
          default: return f_false();
        }
      }
      return mk_cmp(f->op, l, r);
    }
    case FormKind::And: {
      std::vector<FormulaPtr> out;
      for (const auto& g : f->args) {
        FormulaPtr s = simplify(g);
        if (literal(s, true)) continue;
        if (literal(s, false)) return f_false();
        if (s->kind == FormKind::And) {
          out.insert(out.end(), s->args.begin(), s->args.end());
        } else {
          out.push_back(s);
        }
      }
      return mk_and(std::move(out));
    }
    case FormKind::Or: {
      std::vector<FormulaPtr> out;
      for (const auto& g : f->args) {
        FormulaPtr s = simplify(g);
        if (literal(s, false)) continue;
        if (literal(s, true)) return f_true();
        if (s->kind == FormKind::Or) {
          out.insert(out.end(), s->args.begin(), s->args.end());
        } else {
          out.push_back(s);
        }
      }
      return mk_or(std::move(out));
    }
    case FormKind::Not: {
      FormulaPtr a = simplify(f->args[0]);
      if (a->kind == FormKind::BoolLit) return mk_bool(!a->bval);
      if (a->kind == FormKind::Not) return a->args[0];
      if (a->kind == FormKind::Cmp) return mk_cmp(cmp_negate(a->op), a->lhs, a->rhs);
      return mk_not(a);
    }
    case FormKind::Implies: {
      FormulaPtr a = simplify(f->args[0]), b = simplify(f->args[1]);
      if (literal(a, false)) return f_true();
      if (literal(a, true)) return b;
      if (literal(b, true)) return f_true();
      if (literal(b, false)) return simplify(mk_not(a));
      return mk_implies(a, b);
    }
    case FormKind::Forall: {
      ExprPtr lo = simplify(f->lo), hi = simplify(f->hi);
      FormulaPtr body = simplify(f->body);
      if (literal(body, true)) return f_true();
      if (lo->kind == ExprKind::IntLit && hi->kind == ExprKind::IntLit &&
          hi->num <= lo->num)
        return f_true();  // vacuous range
      return mk_forall(f->bound, lo, hi, body);
    }
  }
  return f;
}

LinearMatch match_linear(const ExprPtr& e) {
  LinearMatch m;
  Lin l = linearize(e);
  m.offset = l.c0;
  if (l.terms.size() == 1 && l.terms[0].second->kind == ExprKind::Symbol) {
    m.single_symbol = true;
    m.coeff = l.terms[0].first;
    m.symbol = l.terms[0].second->name;
  }
  return m;
}

}  // namespace cse
