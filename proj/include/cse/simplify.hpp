#pragma once

#include "cse/expr.hpp"

namespace cse {

/// Semantics-preserving normal form. Constant folding; n-ary sums are
/// flattened and collected into c0 + sum(ci*ti) with terms in a fixed
/// structural order; ite and bounded-forall trivialities are folded;
/// true conjuncts are dropped. Idempotent: simplify(simplify(x)) is
/// structurally identical to simplify(x). Conjunct order is preserved.
ExprPtr simplify(const ExprPtr& e);
FormulaPtr simplify(const FormulaPtr& f);

/// Decomposition of a simplified expression as base + offset, where offset
/// is a literal. Used by the template derivation rules: ~a + c matches with
/// base = ~a; a bare ~a matches with offset 0.
struct LinearMatch {
  long long offset = 0;
  long long coeff = 1;
  bool single_symbol = false;  // expression is coeff*~name + offset exactly
  std::string symbol;
};

LinearMatch match_linear(const ExprPtr& simplified);

}  // namespace cse
