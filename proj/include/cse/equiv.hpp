#pragma once

#include "cse/smt.hpp"
#include "cse/state.hpp"

namespace cse {

enum class Equiv { Yes, No, Unknown };

const char* to_string(Equiv e);

struct EquivOutcome {
  Equiv verdict = Equiv::Unknown;
  std::optional<Model> witness;  // refuting assignment on No
  std::string diagnostic;
};

struct EquivOptions {
  /// When set, syntactically identical components (after simplify and
  /// constant-bound quantifier expansion) are accepted without a solver
  /// query. Disable to force every check through the solver.
  bool syntactic_fast_path = true;
  long long expand_width = 32;
};

/// Logical state equivalence: same location, per-variable equal memories,
/// equivalent path conditions. Validity checks are discharged as one
/// satisfiability query over the disjunction of component disequalities
/// (UNSAT of that disjunction establishes every component validity).
/// Both states must be parameter-free.
EquivOutcome states_equivalent(const ProgState& s1, const ProgState& s2,
                               const SolverConfig& cfg, const EquivOptions& opts = {});

/// Formula-level equivalence via the same route (XOR unsatisfiability).
EquivOutcome formulas_equivalent(const FormulaPtr& f1, const FormulaPtr& f2,
                                 const SolverConfig& cfg, const EquivOptions& opts = {});

/// Replaces free occurrences of the named bound variable. Stops at a
/// quantifier that rebinds the same name.
FormulaPtr subst_bound(const FormulaPtr& f, const std::string& name, const ExprPtr& repl);
ExprPtr subst_bound(const ExprPtr& e, const std::string& name, const ExprPtr& repl);

/// Unrolls bounded universals with constant bounds of width <= max_width
/// into explicit conjunctions (ascending). Used to compare quantified
/// parametric states against classic unrollings syntactically.
FormulaPtr expand_bounded_foralls(const FormulaPtr& f, long long max_width);

}  // namespace cse
