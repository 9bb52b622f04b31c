#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "cse/expr.hpp"

namespace cse {

struct MismatchedUniverse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingParameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Total map from every declared variable to its symbolic value. Array
/// variables always map to their own symbol (arrays are read-only).
struct SymMemory {
  std::map<std::string, ExprPtr> entries;

  const ExprPtr& at(const std::string& var) const;
  bool same_universe(const SymMemory& other) const;
};

/// theta_I over the given variables: every v maps to ~v.
SymMemory identity_memory(const std::set<std::string>& vars);

/// theta<target>: every Symbol(v) in target replaced by mem(v)
/// simultaneously. Bound variables and parameters are untouched. Symbols
/// not covered by mem are left in place (arrays never need rewriting).
ExprPtr subst_symbols(const SymMemory& mem, const ExprPtr& target);
FormulaPtr subst_symbols(const SymMemory& mem, const FormulaPtr& target);

/// (m1 <> m2)(a) = m1<m2(a)>. Entries are simplified.
SymMemory compose_mem(const SymMemory& m1, const SymMemory& m2);

/// Parameter valuation; all values are non-negative.
struct Valuation {
  std::map<int, long long> values;

  Valuation() = default;
  explicit Valuation(std::map<int, long long> v);
  bool covers(const std::set<int>& params) const;
  std::string str() const;
};

ExprPtr instantiate(const ExprPtr& x, const Valuation& v);
FormulaPtr instantiate(const FormulaPtr& x, const Valuation& v);
SymMemory instantiate(const SymMemory& m, const Valuation& v);

/// Replace every occurrence of parameter id by the given expression
/// (used for kappa -> kappa-1, kappa -> tau and template renaming).
ExprPtr subst_param(const ExprPtr& x, int id, const ExprPtr& repl);
FormulaPtr subst_param(const FormulaPtr& x, int id, const ExprPtr& repl);
SymMemory subst_param(const SymMemory& m, int id, const ExprPtr& repl);

/// Program state (l, theta, phi), possibly parametric.
struct ProgState {
  std::string loc;
  SymMemory mem;
  FormulaPtr pc;
  std::set<int> params;  // exactly the parameter ids present in mem or pc

  ProgState() = default;
  ProgState(std::string l, SymMemory m, FormulaPtr p);
};

std::set<int> collect_state_params(const SymMemory& mem, const FormulaPtr& pc);

/// s1 <> s2 = (s2.loc, s1.mem <> s2.mem, s1.pc && s1.mem<s2.pc>).
ProgState compose_state(const ProgState& s1, const ProgState& s2);

ProgState instantiate(const ProgState& s, const Valuation& v);

}  // namespace cse
