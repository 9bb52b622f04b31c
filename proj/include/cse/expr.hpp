#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cse {

struct Expr;
struct Formula;
using ExprPtr = std::shared_ptr<const Expr>;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Integer-valued symbolic expression.
///
/// Variable reads are represented as Symbol nodes: ~v is the first-order
/// constant holding the value of v at the start of the analysed code.
/// Flowgraph instructions reuse the same AST (a source-level read of v is
/// Symbol(v)), so applying a symbolic memory to an instruction expression
/// is the same substitution used everywhere else.
enum class ExprKind {
  IntLit,    // integer constant
  Symbol,    // ~v, the symbol of program variable v
  Param,     // k#n, iteration-count parameter
  BoundVar,  // quantifier-bound variable
  Add,
  Sub,
  Mul,
  Pow,     // pow(base, exp); exp is a Param or BoundVar (or a literal after instantiation)
  Select,  // array read A(idx); the array is always its own symbol
  Ite,     // ite(cond, then, else)
};

struct Expr {
  ExprKind kind;
  long long num = 0;     // IntLit
  std::string name;      // Symbol / BoundVar / Select (array name)
  int param = -1;        // Param id
  ExprPtr lhs, rhs;      // binary ops; Select index in lhs; Ite branches in lhs/rhs
  FormulaPtr cond;       // Ite
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class FormKind {
  BoolLit,
  Cmp,
  And,      // n-ary, order-preserving
  Or,       // n-ary
  Not,
  Implies,
  Forall,   // forall t in [lo,hi) . body
};

struct Formula {
  FormKind kind;
  bool bval = false;                // BoolLit
  CmpOp op = CmpOp::Eq;             // Cmp
  ExprPtr lhs, rhs;                 // Cmp
  std::vector<FormulaPtr> args;     // And/Or children; Not uses args[0]; Implies args[0:2]
  std::string bound;                // Forall binder
  ExprPtr lo, hi;                   // Forall range [lo,hi)
  FormulaPtr body;                  // Forall body
};

// ---- constructors ----

ExprPtr mk_int(long long v);
ExprPtr mk_sym(std::string var);
ExprPtr mk_param(int id);
ExprPtr mk_bvar(std::string name);
ExprPtr mk_add(ExprPtr l, ExprPtr r);
ExprPtr mk_sub(ExprPtr l, ExprPtr r);
ExprPtr mk_mul(ExprPtr l, ExprPtr r);
ExprPtr mk_pow(ExprPtr base, ExprPtr exp);
ExprPtr mk_select(std::string array, ExprPtr idx);
ExprPtr mk_ite(FormulaPtr c, ExprPtr t, ExprPtr e);

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr mk_bool(bool b);
FormulaPtr mk_cmp(CmpOp op, ExprPtr l, ExprPtr r);
FormulaPtr mk_and(std::vector<FormulaPtr> args);
FormulaPtr mk_and2(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(std::vector<FormulaPtr> args);
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(std::string bound, ExprPtr lo, ExprPtr hi, FormulaPtr body);

/// a && b with true units dropped; does not flatten or simplify further.
FormulaPtr conjoin(FormulaPtr a, FormulaPtr b);

// ---- structural comparison ----

bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
int compare(const ExprPtr& a, const ExprPtr& b);   // total order, <0 / 0 / >0
int compare(const FormulaPtr& a, const FormulaPtr& b);

// ---- traversal helpers ----

void collect_symbols(const ExprPtr& e, std::set<std::string>& scalars,
                     std::set<std::string>& arrays);
void collect_symbols(const FormulaPtr& f, std::set<std::string>& scalars,
                     std::set<std::string>& arrays);
void collect_params(const ExprPtr& e, std::set<int>& out);
void collect_params(const FormulaPtr& f, std::set<int>& out);
bool contains_pow(const FormulaPtr& f);

// ---- printing ----

/// Source style prints variable reads bare (i, A[i]); symbolic style prints
/// the symbol forms (~i, A(~i), k#0).
enum class PrintStyle { Source, Symbolic };

std::string to_string(const ExprPtr& e, PrintStyle style = PrintStyle::Symbolic);
std::string to_string(const FormulaPtr& f, PrintStyle style = PrintStyle::Symbolic);

const char* cmp_op_str(CmpOp op);
CmpOp cmp_negate(CmpOp op);

/// Fresh parameter ids, unique within one engine run.
class ParamGen {
 public:
  int fresh() { return next_++; }

 private:
  std::atomic_int next_{0};
};

}  // namespace cse
