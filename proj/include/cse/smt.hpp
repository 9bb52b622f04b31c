#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "cse/expr.hpp"
#include "cse/flowgraph.hpp"

namespace cse {

struct UndeclaredSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sat { Sat, Unsat, Unknown };

const char* to_string(Sat s);

/// Assignment witnessing satisfiability. Keys use the pretty-printed
/// symbol forms: "~i" for scalar symbols, "k#0" for parameters, "A(3)"
/// for individual array cells.
struct Model {
  std::map<std::string, long long> ints;
  std::string raw;  // raw solver output when the model came from outside
};

struct SatResult {
  Sat verdict = Sat::Unknown;
  std::optional<Model> model;
  double millis = 0.0;
  std::string diagnostic;  // reason attached to Unknown verdicts
  bool from_presolve = false;
};

struct SolverConfig {
  std::string solver_path = "z3";  // CSE_SOLVER env var takes precedence
  int timeout_ms = 5000;
  std::string logic = "ALL";
  std::string log_dir;     // write q<counter>.smt2 / q<counter>.out here
  std::string replay_dir;  // answer queries from previously logged files
  bool request_models = true;
  bool presolve = true;  // bounded internal model search before spawning
};

struct SymbolUniverse {
  std::set<std::string> ints;
  std::set<std::string> arrays;
};

SymbolUniverse universe_of(const Flowgraph& fg);
SymbolUniverse scan_universe(const FormulaPtr& phi);

/// Complete solver script for phi: declarations (stable order), the
/// power-function axioms when needed, one assertion, one check command.
/// Throws UndeclaredSymbol if phi mentions a symbol outside fg.
std::string emit(const FormulaPtr& phi, const Flowgraph& fg,
                 const std::string& logic = "ALL");
std::string emit(const FormulaPtr& phi, const SymbolUniverse& uni,
                 const std::string& logic = "ALL");

/// Tri-state satisfiability. Never throws: every failure (timeout, spawn
/// error, unparsable output, replay miss) folds into Unknown with a
/// diagnostic. Free parameters are emitted as plain integer constants;
/// parametric path conditions already carry their own k >= 0 conjunct.
SatResult satisfiable(const FormulaPtr& phi, const SolverConfig& cfg);

/// Evaluates a quantifier-free formula under a model (used to cross-check
/// SAT answers). Returns nullopt when the model lacks a needed value.
std::optional<bool> eval_under_model(const FormulaPtr& phi, const Model& m);

/// Per-process query statistics, for run summaries.
struct SolverStats {
  long queries = 0;
  long presolve_sat = 0;
  long external = 0;
  long unknown = 0;
};
SolverStats solver_stats_snapshot();
void solver_stats_reset();

}  // namespace cse
