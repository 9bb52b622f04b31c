#pragma once

#include <variant>

#include "cse/cycles.hpp"
#include "cse/exec.hpp"
#include "cse/state.hpp"

namespace cse {

struct TemplateExit {
  std::string loc;           // exit location
  SymMemory mem;             // theta_i[kappa]
  FormulaPtr pc;             // phi_i[kappa]
  int exit_edge_index = -1;  // provenance
  int path_edges = 0;        // edges on the exit path (prefix + exit edge)
  std::string path_suffix;   // locations after the entry on the exit path, e.g. "ce"
};

/// Parametric description of kappa iterations of a cycle core followed by
/// one exit edge: the entry location plus one parametric state per
/// provably feasible exit.
struct Template {
  std::string entry;
  int param = -1;  // kappa
  std::vector<TemplateExit> exits;
  Cycle cycle;            // provenance
  SymMemory theta_star;   // parametric memory of the core alone
  FormulaPtr phi_star;    // kappa >= 0 && forall tau < kappa . theta*[tau]<phi>

  /// Templates whose exits all turned out infeasible are kept for
  /// reporting but never applied (applying one would truncate the tree).
  bool applicable() const { return !exits.empty(); }
  /// Interior core word from the entry, e.g. "cdb" for core b c d b.
  std::string core_label() const;
};

struct TemplateFailure {
  enum class Reason {
    CoreInfeasibleOrUnknown,      // single iteration not provably feasible
    MemoryDerivationIncomplete,   // some variable stayed bottom
    ExitFeasibilityUnknown,       // an exit path produced UNKNOWN
  };
  Reason reason;
  Cycle cycle;
  std::vector<std::string> bottom_vars;  // MemoryDerivationIncomplete
  int exit_edge_index = -1;              // ExitFeasibilityUnknown

  std::string str() const;
};

using TemplateResult = std::variant<Template, TemplateFailure>;

/// The full template computation for one cycle. Never throws; the three
/// failure cases mirror the three ways the computation can bail out.
TemplateResult compute_template(const Flowgraph& fg, const Cycle& c,
                                const SolverConfig& cfg, ParamGen& pg);

/// Derivation of the parametric memory from the single-iteration memory.
/// Rules, first match wins per variable per pass:
///   R1  theta(a) = ~a + c        ->  theta*(a) = ~a + kappa*c
///   R2  theta(a) = ~a * c        ->  theta*(a) = ~a * c^kappa
///   R3  theta(a) = g, all symbols of g already derived
///                                ->  theta*(a) = ite(kappa>0, theta*[kappa-1]<g>, ~a)
/// Arrays map to their own symbols. Variables matching no rule stay bottom.
struct DeriveResult {
  SymMemory theta_star;
  std::vector<std::string> bottom;  // variables left underived
};
DeriveResult derive_parametric_memory(const SymMemory& theta, const Flowgraph& fg,
                                      int kappa);

/// kappa >= 0 && forall tau in [0,kappa) . theta*[tau]<phi>.
FormulaPtr build_parametric_pc(const SymMemory& theta_star, const FormulaPtr& phi,
                               int kappa);

/// Convenience: enumerate cycles and compute templates for all of them.
struct TemplatePool {
  std::vector<Template> templates;  // successes, in cycle order
  std::vector<TemplateFailure> failures;
  bool cycles_truncated = false;
};
TemplatePool compute_all_templates(const Flowgraph& fg, const SolverConfig& cfg,
                                   ParamGen& pg, int cycle_cap = 1000);

}  // namespace cse
