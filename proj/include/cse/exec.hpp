#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cse/flowgraph.hpp"
#include "cse/smt.hpp"
#include "cse/state.hpp"

namespace cse {

struct InvalidPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Limits {
  long max_nodes = 100000;
  int max_depth = 64;
  double max_seconds = 0;  // 0 = no wall-clock budget
};

enum class NodeKind { Normal, FailedLeaf, TemplateNode };

const char* to_string(NodeKind k);

struct TreeNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  ProgState state;
  NodeKind kind = NodeKind::Normal;
  std::vector<int> children;
  // provenance: exactly one of the two applies to a non-root node
  int edge_index = -1;     // classic step: index of the flowgraph edge taken
  int template_id = -1;    // template step: index into the template pool
  int template_exit = -1;  // which exit of that template
  int param = -1;          // fresh parameter introduced by the application
  int core_len = 0;        // edges per core iteration (template steps)
  int exit_steps = 0;      // edges on the exit path (template steps)
  std::string label;       // covered-paths label, e.g. "(cdb)^k#1 ce"
  bool cut = false;        // a limit stopped expansion here
};

struct ExecTree {
  std::vector<TreeNode> nodes;
  int root = 0;
  int depth_limit = 0;        // the max_depth this tree was built with
  std::string limit_tripped;  // "", "nodes", "depth" or "time"
  long templates_applied = 0;
  long failed_leaf_count = 0;
  long smt_unknown = 0;
  long unsat_pruned = 0;
  std::vector<std::string> prune_log;  // dropped UNSAT candidates, for debugging

  bool tripped() const { return !limit_tripped.empty(); }
  std::vector<int> leaf_ids() const;
  /// Leaves that terminate genuinely: not cut by a limit, not failed.
  std::vector<int> true_leaf_ids() const;
  bool has_failed_leaves() const { return failed_leaf_count > 0; }
};

/// Classic symbolic execution of the instructions along rho, starting from
/// the given memory and path condition. No satisfiability checks.
ProgState execute_path(const Flowgraph& fg, const Path& rho, const SymMemory& start_mem,
                       const FormulaPtr& start_pc);

/// One candidate successor per outgoing edge, in declaration order, with no
/// satisfiability filtering. Provenance pairs each state with its edge (or,
/// for template applications, with the template/exit/parameter triple).
struct Candidate {
  ProgState state;
  int edge_index = -1;
  int template_id = -1;
  int template_exit = -1;
  int param = -1;
  int core_len = 0;
  int exit_steps = 0;
  std::string label;
};
std::vector<Candidate> compute_classic_successors(const Flowgraph& fg, const ProgState& s);

/// Shared BFS driver. When the hook is set and fills candidates for a
/// dequeued state, those replace the classic successors for that step
/// (counted as one template application). SAT candidates become enqueued
/// nodes, UNKNOWN ones failed leaves, UNSAT ones are dropped.
using ExpandHook = std::function<bool(const ProgState&, std::vector<Candidate>&)>;
ExecTree bfs_execute(const Flowgraph& fg, const SolverConfig& cfg, const Limits& lim,
                     const ExpandHook& hook);

/// BFS tree construction without templates.
ExecTree run_classic(const Flowgraph& fg, const SolverConfig& cfg, const Limits& lim);

}  // namespace cse
