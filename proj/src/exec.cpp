#include "cse/exec.hpp"

#include <chrono>
#include <deque>

#include "cse/simplify.hpp"

namespace cse {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Normal: return "normal";
    case NodeKind::FailedLeaf: return "failed";
    case NodeKind::TemplateNode: return "template";
  }
  return "?";
}

std::vector<int> ExecTree::leaf_ids() const {
  std::vector<int> out;
  for (const TreeNode& n : nodes)
    if (n.children.empty()) out.push_back(n.id);
  return out;
}

std::vector<int> ExecTree::true_leaf_ids() const {
  std::vector<int> out;
  for (const TreeNode& n : nodes)
    if (n.children.empty() && !n.cut && n.kind != NodeKind::FailedLeaf)
      out.push_back(n.id);
  return out;
}

namespace {

void apply_instr(const Instr& in, SymMemory& mem, FormulaPtr& pc) {
  if (in.kind == Instr::Kind::Assign) {
    ExprPtr value = simplify(subst_symbols(mem, in.rhs));
    mem.entries[in.var] = std::move(value);
  } else {
    pc = conjoin(pc, simplify(subst_symbols(mem, in.cond)));
  }
}

void check_path_in(const Flowgraph& fg, const Path& rho) {
  if (!rho.well_formed()) throw InvalidPath("path locations do not chain");
  if (!fg.has_location(rho.start)) throw InvalidPath("unknown start location " + rho.start);
  for (const Edge* e : rho.edges) {
    if (!e || e->index < 0 || e->index >= static_cast<int>(fg.edges.size()) ||
        &fg.edges[e->index] != e)
      throw InvalidPath("path uses an edge outside the flowgraph");
  }
}

}  // namespace

ProgState execute_path(const Flowgraph& fg, const Path& rho, const SymMemory& start_mem,
                       const FormulaPtr& start_pc) {
  check_path_in(fg, rho);
  SymMemory mem = start_mem;
  FormulaPtr pc = start_pc;
  for (const Edge* e : rho.edges)
    for (const Instr& in : e->body) apply_instr(in, mem, pc);
  return ProgState(rho.last_loc(), std::move(mem), std::move(pc));
}

std::vector<Candidate> compute_classic_successors(const Flowgraph& fg, const ProgState& s) {
  std::vector<Candidate> out;
  for (const Edge* e : fg.successors(s.loc)) {
    SymMemory mem = s.mem;
    FormulaPtr pc = s.pc;
    for (const Instr& in : e->body) apply_instr(in, mem, pc);
    Candidate c;
    c.state = ProgState(e->dst, std::move(mem), std::move(pc));
    c.edge_index = e->index;
    out.push_back(std::move(c));
  }
  return out;
}

ExecTree bfs_execute(const Flowgraph& fg, const SolverConfig& cfg, const Limits& lim,
                     const ExpandHook& hook) {
  ExecTree tree;
  tree.depth_limit = lim.max_depth;
  const auto t0 = std::chrono::steady_clock::now();

  SymMemory init = identity_memory(fg.var_universe());
  TreeNode root;
  root.id = 0;
  root.state = ProgState(fg.start, std::move(init), f_true());
  tree.nodes.push_back(std::move(root));

  std::deque<int> queue{0};
  bool stop = false;
  while (!queue.empty() && !stop) {
    if (lim.max_seconds > 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
      if (el.count() > lim.max_seconds) {
        tree.limit_tripped = "time";
        break;
      }
    }
    int id = queue.front();
    queue.pop_front();

    if (fg.is_terminal(tree.nodes[id].state.loc)) continue;
    if (tree.nodes[id].depth >= lim.max_depth) {
      tree.nodes[id].cut = true;
      tree.limit_tripped = "depth";
      continue;
    }

    std::vector<Candidate> cands;
    bool templated = hook && hook(tree.nodes[id].state, cands);
    if (templated)
      tree.templates_applied++;
    else
      cands = compute_classic_successors(fg, tree.nodes[id].state);

    for (Candidate& cand : cands) {
      SatResult r = satisfiable(cand.state.pc, cfg);
      if (r.verdict == Sat::Unsat) {
        tree.unsat_pruned++;
        tree.prune_log.push_back("node " + std::to_string(id) + " -> " +
                                 cand.state.loc + ": unsat");
        continue;
      }
      TreeNode child;
      child.id = static_cast<int>(tree.nodes.size());
      child.parent = id;
      child.depth = tree.nodes[id].depth + 1;
      child.state = std::move(cand.state);
      child.edge_index = cand.edge_index;
      child.template_id = cand.template_id;
      child.template_exit = cand.template_exit;
      child.param = cand.param;
      child.core_len = cand.core_len;
      child.exit_steps = cand.exit_steps;
      child.label = std::move(cand.label);
      if (r.verdict == Sat::Unknown) {
        tree.smt_unknown++;
        tree.failed_leaf_count++;
        child.kind = NodeKind::FailedLeaf;
        tree.nodes[id].children.push_back(child.id);
        tree.nodes.push_back(std::move(child));
        continue;  // failed leaves are never expanded
      }
      child.kind = templated ? NodeKind::TemplateNode : NodeKind::Normal;
      tree.nodes[id].children.push_back(child.id);
      int cid = child.id;
      tree.nodes.push_back(std::move(child));
      queue.push_back(cid);
      if (static_cast<long>(tree.nodes.size()) >= lim.max_nodes) {
        tree.limit_tripped = "nodes";
        tree.nodes[id].cut = true;
        stop = true;
        break;
      }
    }
  }
  if (stop || tree.limit_tripped == "time")
    for (int id : queue) tree.nodes[id].cut = true;
  return tree;
}

ExecTree run_classic(const Flowgraph& fg, const SolverConfig& cfg, const Limits& lim) {
  return bfs_execute(fg, cfg, lim, nullptr);
}

}  // namespace cse
