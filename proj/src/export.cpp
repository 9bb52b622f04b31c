#include "cse/export.hpp"

#include <fstream>

namespace cse {

namespace {

Json edge_json(const Edge& e) {
  return Json{{"src", e.src}, {"dst", e.dst}, {"index", e.index}};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json tree_to_json(const ExecTree& tree, const Flowgraph& fg) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["program"] = fg.name;
  j["limit_tripped"] = tree.limit_tripped;
  j["summary"] = Json{{"nodes", tree.nodes.size()},
                      {"failed_leaves", tree.failed_leaf_count},
                      {"smt_unknown", tree.smt_unknown},
                      {"templates_applied", tree.templates_applied},
                      {"unsat_pruned", tree.unsat_pruned}};
  Json nodes = Json::array();
  for (const TreeNode& n : tree.nodes) {
    Json nj;
    nj["id"] = n.id;
    nj["parent"] = n.parent < 0 ? Json(nullptr) : Json(n.parent);
    nj["depth"] = n.depth;
    nj["loc"] = n.state.loc;
    nj["kind"] = to_string(n.kind);
    nj["cut"] = n.cut;
    if (n.edge_index >= 0)
      nj["edge"] = edge_json(fg.edges[n.edge_index]);
    else
      nj["edge"] = nullptr;
    if (n.template_id >= 0)
      nj["template"] = Json{{"pool_index", n.template_id},
                            {"exit", n.template_exit},
                            {"param", "k#" + std::to_string(n.param)},
                            {"label", n.label}};
    else
      nj["template"] = nullptr;
    Json mem;
    for (const auto& [var, val] : n.state.mem.entries) mem[var] = to_string(val);
    nj["mem"] = std::move(mem);
    nj["pc"] = to_string(n.state.pc);
    Json params = Json::array();
    for (int p : n.state.params) params.push_back("k#" + std::to_string(p));
    nj["params"] = std::move(params);
    nj["children"] = n.children;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Json cycles_to_json(const CycleSet& cs, const Flowgraph& fg) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["program"] = fg.name;
  j["truncated"] = cs.truncated;
  Json arr = Json::array();
  for (const Cycle& c : cs.cycles) {
    Json cj;
    cj["core"] = c.core_string();
    cj["entry"] = c.entry;
    cj["witness"] = edge_json(*c.entry_witness);
    Json exits = Json::array();
    for (const Edge* e : c.exits) exits.push_back(edge_json(*e));
    cj["exits"] = std::move(exits);
    arr.push_back(std::move(cj));
  }
  j["cycles"] = std::move(arr);
  return j;
}

Json templates_to_json(const TemplatePool& pool, const Flowgraph& fg) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["program"] = fg.name;
  j["cycles_truncated"] = pool.cycles_truncated;
  Json ts = Json::array();
  for (const Template& t : pool.templates) {
    Json tj;
    tj["entry"] = t.entry;
    tj["param"] = "k#" + std::to_string(t.param);
    tj["core"] = t.cycle.core_string();
    Json mem;
    for (const auto& [var, val] : t.theta_star.entries) mem[var] = to_string(val);
    tj["theta_star"] = std::move(mem);
    tj["phi_star"] = to_string(t.phi_star);
    Json exits = Json::array();
    for (const TemplateExit& ex : t.exits) {
      Json xj;
      xj["loc"] = ex.loc;
      xj["path_suffix"] = ex.path_suffix;
      xj["edge_index"] = ex.exit_edge_index;
      Json xmem;
      for (const auto& [var, val] : ex.mem.entries) xmem[var] = to_string(val);
      xj["mem"] = std::move(xmem);
      xj["pc"] = to_string(ex.pc);
      exits.push_back(std::move(xj));
    }
    tj["exits"] = std::move(exits);
    tj["applicable"] = t.applicable();
    ts.push_back(std::move(tj));
  }
  j["templates"] = std::move(ts);
  Json fails = Json::array();
  for (const TemplateFailure& f : pool.failures) fails.push_back(f.str());
  j["failures"] = std::move(fails);
  return j;
}

Json report_to_json(const MatchReport& rep, const std::string& kind) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  j["bound"] = rep.bound;
  j["matched"] = rep.matched;
  j["unmatched"] = rep.unmatched;
  j["inconclusive"] = rep.inconclusive;
  j["excluded_cut_leaves"] = rep.excluded_cut_leaves;
  j["aborted"] = rep.aborted;
  j["diagnostic"] = rep.diagnostic;
  Json rows = Json::array();
  for (const LeafVerdict& r : rep.rows) {
    Json rj;
    rj["leaf"] = r.leaf;
    rj["kind"] = to_string(r.kind);
    rj["counterpart"] = r.counterpart < 0 ? Json(nullptr) : Json(r.counterpart);
    rj["valuation"] = r.valuation.str();
    rj["note"] = r.note;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string tree_to_dot(const ExecTree& tree, const Flowgraph& fg, bool with_pc) {
  (void)fg;
  std::string out = "digraph tree {\n  node [fontname=\"monospace\"];\n";
  for (const TreeNode& n : tree.nodes) {
    std::string label = n.template_id >= 0 ? n.label : n.state.loc;
    if (with_pc) label += "\\n" + dot_escape(to_string(n.state.pc));
    out += "  n" + std::to_string(n.id) + " [label=\"" + dot_escape(label) + "\"";
    if (n.kind == NodeKind::TemplateNode) out += ", shape=box";
    if (n.kind == NodeKind::FailedLeaf) out += ", style=dashed";
    if (n.cut) out += ", color=gray";
    out += "];\n";
  }
  for (const TreeNode& n : tree.nodes)
    for (int c : n.children)
      out += "  n" + std::to_string(n.id) + " -> n" + std::to_string(c) + ";\n";
  out += "}\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace cse
