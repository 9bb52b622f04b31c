#include "cse/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cse {

std::string Cycle::ring() const {
  std::vector<std::string> locs;
  for (const Edge* e : core.edges) locs.push_back(e->src);  // entry, then interior
  // lexicographically minimal rotation, at location granularity
  std::string best;
  for (size_t i = 0; i < locs.size(); ++i) {
    std::string rot;
    for (size_t j = 0; j < locs.size(); ++j) rot += locs[(i + j) % locs.size()] + "|";
    if (i == 0 || rot < best) best = rot;
  }
  return best;
}

namespace {

// Elementary circuits as edge sequences, each discovered once, rooted at
// its lexicographically smallest location. Interior locations are kept
// strictly greater than the root, which makes every simple cycle appear
// exactly once.
struct CircuitFinder {
  const Flowgraph& fg;
  long limit;
  std::vector<std::vector<const Edge*>> circuits;
  std::vector<const Edge*> stack;
  std::set<std::string> on_stack;
  std::string root;

  void dfs(const std::string& loc) {
    if (static_cast<long>(circuits.size()) > limit) return;
    for (const Edge* e : fg.successors(loc)) {
      if (e->dst == root) {
        std::vector<const Edge*> c = stack;
        c.push_back(e);
        circuits.push_back(std::move(c));
      } else if (e->dst > root && !on_stack.count(e->dst)) {
        stack.push_back(e);
        on_stack.insert(e->dst);
        dfs(e->dst);
        on_stack.erase(e->dst);
        stack.pop_back();
      }
    }
  }

  void run() {
    std::vector<std::string> locs = fg.locations;
    std::sort(locs.begin(), locs.end());
    for (const auto& l : locs) {
      root = l;
      on_stack = {l};
      stack.clear();
      dfs(l);
    }
  }
};

std::vector<int> edge_indices(const Path& p) {
  std::vector<int> out;
  for (const Edge* e : p.edges) out.push_back(e->index);
  return out;
}

}  // namespace

CycleSet enumerate_cycles(const Flowgraph& fg, int cap) {
  CircuitFinder finder{fg, /*limit=*/cap * 4 + 64};
  finder.run();

  std::vector<Cycle> found;
  for (const auto& circuit : finder.circuits) {
    const size_t n = circuit.size();
    // every rotation is a candidate core; the rotation start is the entry
    for (size_t i = 0; i < n; ++i) {
      Path core;
      core.start = circuit[i]->src;
      for (size_t j = 0; j < n; ++j) core.edges.push_back(circuit[(i + j) % n]);
      const Edge* closing = core.edges.back();

      // Definition requires an edge (u, entry) that is not the closing
      // edge of the core; the smallest such edge is kept as the witness.
      const Edge* witness = nullptr;
      for (const Edge& e : fg.edges) {
        if (e.dst != core.start || &e == closing) continue;
        witness = &e;
        break;
      }
      if (!witness) continue;

      Cycle c;
      c.core = core;
      c.entry = core.start;
      c.entry_witness = witness;

      // exits: edges leaving a core location but not on the core,
      // ordered by position along the core, then declaration order
      std::set<const Edge*> core_edges(core.edges.begin(), core.edges.end());
      std::set<std::string> seen_locs;
      for (const Edge* ce : core.edges) {
        const std::string& u = ce->src;
        if (!seen_locs.insert(u).second) continue;
        for (const Edge* out : fg.successors(u))
          if (!core_edges.count(out)) c.exits.push_back(out);
      }
      found.push_back(std::move(c));
    }
  }

  std::sort(found.begin(), found.end(), [](const Cycle& a, const Cycle& b) {
    std::string ra = a.ring(), rb = b.ring();
    if (ra != rb) return ra < rb;
    if (a.entry != b.entry) return a.entry < b.entry;
    return edge_indices(a.core) < edge_indices(b.core);
  });

  CycleSet result;
  if (static_cast<int>(found.size()) > cap) {
    found.resize(cap);
    result.truncated = true;
  }
  result.cycles = std::move(found);
  return result;
}

Path exit_prefix(const Cycle& c, const Edge* exit) {
  bool member = std::find(c.exits.begin(), c.exits.end(), exit) != c.exits.end();
  if (!member)
    throw ExitNotOnCore("edge " + (exit ? exit->src + "->" + exit->dst : "<null>") +
                        " is not an exit of cycle " + c.core_string());
  Path rho;
  rho.start = c.entry;
  for (const Edge* e : c.core.edges) {
    if (e->src == exit->src) break;
    rho.edges.push_back(e);
  }
  rho.edges.push_back(exit);
  return rho;
}

}  // namespace cse
