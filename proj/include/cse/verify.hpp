#pragma once

#include "cse/compact.hpp"
#include "cse/equiv.hpp"

namespace cse {

struct LeafVerdict {
  enum class Kind { Matched, Unmatched, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int leaf = -1;         // node id in the checked tree (or row index for template checks)
  int counterpart = -1;  // node id in the other tree, when matched
  Valuation valuation;
  std::string note;  // inconclusive reason or extra detail
};

const char* to_string(LeafVerdict::Kind k);

struct MatchReport {
  std::vector<LeafVerdict> rows;
  int bound = 0;
  long matched = 0;
  long unmatched = 0;
  long inconclusive = 0;
  long excluded_cut_leaves = 0;
  bool aborted = false;  // a tree contained failed leaves
  std::string diagnostic;

  bool all_matched() const { return !aborted && unmatched == 0 && inconclusive == 0; }
  void tally();
};

/// Theorem-2 style check: every genuine leaf of the classic tree has an
/// equivalent instantiation of some compact leaf, searching valuations
/// componentwise up to the bound (lexicographic, smallest first).
MatchReport check_soundness(const ExecTree& classic, const ExecTree& compact, int bound,
                            const SolverConfig& cfg);

/// Theorem-3 style check: every satisfiable instantiation (up to the
/// bound) of every genuine compact leaf has an equivalent classic leaf.
/// Unsatisfiable instantiations are skipped.
MatchReport check_completeness(const ExecTree& compact, const ExecTree& classic,
                               int bound, const SolverConfig& cfg);

/// Theorem-1 style check at desk scale, one row per (exit, nu):
/// concrete execution of core^nu + exit prefix from the entry frame must be
/// equivalent to the composed instantiated template exit, and the two
/// feasibility verdicts must agree.
MatchReport check_template_properties(const Flowgraph& fg, const Cycle& c,
                                      const Template& t, int nu_max,
                                      const SolverConfig& cfg);

}  // namespace cse
