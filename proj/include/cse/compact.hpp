#pragma once

#include <random>

#include "cse/templates.hpp"

namespace cse {

struct SelectionStrategy {
  enum class Kind { Never, First, Random };
  Kind kind = Kind::First;
  uint64_t seed = 0;

  static SelectionStrategy never() { return {Kind::Never, 0}; }
  static SelectionStrategy first() { return {Kind::First, 0}; }
  static SelectionStrategy random(uint64_t seed) { return {Kind::Random, seed}; }
};

/// Picks at most one applicable template whose entry matches the location.
/// First takes the lowest pool index; Random draws uniformly among the
/// matches (reproducible from the rng state); Never declines always.
/// Returns the pool index, or -1.
int choose_template(const std::string& loc, const std::vector<Template>& pool,
                    const SelectionStrategy& strat, std::mt19937_64& rng);

/// Algorithm with the template lines enabled: when a template is selected
/// at the dequeued state, its parameter is renamed fresh and one composed
/// successor per template exit replaces the classic step.
ExecTree run_compact(const Flowgraph& fg, const std::vector<Template>& pool,
                     const SelectionStrategy& strat, const SolverConfig& cfg,
                     const Limits& lim, ParamGen& pg);

}  // namespace cse
