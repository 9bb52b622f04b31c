#pragma once

#include <string>
#include <vector>

#include "cse/flowgraph.hpp"

namespace cse {

struct ExitNotOnCore : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A cycle per the definition used throughout: a simple cyclic core
/// starting and ending at the entry location, an entry-witness edge into
/// the entry that is not the core's closing edge, and the set of all
/// flowgraph edges that leave a core location without lying on the core.
struct Cycle {
  Path core;                          // e ... e, interior locations distinct
  std::string entry;                  // first (= last) location of the core
  const Edge* entry_witness = nullptr;
  std::vector<const Edge*> exits;     // ordered along the core, then by declaration

  std::string core_string() const { return core.loc_string(); }
  /// Interior location word written from the entry, e.g. "bcd" for core
  /// b c d b; rotation-invariant normalization used for deterministic order.
  std::string ring() const;
};

struct CycleSet {
  std::vector<Cycle> cycles;
  bool truncated = false;
};

/// All cycles of fg, deterministically ordered (by rotation-normalized
/// ring, then entry, then edge indices); truncated at cap.
CycleSet enumerate_cycles(const Flowgraph& fg, int cap = 1000);

/// The prefix of the core from the entry to the exit edge's source,
/// extended by the exit edge itself.
Path exit_prefix(const Cycle& c, const Edge* exit);

}  // namespace cse
