#pragma once

#include <json.hpp>

#include "cse/compact.hpp"
#include "cse/verify.hpp"

namespace cse {

using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

Json tree_to_json(const ExecTree& tree, const Flowgraph& fg);
Json cycles_to_json(const CycleSet& cs, const Flowgraph& fg);
Json templates_to_json(const TemplatePool& pool, const Flowgraph& fg);
Json report_to_json(const MatchReport& rep, const std::string& kind);

/// Graphviz rendering; template nodes are boxes, failed leaves dashed.
std::string tree_to_dot(const ExecTree& tree, const Flowgraph& fg, bool with_pc);

void write_file(const std::string& path, const std::string& content);

}  // namespace cse
