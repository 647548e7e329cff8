#pragma once

#include "lsnet/net.hpp"

namespace lsnet {

struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON schema:
//   { "nodes":   [{"id": "...", "ntype": "e"|"m"}, ...],
//     "links":   [{"id": "...", "kind": "...", "sources": [...], "targets": [...]}, ...],
//     "root":    "...",
//     "freeVars": ["...", ...],
//     "iboxes":  {"bangId": ["linkId", ...], ...} }
//
// Parsing only resolves identifiers and kinds; a structurally broken net
// parses fine and is rejected by validate().
std::string net_to_json(const Net& n, bool pretty = true);
Net net_from_json(const std::string& text);

// Graphviz rendering: links as record nodes fanning out to their ports,
// principal connections bold, boxes as clusters. Border variables are drawn
// outside their boxes.
std::string net_to_dot(const Net& n);

uint64_t net_hash(const Net& n);

}  // namespace lsnet
