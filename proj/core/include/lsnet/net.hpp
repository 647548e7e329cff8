#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsnet/expr.hpp"

namespace lsnet {

// Nets are directed labelled hypergraphs. Nodes carry a type: exponential (e)
// or multiplicative (m). Links are hyperedges labelled bang, der, weak, par,
// tensor, hole, genax; the label fixes arity, port types and the principal
// port:
//
//   der    : sources []      targets [m, e]   principal: e-target
//   weak   : sources []      targets [e]      principal: e-target
//   par    : sources [e, m]  targets [m]      principal: m-target
//   tensor : sources [m]     targets [m, e]   principal: m-source
//   bang   : sources [m, e]  targets []       principal: e-source
//   hole   : sources []      targets [m, e*]  no principal
//   genax  : sources [e]     targets [e*]     no principal
//
// Contraction is a node property: an e-node shared as the target of several
// links (only der, hole and genax may share; a weakening is never shared).
// Cuts are implicit: a node whose incoming and outgoing connections are both
// principal. Every bang link owns a box, a subset of the other links.
//
// Free variables are the terminal e-nodes; their ids double as variable
// names, so translations of well-named terms need no extra labelling.

enum class NodeType : uint8_t { E, M };
enum class LinkKind : uint8_t { Bang, Der, Weak, Par, Tensor, Hole, GenAx };

std::string_view kind_name(LinkKind k);
std::optional<LinkKind> kind_from_name(std::string_view s);

using NodeIdx = int;
using LinkIdx = int;

struct NetNode {
  std::string id;
  NodeType type;
};

struct NetLink {
  std::string id;
  LinkKind kind;
  std::vector<NodeIdx> sources;
  std::vector<NodeIdx> targets;
};

struct Net {
  std::vector<NetNode> nodes;
  std::vector<NetLink> links;
  NodeIdx root = -1;
  std::vector<NodeIdx> free_vars;            // sorted by node id
  std::vector<std::vector<LinkIdx>> boxes;   // per link; non-empty only for bangs

  // derived adjacency, maintained by finalize()
  std::vector<std::vector<LinkIdx>> incoming;
  std::vector<std::vector<LinkIdx>> outgoing;

  NodeIdx node_index(std::string_view id) const;
  LinkIdx link_index(std::string_view id) const;
  const NetNode& node(NodeIdx i) const { return nodes[i]; }
  const NetLink& link(LinkIdx i) const { return links[i]; }
  bool terminal(NodeIdx i) const { return outgoing[i].empty(); }

  void finalize();              // recomputes adjacency, sorts boxes and free_vars
  void recompute_interface();   // sets root (unique terminal m, else -1) and free_vars
};

struct Violation {
  std::string condition;
  std::string detail;
};

// Structural validity: link signatures, root and free-variable terminality,
// node degree bounds, the contraction discipline, tensor/bang pairing, box
// border and nesting, internal closure, acyclic box containment, and the
// convention that weakenings sit outside every box their node is not
// internal to.
std::vector<Violation> validate(const Net& n);
bool is_valid(const Net& n);

// Number of boxes containing each link. Requires acyclic box containment.
std::vector<int> link_levels(const Net& n);
int link_level(const Net& n, LinkIdx l);

enum class NetKind { TermNet, ContextNet, CorrectionNet, General };
NetKind net_kind(const Net& n);

// A bang link is an argument when its e-node feeds a tensor, otherwise a
// substitution. It is free when at level 0 with all box free variables free
// in the whole net.
struct BoxClass {
  bool argument = false;
  bool free_box = false;
};
BoxClass classify_box(const Net& n, LinkIdx bang);

// Box interior as a link set (the bang's own sources belong to the box only
// through its links). Helpers over the stored box map.
std::vector<NodeIdx> box_nodes(const Net& n, LinkIdx bang);
std::vector<NodeIdx> box_free_vars(const Net& n, LinkIdx bang);  // terminal within the box

// Materializes a sub-hypergraph as its own net: nodes are the endpoints of
// the kept links, ids are preserved, boxes are inherited. The root is the
// unique terminal m-node of the piece (or root_id when given).
Net subnet_view(const Net& n, const std::vector<LinkIdx>& links,
                const std::string& root_id = "");

// Isomorphism: a kind- and type-preserving bijection on nodes and links that
// maps root to root, respects port order (hole and genax interfaces as sets),
// preserves the box map, and fixes free variables pointwise by id.
struct NetIso {
  std::vector<NodeIdx> node_map;  // left index -> right index
  std::vector<LinkIdx> link_map;
};
std::optional<NetIso> net_iso(const Net& a, const Net& b);
bool net_iso_eq(const Net& a, const Net& b);

// Plugging a net into the hole of a context net. Replaces the hole link by
// the filler (root onto the hole's m-target, free variables merged by name),
// weakens interface variables that end up with no use, removes weakenings
// that would be contracted, and re-places weakenings outside boxes.
Net plug_net(const Net& ctx, const Net& filler);

std::vector<LinkIdx> free_weakenings(const Net& n);
std::vector<std::string> free_weakening_names(const Net& n);

// 0 when the variable is weakened, otherwise the number of derelictions.
int net_multiplicity(const Net& n, std::string_view var);

// Cheap isomorphism-invariant key used to bucket nets before exact checks.
std::string net_fingerprint(const Net& n);

// Copy-based editing; indices stay stable until finish().
class NetEditor {
public:
  explicit NetEditor(const Net& base);

  NodeIdx add_node(std::string id, NodeType t);
  LinkIdx add_link(std::string id, LinkKind k, std::vector<NodeIdx> sources,
                   std::vector<NodeIdx> targets);
  void remove_link(LinkIdx l);
  bool link_alive(LinkIdx l) const { return !dead_[l]; }

  // Rewires every occurrence of `from` (in live links) to `to`.
  void replace_node(NodeIdx from, NodeIdx to);

  std::vector<LinkIdx>& box(LinkIdx bang) { return net_.boxes[bang]; }
  void box_insert(LinkIdx bang, LinkIdx member);
  void box_erase(LinkIdx bang, LinkIdx member);

  const Net& working() const { return net_; }
  Net& working() { return net_; }

  std::string unique_node_id(const std::string& base) const;
  std::string unique_link_id(const std::string& base) const;

  std::vector<LinkIdx> incoming_of(NodeIdx node) const;  // live links only
  std::optional<LinkIdx> outgoing_of(NodeIdx node) const;

  // Standard placement for a weakening on `node`: member of exactly the boxes
  // that contain the node's outgoing link.
  LinkIdx add_weakening(NodeIdx node, const std::string& id_base);

  // Drops dead links and orphan nodes, remaps indices, recomputes the
  // interface and adjacency.
  Net finish();

private:
  Net net_;
  std::vector<bool> dead_;
  std::string root_id_;
};

}  // namespace lsnet
