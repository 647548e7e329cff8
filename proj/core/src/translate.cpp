#include "lsnet/translate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lsnet {

namespace {

struct Builder {
  Net net;
  std::map<std::string, NodeIdx> by_id;
  std::vector<int> in_count;

  NodeIdx node(const std::string& id, NodeType t) {
    auto it = by_id.find(id);
    if (it != by_id.end()) return it->second;
    NodeIdx i = static_cast<NodeIdx>(net.nodes.size());
    net.nodes.push_back({id, t});
    in_count.push_back(0);
    by_id.emplace(id, i);
    return i;
  }

  LinkIdx link(std::string id, LinkKind k, std::vector<NodeIdx> src, std::vector<NodeIdx> tgt) {
    for (NodeIdx t : tgt) ++in_count[t];
    net.links.push_back({std::move(id), k, std::move(src), std::move(tgt)});
    net.boxes.emplace_back();
    return static_cast<LinkIdx>(net.links.size() - 1);
  }

  bool has_incoming(NodeIdx x) const { return in_count[x] > 0; }

  struct Piece {
    NodeIdx root;
    std::vector<LinkIdx> links;
  };

  Piece go(const Expr& e, const std::string& path) {
    switch (e.kind) {
      case ExprKind::Var: {
        NodeIdx m = node("m@" + path, NodeType::M);
        NodeIdx x = node(e.name, NodeType::E);
        LinkIdx d = link("d@" + path, LinkKind::Der, {}, {m, x});
        return {m, {d}};
      }
      case ExprKind::Hole: {
        NodeIdx m = node("m@" + path, NodeType::M);
        std::vector<NodeIdx> tgt{m};
        for (const auto& v : e.hole_interface) tgt.push_back(node(v, NodeType::E));
        LinkIdx h = link("h@" + path, LinkKind::Hole, {}, std::move(tgt));
        return {m, {h}};
      }
      case ExprKind::Abs: {
        Piece body = go(*e.left, path + "0");
        NodeIdx x = node(e.name, NodeType::E);
        if (!has_incoming(x)) body.links.push_back(link("w@" + path, LinkKind::Weak, {}, {x}));
        NodeIdx m = node("m@" + path, NodeType::M);
        body.links.push_back(link("p@" + path, LinkKind::Par, {x, body.root}, {m}));
        return {m, std::move(body.links)};
      }
      case ExprKind::App: {
        Piece fn = go(*e.left, path + "0");
        Piece arg = go(*e.right, path + "1");
        NodeIdx m = node("m@" + path, NodeType::M);
        NodeIdx port = node("a@" + path, NodeType::E);
        LinkIdx t = link("t@" + path, LinkKind::Tensor, {fn.root}, {m, port});
        LinkIdx b = link("b@" + path, LinkKind::Bang, {arg.root, port}, {});
        net.boxes[b] = arg.links;
        std::vector<LinkIdx> all = std::move(fn.links);
        all.insert(all.end(), arg.links.begin(), arg.links.end());
        all.push_back(t);
        all.push_back(b);
        return {m, std::move(all)};
      }
      case ExprKind::Sub: {
        Piece body = go(*e.left, path + "0");
        Piece def = go(*e.right, path + "1");
        NodeIdx x = node(e.name, NodeType::E);
        if (!has_incoming(x)) body.links.push_back(link("w@" + path, LinkKind::Weak, {}, {x}));
        LinkIdx b = link("b@" + path, LinkKind::Bang, {def.root, x}, {});
        net.boxes[b] = def.links;
        std::vector<LinkIdx> all = std::move(body.links);
        all.insert(all.end(), def.links.begin(), def.links.end());
        all.push_back(b);
        return {body.root, std::move(all)};
      }
    }
    throw std::logic_error("translate: bad kind");
  }
};

}  // namespace

Net translate(const ExprPtr& e, const std::vector<std::string>& weakened) {
  if (!is_well_named(e))
    throw WellNamingViolation("translate: expression is not well-named: " + print_expr(e));
  {
    auto bs = bound_names(e);
    std::set<std::string> bound(bs.begin(), bs.end());
    for (const auto& w : weakened)
      if (bound.count(w))
        throw WellNamingViolation("translate: weakened name '" + w + "' is bound in the expression");
  }
  Builder b;
  auto piece = b.go(*e, "");
  std::vector<std::string> extra(weakened.begin(), weakened.end());
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  for (const auto& w : extra) {
    NodeIdx x = b.node(w, NodeType::E);
    if (!b.has_incoming(x)) b.link("w@" + w, LinkKind::Weak, {}, {x});
  }
  b.net.root = piece.root;
  b.net.recompute_interface();
  b.net.root = piece.root;
  b.net.finalize();
  return b.net;
}

}  // namespace lsnet
