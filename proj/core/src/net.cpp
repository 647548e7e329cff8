#include "lsnet/net.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lsnet {

std::string_view kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::Bang: return "bang";
    case LinkKind::Der: return "der";
    case LinkKind::Weak: return "weak";
    case LinkKind::Par: return "par";
    case LinkKind::Tensor: return "tensor";
    case LinkKind::Hole: return "hole";
    case LinkKind::GenAx: return "genax";
  }
  return "?";
}

std::optional<LinkKind> kind_from_name(std::string_view s) {
  if (s == "bang") return LinkKind::Bang;
  if (s == "der") return LinkKind::Der;
  if (s == "weak") return LinkKind::Weak;
  if (s == "par") return LinkKind::Par;
  if (s == "tensor") return LinkKind::Tensor;
  if (s == "hole") return LinkKind::Hole;
  if (s == "genax") return LinkKind::GenAx;
  return std::nullopt;
}

NodeIdx Net::node_index(std::string_view id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<NodeIdx>(i);
  return -1;
}

LinkIdx Net::link_index(std::string_view id) const {
  for (size_t i = 0; i < links.size(); ++i)
    if (links[i].id == id) return static_cast<LinkIdx>(i);
  return -1;
}

void Net::finalize() {
  incoming.assign(nodes.size(), {});
  outgoing.assign(nodes.size(), {});
  for (size_t l = 0; l < links.size(); ++l) {
    for (NodeIdx s : links[l].sources) outgoing[s].push_back(static_cast<LinkIdx>(l));
    for (NodeIdx t : links[l].targets) incoming[t].push_back(static_cast<LinkIdx>(l));
  }
  boxes.resize(links.size());
  for (auto& b : boxes) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  std::sort(free_vars.begin(), free_vars.end(),
            [&](NodeIdx a, NodeIdx b) { return nodes[a].id < nodes[b].id; });
}

void Net::recompute_interface() {
  std::vector<char> has_out(nodes.size(), 0), has_in(nodes.size(), 0);
  for (const auto& l : links) {
    for (NodeIdx s : l.sources) has_out[s] = 1;
    for (NodeIdx t : l.targets) has_in[t] = 1;
  }
  free_vars.clear();
  std::vector<NodeIdx> terminal_m;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (has_out[i]) continue;
    if (nodes[i].type == NodeType::E)
      free_vars.push_back(static_cast<NodeIdx>(i));
    else
      terminal_m.push_back(static_cast<NodeIdx>(i));
  }
  root = terminal_m.size() == 1 ? terminal_m.front() : -1;
}

namespace {

struct Signature {
  int nsrc, ntgt;               // -1 = variadic
  NodeType src[2], tgt[2];      // leading fixed ports
};

Signature signature_of(LinkKind k) {
  switch (k) {
    case LinkKind::Der: return {0, 2, {}, {NodeType::M, NodeType::E}};
    case LinkKind::Weak: return {0, 1, {}, {NodeType::E}};
    case LinkKind::Par: return {2, 1, {NodeType::E, NodeType::M}, {NodeType::M}};
    case LinkKind::Tensor: return {1, 2, {NodeType::M}, {NodeType::M, NodeType::E}};
    case LinkKind::Bang: return {2, 0, {NodeType::M, NodeType::E}, {}};
    case LinkKind::Hole: return {0, -1, {}, {NodeType::M}};
    case LinkKind::GenAx: return {1, -1, {NodeType::E}, {}};
  }
  return {0, 0, {}, {}};
}

bool contractible(LinkKind k) {
  return k == LinkKind::Der || k == LinkKind::Hole || k == LinkKind::GenAx;
}

}  // namespace

std::vector<NodeIdx> box_nodes(const Net& n, LinkIdx bang) {
  std::vector<NodeIdx> s;
  for (LinkIdx l : n.boxes[bang]) {
    s.insert(s.end(), n.links[l].sources.begin(), n.links[l].sources.end());
    s.insert(s.end(), n.links[l].targets.begin(), n.links[l].targets.end());
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<NodeIdx> box_free_vars(const Net& n, LinkIdx bang) {
  const auto& members = n.boxes[bang];  // sorted
  std::vector<NodeIdx> out;
  for (NodeIdx x : box_nodes(n, bang)) {
    if (n.nodes[x].type != NodeType::E) continue;
    bool sourced_inside = false;
    for (LinkIdx o : n.outgoing[x])
      if (std::binary_search(members.begin(), members.end(), o)) sourced_inside = true;
    if (!sourced_inside) out.push_back(x);
  }
  return out;
}

std::vector<int> link_levels(const Net& n) {
  std::vector<int> lev(n.links.size(), 0);
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind != LinkKind::Bang) continue;
    for (LinkIdx m : n.boxes[b]) ++lev[m];
  }
  return lev;
}

int link_level(const Net& n, LinkIdx l) { return link_levels(n)[l]; }

std::vector<Violation> validate(const Net& n) {
  std::vector<Violation> out;
  auto bad = [&](std::string cond, std::string detail) {
    out.push_back({std::move(cond), std::move(detail)});
  };

  // identifiers
  {
    std::set<std::string> ids;
    for (const auto& nd : n.nodes)
      if (!ids.insert(nd.id).second) bad("identifier", "duplicate node id '" + nd.id + "'");
    ids.clear();
    for (const auto& lk : n.links)
      if (!ids.insert(lk.id).second) bad("identifier", "duplicate link id '" + lk.id + "'");
  }

  auto node_ok = [&](NodeIdx i) { return i >= 0 && i < static_cast<NodeIdx>(n.nodes.size()); };

  // link signatures
  for (const auto& lk : n.links) {
    Signature sig = signature_of(lk.kind);
    bool arity_ok =
        (sig.nsrc < 0 || static_cast<int>(lk.sources.size()) == sig.nsrc) &&
        (sig.ntgt < 0 || static_cast<int>(lk.targets.size()) == sig.ntgt);
    if (lk.kind == LinkKind::Hole && lk.targets.empty()) arity_ok = false;
    if (!arity_ok) {
      bad("link-signature", "link '" + lk.id + "' has wrong arity");
      continue;
    }
    bool types_ok = true;
    for (size_t i = 0; i < lk.sources.size(); ++i) {
      if (!node_ok(lk.sources[i])) { types_ok = false; break; }
      NodeType want = (sig.nsrc >= 0 && i < 2) ? sig.src[i] : NodeType::E;
      if (n.nodes[lk.sources[i]].type != want) types_ok = false;
    }
    for (size_t i = 0; i < lk.targets.size(); ++i) {
      if (!node_ok(lk.targets[i])) { types_ok = false; break; }
      NodeType want;
      if (lk.kind == LinkKind::Hole)
        want = i == 0 ? NodeType::M : NodeType::E;
      else if (lk.kind == LinkKind::GenAx)
        want = NodeType::E;
      else
        want = sig.tgt[i];
      if (n.nodes[lk.targets[i]].type != want) types_ok = false;
    }
    if (!types_ok) bad("link-signature", "link '" + lk.id + "' has wrong port types");
  }
  if (!out.empty()) return out;  // degree/box checks assume sane links

  // node degrees
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const auto& in = n.incoming[i];
    const auto& outl = n.outgoing[i];
    const std::string& id = n.nodes[i].id;
    if (in.empty()) bad("node-incoming", "node '" + id + "' has no incoming link");
    if (outl.size() > 1) bad("node-outgoing", "node '" + id + "' has several outgoing links");
    if (n.nodes[i].type == NodeType::M) {
      if (in.size() != 1) bad("multiplicative-node", "m-node '" + id + "' needs exactly one incoming link");
    } else if (in.size() > 1) {
      for (LinkIdx l : in)
        if (!contractible(n.links[l].kind)) {
          if (n.links[l].kind == LinkKind::Weak)
            bad("contraction", "weakenings cannot be contracted: node '" + id + "'");
          else
            bad("contraction", "node '" + id + "' contracts a " +
                                   std::string(kind_name(n.links[l].kind)) + "-link");
        }
    }
  }

  // root
  if (n.root < 0 || n.root >= static_cast<NodeIdx>(n.nodes.size()))
    bad("root", "missing root");
  else if (n.nodes[n.root].type != NodeType::M)
    bad("root", "root is not an m-node");
  else if (!n.outgoing[n.root].empty())
    bad("root", "root is not terminal");

  // free variables: declared = computed terminal e-nodes, none fed by a tensor
  {
    std::set<NodeIdx> declared(n.free_vars.begin(), n.free_vars.end());
    for (size_t i = 0; i < n.nodes.size(); ++i) {
      bool terminal_e = n.nodes[i].type == NodeType::E && n.outgoing[i].empty();
      bool is_declared = declared.count(static_cast<NodeIdx>(i)) != 0;
      if (terminal_e != is_declared)
        bad("free-variables", "node '" + n.nodes[i].id + "' " +
                                  (terminal_e ? "is a terminal e-node but not declared free"
                                              : "is declared free but not a terminal e-node"));
      if (terminal_e)
        for (LinkIdx l : n.incoming[i])
          if (n.links[l].kind == LinkKind::Tensor)
            bad("free-variables", "tensor argument node '" + n.nodes[i].id +
                                      "' cannot be a free variable");
    }
  }

  // every tensor argument feeds a bang
  for (const auto& lk : n.links) {
    if (lk.kind != LinkKind::Tensor) continue;
    NodeIdx arg = lk.targets[1];
    bool ok = n.outgoing[arg].size() == 1 &&
              n.links[n.outgoing[arg][0]].kind == LinkKind::Bang;
    if (!ok) bad("tensor-bang", "tensor '" + lk.id + "' argument node is not paired to a bang");
  }

  // per-box data, computed once
  std::vector<LinkIdx> bangs;
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind == LinkKind::Bang)
      bangs.push_back(static_cast<LinkIdx>(b));
    else if (!n.boxes[b].empty())
      bad("box", "non-bang link '" + n.links[b].id + "' owns a box");
  }
  std::map<LinkIdx, std::vector<NodeIdx>> bnodes, bfv;
  for (LinkIdx b : bangs) {
    bnodes[b] = box_nodes(n, b);
    bfv[b] = box_free_vars(n, b);
  }

  // box sanity
  for (LinkIdx b : bangs) {
    const auto& lk = n.links[b];
    const auto& members = n.boxes[b];  // sorted
    if (std::binary_search(members.begin(), members.end(), b)) {
      bad("box", "bang '" + lk.id + "' contains itself");
      continue;
    }
    bool members_ok = true;
    for (LinkIdx m : members)
      if (m < 0 || m >= static_cast<LinkIdx>(n.links.size())) members_ok = false;
    if (!members_ok) {
      bad("box", "bang '" + lk.id + "' has an invalid member");
      continue;
    }
    if (members.empty()) {
      bad("box", "bang '" + lk.id + "' has an empty box");
      continue;
    }
    auto in_box = [&](LinkIdx l) {
      return std::binary_search(members.begin(), members.end(), l);
    };
    NodeIdx broot = lk.sources[0];
    bool root_targeted = false, root_sourced = false;
    for (LinkIdx m : members) {
      for (NodeIdx t : n.links[m].targets)
        if (t == broot) root_targeted = true;
      for (NodeIdx s : n.links[m].sources)
        if (s == broot) root_sourced = true;
    }
    if (!root_targeted || root_sourced)
      bad("box-border", "box of '" + lk.id + "' does not have the bang's m-source as root");
    // every box node has an incoming link inside the box
    for (NodeIdx x : bnodes[b]) {
      bool in_inside = false;
      for (LinkIdx l : n.incoming[x])
        if (in_box(l)) in_inside = true;
      if (!in_inside)
        bad("box-border", "node '" + n.nodes[x].id + "' has no incoming link inside the box of '" +
                              lk.id + "'");
    }
    // border: box free variables are never weakened
    for (NodeIdx x : bfv[b])
      for (LinkIdx l : n.incoming[x])
        if (n.links[l].kind == LinkKind::Weak)
          bad("box-border", "box free variable '" + n.nodes[x].id + "' of '" + lk.id +
                                "' is the target of a weakening");
    // internal closure
    for (NodeIdx x : bnodes[b]) {
      if (n.nodes[x].type != NodeType::E) continue;
      bool internal = false;
      for (LinkIdx o : n.outgoing[x])
        if (in_box(o)) internal = true;
      if (!internal) continue;
      for (LinkIdx l : n.incoming[x])
        if (!in_box(l))
          bad("internal-closure", "link '" + n.links[l].id + "' targets node '" + n.nodes[x].id +
                                      "' internal to the box of '" + lk.id + "'");
    }
    for (LinkIdx m : members)
      if (n.links[m].kind == LinkKind::Bang)
        for (LinkIdx inner : n.boxes[m])
          if (!in_box(inner))
            bad("internal-closure", "box of '" + n.links[m].id + "' leaks out of the box of '" +
                                        lk.id + "'");
  }

  // nesting
  for (size_t i = 0; i < bangs.size(); ++i) {
    for (size_t j = i + 1; j < bangs.size(); ++j) {
      const auto& s1 = n.boxes[bangs[i]];
      const auto& s2 = n.boxes[bangs[j]];
      if (std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()) ||
          std::includes(s1.begin(), s1.end(), s2.begin(), s2.end()))
        continue;
      const auto& n1 = bnodes[bangs[i]];
      const auto& n2 = bnodes[bangs[j]];
      std::vector<NodeIdx> shared;
      std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(),
                            std::back_inserter(shared));
      const auto& f1 = bfv[bangs[i]];
      const auto& f2 = bfv[bangs[j]];
      for (NodeIdx x : shared) {
        bool ok = std::find(f1.begin(), f1.end(), x) != f1.end() &&
                  std::find(f2.begin(), f2.end(), x) != f2.end();
        if (!ok)
          bad("nesting", "boxes of '" + n.links[bangs[i]].id + "' and '" + n.links[bangs[j]].id +
                             "' overlap on non-border node '" + n.nodes[x].id + "'");
      }
    }
  }

  // acyclic box containment
  {
    std::map<LinkIdx, std::vector<LinkIdx>> contains;
    for (size_t b = 0; b < n.links.size(); ++b) {
      if (n.links[b].kind != LinkKind::Bang) continue;
      for (LinkIdx m : n.boxes[b])
        if (n.links[m].kind == LinkKind::Bang)
          contains[static_cast<LinkIdx>(b)].push_back(m);
    }
    std::map<LinkIdx, int> state;  // 0 new, 1 open, 2 done
    std::function<bool(LinkIdx)> dfs = [&](LinkIdx v) {
      state[v] = 1;
      for (LinkIdx w : contains[v]) {
        if (state[w] == 1) return false;
        if (state[w] == 0 && !dfs(w)) return false;
      }
      state[v] = 2;
      return true;
    };
    for (auto& [b, _] : contains)
      if (state[b] == 0 && !dfs(b)) {
        bad("box-nesting-cycle", "box containment is cyclic at '" + n.links[b].id + "'");
        break;
      }
  }

  // weakenings sit exactly in the boxes that contain their node's binder
  for (size_t w = 0; w < n.links.size(); ++w) {
    if (n.links[w].kind != LinkKind::Weak) continue;
    NodeIdx x = n.links[w].targets[0];
    LinkIdx xout = n.outgoing[x].empty() ? -1 : n.outgoing[x][0];
    for (size_t b = 0; b < n.links.size(); ++b) {
      if (n.links[b].kind != LinkKind::Bang) continue;
      bool w_in = std::binary_search(n.boxes[b].begin(), n.boxes[b].end(),
                                     static_cast<LinkIdx>(w));
      bool binder_in = xout >= 0 && std::binary_search(n.boxes[b].begin(), n.boxes[b].end(), xout);
      if (w_in != binder_in)
        bad("weakening-placement", "weakening '" + n.links[w].id + "' " +
                                       (w_in ? "should be outside" : "should be inside") +
                                       " the box of '" + n.links[b].id + "'");
    }
  }

  return out;
}

bool is_valid(const Net& n) { return validate(n).empty(); }

NetKind net_kind(const Net& n) {
  int holes = 0, genax = 0, bangs = 0;
  for (const auto& l : n.links) {
    if (l.kind == LinkKind::Hole) ++holes;
    if (l.kind == LinkKind::GenAx) ++genax;
    if (l.kind == LinkKind::Bang) ++bangs;
  }
  if (holes == 0 && genax == 0) return NetKind::TermNet;
  if (holes == 1 && genax == 0) return NetKind::ContextNet;
  if (bangs == 0 && genax > 0) return NetKind::CorrectionNet;
  return NetKind::General;
}

BoxClass classify_box(const Net& n, LinkIdx bang) {
  BoxClass c;
  NodeIdx x = n.links[bang].sources[1];
  for (LinkIdx l : n.incoming[x])
    if (n.links[l].kind == LinkKind::Tensor) c.argument = true;
  if (link_level(n, bang) == 0) {
    std::set<NodeIdx> fv(n.free_vars.begin(), n.free_vars.end());
    c.free_box = true;
    for (NodeIdx v : box_free_vars(n, bang))
      if (!fv.count(v)) c.free_box = false;
  }
  return c;
}

Net subnet_view(const Net& n, const std::vector<LinkIdx>& links, const std::string& root_id) {
  Net out;
  std::set<LinkIdx> keep(links.begin(), links.end());
  std::vector<NodeIdx> nmap(n.nodes.size(), -1);
  auto touch = [&](NodeIdx i) {
    if (nmap[i] < 0) {
      nmap[i] = static_cast<NodeIdx>(out.nodes.size());
      out.nodes.push_back(n.nodes[i]);
    }
    return nmap[i];
  };
  std::vector<LinkIdx> lmap(n.links.size(), -1);
  for (LinkIdx l : links) {
    NetLink nl = n.links[l];
    for (auto& s : nl.sources) s = touch(s);
    for (auto& t : nl.targets) t = touch(t);
    lmap[l] = static_cast<LinkIdx>(out.links.size());
    out.links.push_back(std::move(nl));
  }
  out.boxes.assign(out.links.size(), {});
  for (LinkIdx l : links) {
    if (n.links[l].kind != LinkKind::Bang) continue;
    for (LinkIdx m : n.boxes[l])
      if (keep.count(m)) out.boxes[lmap[l]].push_back(lmap[m]);
  }
  out.recompute_interface();
  if (!root_id.empty()) out.root = out.node_index(root_id);
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

struct IsoCtx {
  const Net& a;
  const Net& b;
  std::vector<int> lev_a, lev_b;
  std::vector<std::string> sig_a, sig_b;
};

std::string link_sig(const Net& n, const std::vector<int>& lev, LinkIdx l) {
  std::string s;
  s += static_cast<char>('A' + static_cast<int>(n.links[l].kind));
  s += std::to_string(lev[l]);
  auto port = [&](NodeIdx x) {
    s += n.nodes[x].type == NodeType::E ? 'e' : 'm';
    if (n.outgoing[x].empty() && n.nodes[x].type == NodeType::E) {
      s += '=';
      s += n.nodes[x].id;  // free variables are fixed pointwise
    }
    s += ';';
  };
  s += '|';
  for (NodeIdx x : n.links[l].sources) port(x);
  s += '|';
  for (NodeIdx x : n.links[l].targets) port(x);
  return s;
}

struct IsoState {
  std::vector<int> an, bn, al, bl;
  std::vector<std::pair<int, int>> node_q, link_q;
};

bool bind_node(const IsoCtx& c, IsoState& s, NodeIdx x, NodeIdx y) {
  if (c.a.nodes[x].type != c.b.nodes[y].type) return false;
  if (s.an[x] == y && s.bn[y] == x) return true;
  if (s.an[x] != -1 || s.bn[y] != -1) return false;
  s.an[x] = y;
  s.bn[y] = x;
  s.node_q.push_back({x, y});
  return true;
}

bool bind_link(const IsoCtx& c, IsoState& s, LinkIdx l, LinkIdx m) {
  if (s.al[l] == m && s.bl[m] == l) return true;
  if (s.al[l] != -1 || s.bl[m] != -1) return false;
  if (c.sig_a[l] != c.sig_b[m]) return false;
  s.al[l] = m;
  s.bl[m] = l;
  s.link_q.push_back({l, m});
  return true;
}

bool propagate(const IsoCtx& c, IsoState& s) {
  while (!s.node_q.empty() || !s.link_q.empty()) {
    if (!s.link_q.empty()) {
      auto [l, m] = s.link_q.back();
      s.link_q.pop_back();
      const auto& la = c.a.links[l];
      const auto& lb = c.b.links[m];
      if (la.sources.size() != lb.sources.size() || la.targets.size() != lb.targets.size())
        return false;
      bool positional = la.kind != LinkKind::Hole && la.kind != LinkKind::GenAx;
      size_t nsrc = positional ? la.sources.size() : std::min<size_t>(1, la.sources.size());
      size_t ntgt = positional ? la.targets.size() : std::min<size_t>(1, la.targets.size());
      for (size_t i = 0; i < nsrc; ++i)
        if (!bind_node(c, s, la.sources[i], lb.sources[i])) return false;
      for (size_t i = 0; i < ntgt; ++i)
        if (!bind_node(c, s, la.targets[i], lb.targets[i])) return false;
      continue;
    }
    auto [x, y] = s.node_q.back();
    s.node_q.pop_back();
    if (c.a.outgoing[x].size() != c.b.outgoing[y].size()) return false;
    if (c.a.incoming[x].size() != c.b.incoming[y].size()) return false;
    if (c.a.outgoing[x].size() == 1)
      if (!bind_link(c, s, c.a.outgoing[x][0], c.b.outgoing[y][0])) return false;
    if (c.a.incoming[x].size() == 1)
      if (!bind_link(c, s, c.a.incoming[x][0], c.b.incoming[y][0])) return false;
    // contracted incoming links are matched by the search
  }
  return true;
}

bool endpoints_compatible(const IsoCtx& c, const IsoState& s, LinkIdx l, LinkIdx m) {
  const auto& la = c.a.links[l];
  const auto& lb = c.b.links[m];
  if (la.sources.size() != lb.sources.size() || la.targets.size() != lb.targets.size())
    return false;
  bool positional = la.kind != LinkKind::Hole && la.kind != LinkKind::GenAx;
  auto check = [&](NodeIdx x, NodeIdx y) {
    if (s.an[x] != -1 && s.an[x] != y) return false;
    if (s.bn[y] != -1 && s.bn[y] != x) return false;
    return true;
  };
  size_t nsrc = positional ? la.sources.size() : std::min<size_t>(1, la.sources.size());
  size_t ntgt = positional ? la.targets.size() : std::min<size_t>(1, la.targets.size());
  for (size_t i = 0; i < nsrc; ++i)
    if (!check(la.sources[i], lb.sources[i])) return false;
  for (size_t i = 0; i < ntgt; ++i)
    if (!check(la.targets[i], lb.targets[i])) return false;
  return true;
}

bool final_check(const IsoCtx& c, const IsoState& s) {
  for (size_t x = 0; x < c.a.nodes.size(); ++x)
    if (s.an[x] == -1) return false;
  for (size_t l = 0; l < c.a.links.size(); ++l)
    if (s.al[l] == -1) return false;
  if (c.a.root >= 0 && s.an[c.a.root] != c.b.root) return false;
  // free variables fixed by id
  for (NodeIdx v : c.a.free_vars) {
    NodeIdx w = s.an[v];
    if (c.b.nodes[w].id != c.a.nodes[v].id) return false;
    if (!c.b.outgoing[w].empty()) return false;
  }
  for (size_t l = 0; l < c.a.links.size(); ++l) {
    const auto& la = c.a.links[l];
    const auto& lb = c.b.links[s.al[l]];
    if (la.kind != lb.kind) return false;
    bool positional = la.kind != LinkKind::Hole && la.kind != LinkKind::GenAx;
    if (positional) {
      for (size_t i = 0; i < la.sources.size(); ++i)
        if (s.an[la.sources[i]] != lb.sources[i]) return false;
      for (size_t i = 0; i < la.targets.size(); ++i)
        if (s.an[la.targets[i]] != lb.targets[i]) return false;
    } else {
      if (!la.sources.empty() && s.an[la.sources[0]] != lb.sources[0]) return false;
      size_t start = la.kind == LinkKind::Hole ? 1 : 0;
      if (la.kind == LinkKind::Hole && s.an[la.targets[0]] != lb.targets[0]) return false;
      std::set<NodeIdx> img, want;
      for (size_t i = start; i < la.targets.size(); ++i) img.insert(s.an[la.targets[i]]);
      for (size_t i = start; i < lb.targets.size(); ++i) want.insert(lb.targets[i]);
      if (img != want) return false;
    }
    // box map
    std::set<LinkIdx> img, want;
    for (LinkIdx mm : c.a.boxes[l]) img.insert(s.al[mm]);
    for (LinkIdx mm : c.b.boxes[s.al[l]]) want.insert(mm);
    if (img != want) return false;
  }
  return true;
}

bool search(const IsoCtx& c, IsoState s) {
  if (!propagate(c, s)) return false;
  LinkIdx next = -1;
  for (size_t l = 0; l < c.a.links.size(); ++l)
    if (s.al[l] == -1) {
      next = static_cast<LinkIdx>(l);
      break;
    }
  if (next == -1) return final_check(c, s);
  for (size_t m = 0; m < c.b.links.size(); ++m) {
    if (s.bl[m] != -1) continue;
    if (c.sig_a[next] != c.sig_b[m]) continue;
    if (!endpoints_compatible(c, s, next, static_cast<LinkIdx>(m))) continue;
    IsoState copy = s;
    if (!bind_link(c, copy, next, static_cast<LinkIdx>(m))) continue;
    if (search(c, std::move(copy))) return true;
  }
  return false;
}

// search variant that reports the witness
bool search_witness(const IsoCtx& c, IsoState s, IsoState& found) {
  if (!propagate(c, s)) return false;
  LinkIdx next = -1;
  for (size_t l = 0; l < c.a.links.size(); ++l)
    if (s.al[l] == -1) {
      next = static_cast<LinkIdx>(l);
      break;
    }
  if (next == -1) {
    if (final_check(c, s)) {
      found = s;
      return true;
    }
    return false;
  }
  for (size_t m = 0; m < c.b.links.size(); ++m) {
    if (s.bl[m] != -1) continue;
    if (c.sig_a[next] != c.sig_b[m]) continue;
    if (!endpoints_compatible(c, s, next, static_cast<LinkIdx>(m))) continue;
    IsoState copy = s;
    if (!bind_link(c, copy, next, static_cast<LinkIdx>(m))) continue;
    if (search_witness(c, std::move(copy), found)) return true;
  }
  return false;
}

}  // namespace

std::optional<NetIso> net_iso(const Net& a, const Net& b) {
  if (a.nodes.size() != b.nodes.size() || a.links.size() != b.links.size()) return std::nullopt;
  if ((a.root >= 0) != (b.root >= 0)) return std::nullopt;
  IsoCtx c{a, b, link_levels(a), link_levels(b), {}, {}};
  c.sig_a.resize(a.links.size());
  c.sig_b.resize(b.links.size());
  for (size_t l = 0; l < a.links.size(); ++l) c.sig_a[l] = link_sig(a, c.lev_a, l);
  for (size_t l = 0; l < b.links.size(); ++l) c.sig_b[l] = link_sig(b, c.lev_b, l);
  {
    auto sa = c.sig_a;
    auto sb = c.sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // free variable ids must agree
  {
    std::vector<std::string> fa, fb;
    for (NodeIdx v : a.free_vars) fa.push_back(a.nodes[v].id);
    for (NodeIdx v : b.free_vars) fb.push_back(b.nodes[v].id);
    if (fa != fb) return std::nullopt;
  }
  IsoState s;
  s.an.assign(a.nodes.size(), -1);
  s.bn.assign(b.nodes.size(), -1);
  s.al.assign(a.links.size(), -1);
  s.bl.assign(b.links.size(), -1);
  if (a.root >= 0 && !bind_node(c, s, a.root, b.root)) return std::nullopt;
  for (size_t i = 0; i < a.free_vars.size(); ++i)
    if (!bind_node(c, s, a.free_vars[i], b.free_vars[i])) return std::nullopt;
  IsoState found;
  if (!search_witness(c, std::move(s), found)) return std::nullopt;
  NetIso iso;
  iso.node_map = found.an;
  iso.link_map = found.al;
  return iso;
}

bool net_iso_eq(const Net& a, const Net& b) { return net_iso(a, b).has_value(); }

// ---------------------------------------------------------------------------
// editing

NetEditor::NetEditor(const Net& base) : net_(base), dead_(base.links.size(), false) {
  root_id_ = base.root >= 0 ? base.nodes[base.root].id : "";
  net_.incoming.clear();  // adjacency is stale while editing
  net_.outgoing.clear();
}

NodeIdx NetEditor::add_node(std::string id, NodeType t) {
  net_.nodes.push_back({std::move(id), t});
  return static_cast<NodeIdx>(net_.nodes.size() - 1);
}

LinkIdx NetEditor::add_link(std::string id, LinkKind k, std::vector<NodeIdx> sources,
                            std::vector<NodeIdx> targets) {
  net_.links.push_back({std::move(id), k, std::move(sources), std::move(targets)});
  net_.boxes.emplace_back();
  dead_.push_back(false);
  return static_cast<LinkIdx>(net_.links.size() - 1);
}

void NetEditor::remove_link(LinkIdx l) { dead_[l] = true; }

void NetEditor::replace_node(NodeIdx from, NodeIdx to) {
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l]) continue;
    for (auto& s : net_.links[l].sources)
      if (s == from) s = to;
    for (auto& t : net_.links[l].targets)
      if (t == from) t = to;
  }
}

void NetEditor::box_insert(LinkIdx bang, LinkIdx member) {
  auto& b = net_.boxes[bang];
  if (std::find(b.begin(), b.end(), member) == b.end()) b.push_back(member);
}

void NetEditor::box_erase(LinkIdx bang, LinkIdx member) {
  auto& b = net_.boxes[bang];
  b.erase(std::remove(b.begin(), b.end(), member), b.end());
}

std::string NetEditor::unique_node_id(const std::string& base) const {
  auto taken = [&](const std::string& id) {
    for (const auto& nd : net_.nodes)
      if (nd.id == id) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "~" + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

std::string NetEditor::unique_link_id(const std::string& base) const {
  auto taken = [&](const std::string& id) {
    for (size_t l = 0; l < net_.links.size(); ++l)
      if (!dead_[l] && net_.links[l].id == id) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "~" + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

std::vector<LinkIdx> NetEditor::incoming_of(NodeIdx node) const {
  std::vector<LinkIdx> out;
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l]) continue;
    for (NodeIdx t : net_.links[l].targets)
      if (t == node) out.push_back(static_cast<LinkIdx>(l));
  }
  return out;
}

std::optional<LinkIdx> NetEditor::outgoing_of(NodeIdx node) const {
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l]) continue;
    for (NodeIdx s : net_.links[l].sources)
      if (s == node) return static_cast<LinkIdx>(l);
  }
  return std::nullopt;
}

LinkIdx NetEditor::add_weakening(NodeIdx node, const std::string& id_base) {
  LinkIdx w = add_link(unique_link_id(id_base), LinkKind::Weak, {}, {node});
  auto binder = outgoing_of(node);
  if (binder) {
    for (size_t b = 0; b < net_.links.size(); ++b) {
      if (dead_[b] || net_.links[b].kind != LinkKind::Bang) continue;
      auto& box = net_.boxes[b];
      if (std::find(box.begin(), box.end(), *binder) != box.end()) box_insert(
          static_cast<LinkIdx>(b), w);
    }
  }
  return w;
}

Net NetEditor::finish() {
  Net out;
  std::vector<NodeIdx> nmap(net_.nodes.size(), -1);
  std::vector<LinkIdx> lmap(net_.links.size(), -1);
  std::vector<char> node_used(net_.nodes.size(), 0);
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l]) continue;
    for (NodeIdx s : net_.links[l].sources) node_used[s] = 1;
    for (NodeIdx t : net_.links[l].targets) node_used[t] = 1;
  }
  for (size_t i = 0; i < net_.nodes.size(); ++i) {
    if (!node_used[i]) continue;
    nmap[i] = static_cast<NodeIdx>(out.nodes.size());
    out.nodes.push_back(net_.nodes[i]);
  }
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l]) continue;
    NetLink nl = net_.links[l];
    for (auto& s : nl.sources) s = nmap[s];
    for (auto& t : nl.targets) t = nmap[t];
    lmap[l] = static_cast<LinkIdx>(out.links.size());
    out.links.push_back(std::move(nl));
  }
  out.boxes.assign(out.links.size(), {});
  for (size_t l = 0; l < net_.links.size(); ++l) {
    if (dead_[l] || net_.links[l].kind != LinkKind::Bang) continue;
    for (LinkIdx m : net_.boxes[l])
      if (!dead_[m]) out.boxes[lmap[l]].push_back(lmap[m]);
  }
  out.recompute_interface();
  if (!root_id_.empty()) {
    NodeIdx r = out.node_index(root_id_);
    if (r >= 0) out.root = r;
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// plugging

Net plug_net(const Net& ctx, const Net& filler) {
  LinkIdx hl = -1;
  for (size_t l = 0; l < ctx.links.size(); ++l) {
    if (ctx.links[l].kind != LinkKind::Hole) continue;
    if (hl != -1) throw std::invalid_argument("plug_net: several holes");
    hl = static_cast<LinkIdx>(l);
  }
  if (hl == -1) throw std::invalid_argument("plug_net: no hole link");
  const NetLink hole = ctx.links[hl];
  NodeIdx hm = hole.targets[0];

  std::set<std::string> iface;
  for (size_t k = 1; k < hole.targets.size(); ++k) iface.insert(ctx.nodes[hole.targets[k]].id);
  for (NodeIdx v : filler.free_vars)
    if (!iface.count(filler.nodes[v].id))
      throw InterfaceViolation("plug_net: free variable '" + filler.nodes[v].id +
                               "' is not in the hole interface");

  NetEditor ed(ctx);
  std::vector<LinkIdx> env_boxes;
  for (size_t b = 0; b < ctx.links.size(); ++b) {
    if (ctx.links[b].kind != LinkKind::Bang) continue;
    if (std::binary_search(ctx.boxes[b].begin(), ctx.boxes[b].end(), hl))
      env_boxes.push_back(static_cast<LinkIdx>(b));
  }
  ed.remove_link(hl);

  std::set<NodeIdx> filler_free(filler.free_vars.begin(), filler.free_vars.end());
  std::vector<NodeIdx> nmap(filler.nodes.size(), -1);
  for (size_t i = 0; i < filler.nodes.size(); ++i) {
    if (static_cast<NodeIdx>(i) == filler.root) {
      nmap[i] = hm;
    } else if (filler_free.count(static_cast<NodeIdx>(i))) {
      NodeIdx ex = ed.working().node_index(filler.nodes[i].id);
      nmap[i] = ex;  // interface node, always present in ctx
    } else {
      nmap[i] = ed.add_node(ed.unique_node_id(filler.nodes[i].id), filler.nodes[i].type);
    }
  }
  std::vector<LinkIdx> lmap(filler.links.size(), -1);
  for (size_t l = 0; l < filler.links.size(); ++l) {
    NetLink nl = filler.links[l];
    std::vector<NodeIdx> src, tgt;
    for (NodeIdx s : nl.sources) src.push_back(nmap[s]);
    for (NodeIdx t : nl.targets) tgt.push_back(nmap[t]);
    lmap[l] = ed.add_link(ed.unique_link_id(nl.id), nl.kind, std::move(src), std::move(tgt));
  }
  for (size_t l = 0; l < filler.links.size(); ++l) {
    if (filler.links[l].kind != LinkKind::Bang) continue;
    for (LinkIdx m : filler.boxes[l]) ed.box_insert(lmap[l], lmap[m]);
  }
  for (LinkIdx b : env_boxes) {
    ed.box_erase(b, hl);
    for (size_t l = 0; l < filler.links.size(); ++l) ed.box_insert(b, lmap[l]);
  }

  // weakenings that became contracted disappear
  for (size_t l = 0; l < ed.working().links.size(); ++l) {
    if (!ed.link_alive(static_cast<LinkIdx>(l))) continue;
    if (ed.working().links[l].kind != LinkKind::Weak) continue;
    NodeIdx x = ed.working().links[l].targets[0];
    if (ed.incoming_of(x).size() >= 2) ed.remove_link(static_cast<LinkIdx>(l));
  }
  // interface variables left without a use get a weakening
  for (const std::string& id : iface) {
    NodeIdx x = ed.working().node_index(id);
    if (x >= 0 && ed.incoming_of(x).empty()) ed.add_weakening(x, "w+" + id);
  }
  // re-place every weakening by the standard rule
  {
    auto& w = ed.working();
    for (size_t l = 0; l < w.links.size(); ++l) {
      if (!ed.link_alive(static_cast<LinkIdx>(l)) || w.links[l].kind != LinkKind::Weak) continue;
      NodeIdx x = w.links[l].targets[0];
      auto binder = ed.outgoing_of(x);
      for (size_t b = 0; b < w.links.size(); ++b) {
        if (!ed.link_alive(static_cast<LinkIdx>(b)) || w.links[b].kind != LinkKind::Bang) continue;
        auto& box = ed.box(static_cast<LinkIdx>(b));
        bool should = binder && std::find(box.begin(), box.end(), *binder) != box.end();
        bool has = std::find(box.begin(), box.end(), static_cast<LinkIdx>(l)) != box.end();
        if (should && !has) ed.box_insert(static_cast<LinkIdx>(b), static_cast<LinkIdx>(l));
        if (!should && has) ed.box_erase(static_cast<LinkIdx>(b), static_cast<LinkIdx>(l));
      }
    }
  }
  return ed.finish();
}

std::vector<LinkIdx> free_weakenings(const Net& n) {
  std::vector<LinkIdx> out;
  for (size_t l = 0; l < n.links.size(); ++l) {
    if (n.links[l].kind != LinkKind::Weak) continue;
    if (n.outgoing[n.links[l].targets[0]].empty()) out.push_back(static_cast<LinkIdx>(l));
  }
  return out;
}

std::vector<std::string> free_weakening_names(const Net& n) {
  std::vector<std::string> out;
  for (LinkIdx l : free_weakenings(n)) out.push_back(n.nodes[n.links[l].targets[0]].id);
  std::sort(out.begin(), out.end());
  return out;
}

int net_multiplicity(const Net& n, std::string_view var) {
  NodeIdx x = n.node_index(var);
  if (x < 0) return 0;
  int ders = 0;
  for (LinkIdx l : n.incoming[x])
    if (n.links[l].kind == LinkKind::Der) ++ders;
  return ders;
}

std::string net_fingerprint(const Net& n) {
  auto lev = link_levels(n);
  std::vector<std::string> parts;
  for (size_t l = 0; l < n.links.size(); ++l)
    parts.push_back(std::string(kind_name(n.links[l].kind)) + ":" + std::to_string(lev[l]));
  std::sort(parts.begin(), parts.end());
  std::string s = "L";
  for (auto& p : parts) {
    s += p;
    s += ',';
  }
  s += "|F";
  for (NodeIdx v : n.free_vars) {
    s += n.nodes[v].id;
    s += ':';
    s += std::to_string(n.incoming[v].size());
    char c = 'd';
    for (LinkIdx l : n.incoming[v])
      if (n.links[l].kind == LinkKind::Weak) c = 'w';
    s += c;
    s += ',';
  }
  std::vector<size_t> bsizes;
  for (size_t b = 0; b < n.links.size(); ++b)
    if (n.links[b].kind == LinkKind::Bang) bsizes.push_back(n.boxes[b].size());
  std::sort(bsizes.begin(), bsizes.end());
  s += "|B";
  for (auto z : bsizes) {
    s += std::to_string(z);
    s += ',';
  }
  return s;
}

}  // namespace lsnet
