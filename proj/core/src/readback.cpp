#include "lsnet/readback.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace lsnet {

Net correction_net(const Net& n) {
  auto lev = link_levels(n);
  std::vector<char> drop(n.links.size(), 0);
  std::vector<LinkIdx> collapsed;
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind != LinkKind::Bang || lev[b] != 0) continue;
    collapsed.push_back(static_cast<LinkIdx>(b));
    drop[b] = 1;
    for (LinkIdx m : n.boxes[b]) drop[m] = 1;
  }

  Net out;
  std::vector<NodeIdx> nmap(n.nodes.size(), -1);
  auto touch = [&](NodeIdx x) {
    if (nmap[x] < 0) {
      nmap[x] = static_cast<NodeIdx>(out.nodes.size());
      out.nodes.push_back(n.nodes[x]);
    }
    return nmap[x];
  };
  for (size_t l = 0; l < n.links.size(); ++l) {
    if (drop[l]) continue;
    NetLink nl = n.links[l];
    for (auto& s : nl.sources) s = touch(s);
    for (auto& t : nl.targets) t = touch(t);
    out.links.push_back(std::move(nl));
  }
  for (LinkIdx b : collapsed) {
    auto fv = box_free_vars(n, b);
    std::sort(fv.begin(), fv.end(),
              [&](NodeIdx a, NodeIdx c) { return n.nodes[a].id < n.nodes[c].id; });
    NetLink g;
    g.id = "g@" + n.links[b].id;
    g.kind = LinkKind::GenAx;
    g.sources.push_back(touch(n.links[b].sources[1]));
    for (NodeIdx v : fv) g.targets.push_back(touch(v));
    out.links.push_back(std::move(g));
  }
  out.boxes.assign(out.links.size(), {});
  out.recompute_interface();
  if (n.root >= 0 && nmap[n.root] >= 0) out.root = nmap[n.root];
  out.finalize();
  return out;
}

namespace {

// Directed cycle search over a net's node graph; returns an alternating
// node/link id path u, l, ..., u when a cycle exists.
std::optional<std::vector<std::string>> find_cycle(const Net& c) {
  // adjacency: node -> (link, node)
  std::vector<std::vector<std::pair<LinkIdx, NodeIdx>>> adj(c.nodes.size());
  for (size_t l = 0; l < c.links.size(); ++l)
    for (NodeIdx s : c.links[l].sources)
      for (NodeIdx t : c.links[l].targets)
        adj[s].push_back({static_cast<LinkIdx>(l), t});
  std::vector<int> state(c.nodes.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<LinkIdx, NodeIdx>> stack;
  std::optional<std::vector<std::string>> found;
  std::function<bool(NodeIdx)> dfs = [&](NodeIdx v) -> bool {
    state[v] = 1;
    for (auto [l, w] : adj[v]) {
      if (state[w] == 1) {
        std::vector<std::string> path{c.nodes[w].id};
        size_t start = 0;
        for (size_t i = 0; i < stack.size(); ++i)
          if (stack[i].second == w) start = i + 1;
        for (size_t i = start; i < stack.size(); ++i) {
          path.push_back(c.links[stack[i].first].id);
          path.push_back(c.nodes[stack[i].second].id);
        }
        path.push_back(c.links[l].id);
        path.push_back(c.nodes[w].id);
        found = path;
        return true;
      }
      if (state[w] == 0) {
        stack.push_back({l, w});
        if (dfs(w)) return true;
        stack.pop_back();
      }
    }
    state[v] = 2;
    return false;
  };
  for (size_t v = 0; v < c.nodes.size(); ++v) {
    if (state[v] == 0) {
      stack.clear();
      if (dfs(static_cast<NodeIdx>(v))) break;
    }
  }
  return found;
}

}  // namespace

namespace {

// Correctness checking over a link subset, collapsing its top-level boxes on
// the fly; no intermediate nets are materialized.
struct CorrectnessChecker {
  const Net& n;

  bool level0_in(const std::vector<LinkIdx>& links, LinkIdx b) const {
    for (LinkIdx other : links) {
      if (other == b || n.links[other].kind != LinkKind::Bang) continue;
      if (std::binary_search(n.boxes[other].begin(), n.boxes[other].end(), b)) return false;
    }
    return true;
  }

  CorrectnessReport check(const std::vector<LinkIdx>& links, NodeIdx root) {
    CorrectnessReport rep;
    std::vector<LinkIdx> top_bangs;

    // links of the collapsed view
    std::vector<LinkIdx> bangs;
    for (LinkIdx l : links)
      if (n.links[l].kind == LinkKind::Bang) bangs.push_back(l);
    std::set<LinkIdx> dropped;
    for (LinkIdx b : bangs)
      if (level0_in(links, b)) {
        top_bangs.push_back(b);
        dropped.insert(b);
        for (LinkIdx m : n.boxes[b]) dropped.insert(m);
      }

    // adjacency of the view, genax edges standing in for collapsed boxes
    std::map<NodeIdx, std::vector<std::pair<std::string, NodeIdx>>> adj;
    std::map<NodeIdx, char> is_source;
    std::set<NodeIdx> view_nodes;
    for (LinkIdx l : links) {
      if (dropped.count(l)) continue;
      for (NodeIdx s : n.links[l].sources) {
        view_nodes.insert(s);
        is_source[s] = 1;
        for (NodeIdx t : n.links[l].targets) adj[s].push_back({n.links[l].id, t});
      }
      for (NodeIdx t : n.links[l].targets) view_nodes.insert(t);
    }
    for (LinkIdx b : top_bangs) {
      NodeIdx src = n.links[b].sources[1];
      view_nodes.insert(src);
      is_source[src] = 1;
      std::string gid = "g@" + n.links[b].id;
      for (NodeIdx v : box_free_vars(n, b)) {
        view_nodes.insert(v);
        adj[src].push_back({gid, v});
      }
    }

    // root clause: the unique terminal m-node of the view
    std::vector<std::string> terminal_m;
    for (NodeIdx x : view_nodes)
      if (n.nodes[x].type == NodeType::M && !is_source.count(x))
        terminal_m.push_back(n.nodes[x].id);
    if (terminal_m.size() != 1 || root < 0 || terminal_m[0] != n.nodes[root].id) {
      rep.ok = false;
      rep.clause = "root";
      rep.detail = "the root does not induce the only terminal m-node of the correction net";
      rep.witness = terminal_m;
      return rep;
    }

    // acyclicity with a witness path
    {
      std::map<NodeIdx, int> state;
      std::vector<std::pair<std::string, NodeIdx>> stack;
      std::optional<std::vector<std::string>> found;
      std::function<bool(NodeIdx)> dfs = [&](NodeIdx v) -> bool {
        state[v] = 1;
        auto it = adj.find(v);
        if (it != adj.end()) {
          for (auto& [lid, w] : it->second) {
            if (state[w] == 1) {
              std::vector<std::string> path{n.nodes[w].id};
              size_t start = 0;
              for (size_t i = 0; i < stack.size(); ++i)
                if (stack[i].second == w) start = i + 1;
              for (size_t i = start; i < stack.size(); ++i) {
                path.push_back(stack[i].first);
                path.push_back(n.nodes[stack[i].second].id);
              }
              path.push_back(lid);
              path.push_back(n.nodes[w].id);
              found = path;
              return true;
            }
            if (state[w] == 0) {
              stack.push_back({lid, w});
              if (dfs(w)) return true;
              stack.pop_back();
            }
          }
        }
        state[v] = 2;
        return false;
      };
      for (NodeIdx v : view_nodes) {
        if (state[v] == 0) {
          stack.clear();
          if (dfs(v)) break;
        }
      }
      if (found) {
        rep.ok = false;
        rep.clause = "acyclic";
        rep.detail = "the correction net has a cycle";
        rep.witness = *found;
        return rep;
      }
    }

    // recursive correctness of the collapsed boxes
    for (LinkIdx b : top_bangs) {
      CorrectnessReport sub = check(n.boxes[b], n.links[b].sources[0]);
      if (!sub.ok) {
        rep.ok = false;
        rep.clause = "box";
        rep.detail = "box of '" + n.links[b].id + "' is not correct (" + sub.clause + ")";
        rep.witness = sub.witness;
        return rep;
      }
    }
    return rep;
  }
};

}  // namespace

CorrectnessReport check_correctness(const Net& n) {
  CorrectnessReport rep;
  if (n.root < 0) {
    rep.ok = false;
    rep.clause = "root";
    rep.detail = "net has no root";
    return rep;
  }
  std::vector<LinkIdx> all(n.links.size());
  std::iota(all.begin(), all.end(), 0);
  CorrectnessChecker checker{n};
  return checker.check(all, n.root);
}

bool is_correct(const Net& n) { return check_correctness(n).ok; }

std::vector<std::string> linear_skeleton(const Net& n) {
  Net c = correction_net(n);
  std::vector<NodeIdx> mnodes;
  for (size_t i = 0; i < c.nodes.size(); ++i)
    if (c.nodes[i].type == NodeType::M) mnodes.push_back(static_cast<NodeIdx>(i));
  std::map<NodeIdx, NodeIdx> next;
  std::map<NodeIdx, int> indeg;
  for (const auto& l : c.links) {
    NodeIdx from = -1, to = -1;
    if (l.kind == LinkKind::Par) {
      from = l.sources[1];
      to = l.targets[0];
    } else if (l.kind == LinkKind::Tensor) {
      from = l.sources[0];
      to = l.targets[0];
    } else {
      continue;
    }
    if (next.count(from)) throw NotLinear("m-node with two linear successors");
    next[from] = to;
    if (++indeg[to] > 1) throw NotLinear("m-node with two linear predecessors");
  }
  std::vector<NodeIdx> starts;
  for (NodeIdx m : mnodes)
    if (!indeg.count(m)) starts.push_back(m);
  if (starts.size() != 1) throw NotLinear("linear skeleton is not a single chain");
  std::vector<std::string> order;
  NodeIdx cur = starts[0];
  std::set<NodeIdx> seen;
  while (true) {
    if (!seen.insert(cur).second) throw NotLinear("linear skeleton loops");
    order.push_back(c.nodes[cur].id);
    auto it = next.find(cur);
    if (it == next.end()) break;
    cur = it->second;
  }
  if (order.size() != mnodes.size()) throw NotLinear("linear skeleton misses m-nodes");
  if (c.root < 0 || order.back() != c.nodes[c.root].id)
    throw NotLinear("linear skeleton does not end at the root");
  return order;
}

bool is_subnet(const Net& n, const std::vector<LinkIdx>& links) {
  if (links.empty()) return false;
  std::set<LinkIdx> s(links.begin(), links.end());
  for (LinkIdx l : s)
    if (l < 0 || l >= static_cast<LinkIdx>(n.links.size())) return false;
  // box interiors
  for (LinkIdx l : s)
    if (n.links[l].kind == LinkKind::Bang)
      for (LinkIdx m : n.boxes[l])
        if (!s.count(m)) return false;
  auto targeted_in = [&](NodeIdx x) {
    for (LinkIdx l : n.incoming[x])
      if (s.count(l)) return true;
    return false;
  };
  auto sourced_in = [&](NodeIdx x) {
    for (LinkIdx l : n.outgoing[x])
      if (s.count(l)) return true;
    return false;
  };
  auto internal_e = [&](NodeIdx x) {
    return n.nodes[x].type == NodeType::E && targeted_in(x) && sourced_in(x);
  };
  // contractions
  for (size_t x = 0; x < n.nodes.size(); ++x)
    if (internal_e(static_cast<NodeIdx>(x)))
      for (LinkIdx l : n.incoming[x])
        if (!s.count(l)) return false;
  // boxes reached through an internal free variable
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind != LinkKind::Bang) continue;
    for (NodeIdx v : box_free_vars(n, static_cast<LinkIdx>(b)))
      if (internal_e(v))
        for (LinkIdx m : n.boxes[b])
          if (!s.count(m)) return false;
  }
  Net sub = subnet_view(n, {s.begin(), s.end()});
  if (sub.root < 0) return false;
  if (!validate(sub).empty()) return false;
  return is_correct(sub);
}

// ---------------------------------------------------------------------------
// read back

namespace {

// A live sub-hypergraph of a net, tracked as a link set plus the current root.
struct Piece {
  const Net* net;
  std::set<LinkIdx> alive;
  NodeIdx root;

  bool terminal(NodeIdx x) const {
    for (LinkIdx l : net->outgoing[x])
      if (alive.count(l)) return false;
    return true;
  }
  std::vector<LinkIdx> incoming(NodeIdx x) const {
    std::vector<LinkIdx> out;
    for (LinkIdx l : net->incoming[x])
      if (alive.count(l)) out.push_back(l);
    return out;
  }
  LinkIdx root_link() const {
    auto in = incoming(root);
    return in.size() == 1 ? in[0] : -1;
  }
  bool level0(LinkIdx b) const {
    for (LinkIdx other : alive) {
      if (other == b || net->links[other].kind != LinkKind::Bang) continue;
      if (std::binary_search(net->boxes[other].begin(), net->boxes[other].end(), b)) return false;
    }
    return true;
  }
  bool substitution_kind(LinkIdx b) const {
    NodeIdx x = net->links[b].sources[1];
    for (LinkIdx l : net->incoming[x])
      if (alive.count(l) && net->links[l].kind == LinkKind::Tensor) return false;
    return true;
  }
  bool box_free(LinkIdx b) const {
    for (NodeIdx v : box_free_vars(*net, b))
      if (!terminal(v)) return false;
    return true;
  }
  Piece without(std::initializer_list<LinkIdx> ls, NodeIdx new_root) const {
    Piece p{net, alive, new_root};
    for (LinkIdx l : ls) p.alive.erase(l);
    return p;
  }
  Piece minus_box(LinkIdx b, NodeIdx new_root) const {
    Piece p{net, alive, new_root};
    p.alive.erase(b);
    for (LinkIdx m : net->boxes[b]) p.alive.erase(m);
    return p;
  }
  Piece box_piece(LinkIdx b) const {
    Piece p{net, {net->boxes[b].begin(), net->boxes[b].end()}, net->links[b].sources[0]};
    return p;
  }
};

struct CaseInstance {
  DecompositionCase::Tag tag;
  LinkIdx link = -1;
  LinkIdx bang = -1;
};

std::vector<CaseInstance> cases_of(const Piece& p, bool all) {
  const Net& n = *p.net;
  std::vector<CaseInstance> out;
  if (p.alive.size() == 1) {
    LinkIdx l = *p.alive.begin();
    if (n.links[l].kind == LinkKind::Der)
      out.push_back({DecompositionCase::Tag::OneLinkDer, l, -1});
    else if (n.links[l].kind == LinkKind::Hole)
      out.push_back({DecompositionCase::Tag::OneLinkHole, l, -1});
    return out;
  }
  // free weakenings, smallest node id first
  {
    std::vector<std::pair<std::string, LinkIdx>> ws;
    for (LinkIdx l : p.alive)
      if (n.links[l].kind == LinkKind::Weak && p.terminal(n.links[l].targets[0]))
        ws.push_back({n.nodes[n.links[l].targets[0]].id, l});
    std::sort(ws.begin(), ws.end());
    for (auto& [_, l] : ws) {
      out.push_back({DecompositionCase::Tag::FreeWeakening, l, -1});
      if (!all) return out;
    }
  }
  // free substitutions, smallest e-node id first
  {
    std::vector<std::pair<std::string, LinkIdx>> bs;
    for (LinkIdx l : p.alive)
      if (n.links[l].kind == LinkKind::Bang && p.level0(l) && p.substitution_kind(l) &&
          p.box_free(l))
        bs.push_back({n.nodes[n.links[l].sources[1]].id, l});
    std::sort(bs.begin(), bs.end());
    for (auto& [_, l] : bs) {
      out.push_back({DecompositionCase::Tag::FreeSubstitution, l, -1});
      if (!all) return out;
    }
  }
  LinkIdx rl = p.root_link();
  if (rl >= 0 && n.links[rl].kind == LinkKind::Par) {
    out.push_back({DecompositionCase::Tag::RootAbstraction, rl, -1});
    if (!all) return out;
  }
  if (rl >= 0 && n.links[rl].kind == LinkKind::Tensor) {
    NodeIdx port = n.links[rl].targets[1];
    LinkIdx h = -1;
    for (LinkIdx l : n.outgoing[port])
      if (p.alive.count(l) && n.links[l].kind == LinkKind::Bang) h = l;
    if (h >= 0 && p.level0(h) && p.box_free(h)) {
      out.push_back({DecompositionCase::Tag::RootApplicationFreeArgument, rl, h});
      if (!all) return out;
    }
  }
  return out;
}

ExprPtr rb_rec(const Piece& p, std::vector<std::string>* weakened,
               const std::set<LinkIdx>* globally_free_weaks) {
  auto cs = cases_of(p, false);
  if (cs.empty())
    throw NotDecomposable("read back: net piece with " + std::to_string(p.alive.size()) +
                          " links has no decomposition");
  const Net& n = *p.net;
  const CaseInstance& c = cs.front();
  switch (c.tag) {
    case DecompositionCase::Tag::OneLinkDer:
      return mk_var(n.nodes[n.links[c.link].targets[1]].id);
    case DecompositionCase::Tag::OneLinkHole: {
      std::vector<std::string> iface;
      for (size_t i = 1; i < n.links[c.link].targets.size(); ++i)
        iface.push_back(n.nodes[n.links[c.link].targets[i]].id);
      return mk_hole(std::move(iface));
    }
    case DecompositionCase::Tag::FreeWeakening: {
      if (weakened && globally_free_weaks && globally_free_weaks->count(c.link))
        weakened->push_back(n.nodes[n.links[c.link].targets[0]].id);
      return rb_rec(p.without({c.link}, p.root), weakened, globally_free_weaks);
    }
    case DecompositionCase::Tag::FreeSubstitution: {
      NodeIdx x = n.links[c.link].sources[1];
      auto body = rb_rec(p.minus_box(c.link, p.root), weakened, globally_free_weaks);
      auto def = rb_rec(p.box_piece(c.link), weakened, globally_free_weaks);
      return mk_sub(body, n.nodes[x].id, def);
    }
    case DecompositionCase::Tag::RootAbstraction: {
      NodeIdx x = n.links[c.link].sources[0];
      NodeIdx body_root = n.links[c.link].sources[1];
      auto body = rb_rec(p.without({c.link}, body_root), weakened, globally_free_weaks);
      return mk_abs(n.nodes[x].id, body);
    }
    case DecompositionCase::Tag::RootApplicationFreeArgument: {
      NodeIdx fn_root = n.links[c.link].sources[0];
      Piece outer = p.minus_box(c.bang, fn_root);
      outer.alive.erase(c.link);
      auto fn = rb_rec(outer, weakened, globally_free_weaks);
      auto arg = rb_rec(p.box_piece(c.bang), weakened, globally_free_weaks);
      return mk_app(fn, arg);
    }
  }
  throw std::logic_error("read back: bad case");
}

}  // namespace

DecompositionCase decompose(const Net& n) {
  Piece p{&n, {}, n.root};
  for (size_t l = 0; l < n.links.size(); ++l) p.alive.insert(static_cast<LinkIdx>(l));
  auto cs = cases_of(p, false);
  if (cs.empty()) throw NotDecomposable("net is not decomposable");
  return {cs.front().tag, cs.front().link, cs.front().bang};
}

ReadBackResult read_back_full(const Net& n) {
  Piece p{&n, {}, n.root};
  for (size_t l = 0; l < n.links.size(); ++l) p.alive.insert(static_cast<LinkIdx>(l));
  auto fw = free_weakenings(n);
  std::set<LinkIdx> fws(fw.begin(), fw.end());
  ReadBackResult res;
  res.expr = rb_rec(p, &res.weakened, &fws);
  std::sort(res.weakened.begin(), res.weakened.end());
  return res;
}

ExprPtr read_back(const Net& n) { return read_back_full(n).expr; }

namespace {

std::string piece_key(const std::set<LinkIdx>& alive, NodeIdx root) {
  std::string k = std::to_string(root) + ":";
  for (LinkIdx l : alive) {
    k += std::to_string(l);
    k += ',';
  }
  return k;
}

struct AllCtx {
  size_t limit;
  std::map<std::string, std::vector<ExprPtr>> memo;
};

std::vector<ExprPtr> rb_all_rec(const Piece& p, AllCtx& ctx) {
  std::string key = piece_key(p.alive, p.root);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  const Net& n = *p.net;
  std::map<std::string, ExprPtr> results;
  auto add = [&](const ExprPtr& e) {
    results.emplace(alpha_key(e), e);
    if (results.size() > ctx.limit)
      throw std::runtime_error("read_back_all: result limit exceeded");
  };
  for (const auto& c : cases_of(p, true)) {
    switch (c.tag) {
      case DecompositionCase::Tag::OneLinkDer:
        add(mk_var(n.nodes[n.links[c.link].targets[1]].id));
        break;
      case DecompositionCase::Tag::OneLinkHole: {
        std::vector<std::string> iface;
        for (size_t i = 1; i < n.links[c.link].targets.size(); ++i)
          iface.push_back(n.nodes[n.links[c.link].targets[i]].id);
        add(mk_hole(std::move(iface)));
        break;
      }
      case DecompositionCase::Tag::FreeWeakening:
        for (const auto& e : rb_all_rec(p.without({c.link}, p.root), ctx)) add(e);
        break;
      case DecompositionCase::Tag::FreeSubstitution: {
        NodeIdx x = n.links[c.link].sources[1];
        auto bodies = rb_all_rec(p.minus_box(c.link, p.root), ctx);
        auto defs = rb_all_rec(p.box_piece(c.link), ctx);
        for (const auto& b : bodies)
          for (const auto& d : defs) add(mk_sub(b, n.nodes[x].id, d));
        break;
      }
      case DecompositionCase::Tag::RootAbstraction: {
        NodeIdx x = n.links[c.link].sources[0];
        NodeIdx body_root = n.links[c.link].sources[1];
        for (const auto& b : rb_all_rec(p.without({c.link}, body_root), ctx))
          add(mk_abs(n.nodes[x].id, b));
        break;
      }
      case DecompositionCase::Tag::RootApplicationFreeArgument: {
        NodeIdx fn_root = n.links[c.link].sources[0];
        Piece outer = p.minus_box(c.bang, fn_root);
        outer.alive.erase(c.link);
        auto fns = rb_all_rec(outer, ctx);
        auto args = rb_all_rec(p.box_piece(c.bang), ctx);
        for (const auto& f : fns)
          for (const auto& a : args) add(mk_app(f, a));
        break;
      }
    }
  }
  std::vector<ExprPtr> out;
  out.reserve(results.size());
  for (auto& [_, e] : results) out.push_back(e);
  ctx.memo.emplace(std::move(key), out);
  return out;
}

}  // namespace

std::vector<ExprPtr> read_back_all(const Net& n, size_t limit) {
  Piece p{&n, {}, n.root};
  for (size_t l = 0; l < n.links.size(); ++l) p.alive.insert(static_cast<LinkIdx>(l));
  AllCtx ctx{limit, {}};
  return rb_all_rec(p, ctx);
}

// ---------------------------------------------------------------------------
// guided read back

namespace {

struct GuideCtx {
  const Net& n;
  ReadBackTrace trace;
  std::set<LinkIdx> globally_free_weaks;
};

void guide(GuideCtx& g, Piece p, const Expr& t, Path pos) {
  const Net& n = g.n;
  // free weakenings never appear in the expression; drop them first
  bool dropped = true;
  while (dropped) {
    dropped = false;
    for (LinkIdx l : p.alive) {
      if (n.links[l].kind != LinkKind::Weak) continue;
      if (!p.terminal(n.links[l].targets[0])) continue;
      bool global = g.globally_free_weaks.count(l) != 0;
      g.trace.role[l] = global ? LinkRole::FreeWeak : LinkRole::BinderWeak;
      g.trace.position[l] = pos;
      if (global) g.trace.weakened.push_back(n.nodes[n.links[l].targets[0]].id);
      p.alive.erase(l);
      dropped = true;
      break;
    }
  }
  switch (t.kind) {
    case ExprKind::Var: {
      if (p.alive.size() != 1) throw NotAReadBack("variable against a many-link net piece");
      LinkIdx l = *p.alive.begin();
      if (n.links[l].kind != LinkKind::Der || n.nodes[n.links[l].targets[1]].id != t.name)
        throw NotAReadBack("expected a dereliction on '" + t.name + "'");
      g.trace.role[l] = LinkRole::Occurrence;
      g.trace.position[l] = pos;
      return;
    }
    case ExprKind::Hole: {
      if (p.alive.size() != 1) throw NotAReadBack("hole against a many-link net piece");
      LinkIdx l = *p.alive.begin();
      if (n.links[l].kind != LinkKind::Hole) throw NotAReadBack("expected a hole link");
      std::set<std::string> have;
      for (size_t i = 1; i < n.links[l].targets.size(); ++i)
        have.insert(n.nodes[n.links[l].targets[i]].id);
      std::set<std::string> want(t.hole_interface.begin(), t.hole_interface.end());
      if (have != want) throw NotAReadBack("hole interface mismatch");
      g.trace.role[l] = LinkRole::HoleSite;
      g.trace.position[l] = pos;
      return;
    }
    case ExprKind::Abs: {
      LinkIdx rl = p.root_link();
      if (rl < 0 || n.links[rl].kind != LinkKind::Par)
        throw NotAReadBack("expected a par at the root for an abstraction");
      if (n.nodes[n.links[rl].sources[0]].id != t.name)
        throw NotAReadBack("abstraction binder does not match the par's e-node");
      g.trace.role[rl] = LinkRole::Abstraction;
      g.trace.position[rl] = pos;
      Path body_pos = pos;
      body_pos.push_back(0);
      guide(g, p.without({rl}, n.links[rl].sources[1]), *t.left, std::move(body_pos));
      return;
    }
    case ExprKind::App: {
      LinkIdx rl = p.root_link();
      if (rl < 0 || n.links[rl].kind != LinkKind::Tensor)
        throw NotAReadBack("expected a tensor at the root for an application");
      NodeIdx port = n.links[rl].targets[1];
      LinkIdx h = -1;
      for (LinkIdx l : n.outgoing[port])
        if (p.alive.count(l) && n.links[l].kind == LinkKind::Bang) h = l;
      if (h < 0 || !p.level0(h) || !p.box_free(h))
        throw NotAReadBack("application argument is not a free box");
      g.trace.role[rl] = LinkRole::Application;
      g.trace.position[rl] = pos;
      g.trace.role[h] = LinkRole::ArgumentBox;
      g.trace.position[h] = pos;
      Piece outer = p.minus_box(h, n.links[rl].sources[0]);
      outer.alive.erase(rl);
      Path fn_pos = pos, arg_pos = pos;
      fn_pos.push_back(0);
      arg_pos.push_back(1);
      guide(g, std::move(outer), *t.left, std::move(fn_pos));
      guide(g, p.box_piece(h), *t.right, std::move(arg_pos));
      return;
    }
    case ExprKind::Sub: {
      LinkIdx b = -1;
      for (LinkIdx l : p.alive)
        if (n.links[l].kind == LinkKind::Bang && n.nodes[n.links[l].sources[1]].id == t.name)
          b = l;
      if (b < 0) throw NotAReadBack("no bang on binder '" + t.name + "'");
      if (!p.level0(b) || !p.substitution_kind(b) || !p.box_free(b))
        throw NotAReadBack("bang on '" + t.name + "' is not a free substitution here");
      g.trace.role[b] = LinkRole::Substitution;
      g.trace.position[b] = pos;
      Path body_pos = pos, def_pos = pos;
      body_pos.push_back(0);
      def_pos.push_back(1);
      guide(g, p.minus_box(b, p.root), *t.left, std::move(body_pos));
      guide(g, p.box_piece(b), *t.right, std::move(def_pos));
      return;
    }
  }
  throw std::logic_error("guided read back: bad kind");
}

}  // namespace

ReadBackTrace guided_read_back(const Net& n, const ExprPtr& target) {
  GuideCtx g{n, {}, {}};
  g.trace.role.assign(n.links.size(), LinkRole::Unused);
  g.trace.position.assign(n.links.size(), {});
  auto fw = free_weakenings(n);
  g.globally_free_weaks.insert(fw.begin(), fw.end());
  Piece p{&n, {}, n.root};
  for (size_t l = 0; l < n.links.size(); ++l) p.alive.insert(static_cast<LinkIdx>(l));
  guide(g, std::move(p), *target, {});
  for (size_t l = 0; l < n.links.size(); ++l)
    if (g.trace.role[l] == LinkRole::Unused)
      throw NotAReadBack("link '" + n.links[l].id + "' was never consumed");
  std::sort(g.trace.weakened.begin(), g.trace.weakened.end());
  return std::move(g.trace);
}

FactorResult factor_at_var(const Net& n, const ExprPtr& t, LinkIdx der,
                           const std::vector<std::string>& extra_interface) {
  if (der < 0 || der >= static_cast<LinkIdx>(n.links.size()) ||
      n.links[der].kind != LinkKind::Der)
    throw std::invalid_argument("factor_at_var: not a dereliction");
  NodeIdx x = n.links[der].targets[1];
  if (!n.outgoing[x].empty())
    throw std::invalid_argument("factor_at_var: the dereliction's e-node is not free");
  ReadBackTrace trace = guided_read_back(n, t);
  if (trace.role[der] != LinkRole::Occurrence)
    throw std::invalid_argument("factor_at_var: dereliction not consumed as an occurrence");
  const Path& occ = trace.position[der];

  std::vector<std::string> iface = extra_interface;
  iface.push_back(n.nodes[x].id);
  std::sort(iface.begin(), iface.end());
  iface.erase(std::unique(iface.begin(), iface.end()), iface.end());
  ExprPtr ctx = replace_at(t, occ, mk_hole(iface));

  NetEditor ed(n);
  std::vector<NodeIdx> tgt{n.links[der].targets[0]};
  for (const auto& v : iface) {
    NodeIdx i = ed.working().node_index(v);
    if (i < 0) i = ed.add_node(v, NodeType::E);
    tgt.push_back(i);
  }
  LinkIdx hl = ed.add_link(ed.unique_link_id("h@factor"), LinkKind::Hole, {}, std::move(tgt));
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind != LinkKind::Bang) continue;
    if (std::binary_search(n.boxes[b].begin(), n.boxes[b].end(), der)) {
      ed.box_erase(static_cast<LinkIdx>(b), der);
      ed.box_insert(static_cast<LinkIdx>(b), hl);
    }
  }
  ed.remove_link(der);
  return {ed.finish(), ctx};
}

}  // namespace lsnet
