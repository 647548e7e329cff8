#include "lsnet/net_rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lsnet {

std::vector<NetRedex> find_net_redexes(const Net& n) {
  std::vector<NetRedex> out;
  for (size_t x = 0; x < n.nodes.size(); ++x) {
    if (n.outgoing[x].size() != 1) continue;
    const NetLink& down = n.links[n.outgoing[x][0]];
    if (n.nodes[x].type == NodeType::M) {
      // principal out: tensor m-source; principal in: par m-target
      if (down.kind != LinkKind::Tensor || down.sources[0] != static_cast<NodeIdx>(x)) continue;
      if (n.incoming[x].size() != 1) continue;
      const NetLink& up = n.links[n.incoming[x][0]];
      if (up.kind != LinkKind::Par) continue;
      out.push_back({RuleKind::M, static_cast<NodeIdx>(x), n.incoming[x][0], n.outgoing[x][0]});
    } else {
      // principal out: bang e-source; principal in: der / weak e-target
      if (down.kind != LinkKind::Bang || down.sources[1] != static_cast<NodeIdx>(x)) continue;
      for (LinkIdx l : n.incoming[x]) {
        if (n.links[l].kind == LinkKind::Der)
          out.push_back({RuleKind::E, static_cast<NodeIdx>(x), l, n.outgoing[x][0]});
        else if (n.links[l].kind == LinkKind::Weak)
          out.push_back({RuleKind::Gc, static_cast<NodeIdx>(x), l, n.outgoing[x][0]});
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const NetRedex& a, const NetRedex& b) {
    if (n.nodes[a.cut].id != n.nodes[b.cut].id) return n.nodes[a.cut].id < n.nodes[b.cut].id;
    return n.links[a.a].id < n.links[b.a].id;
  });
  return out;
}

namespace {

void check_redex(const Net& n, const NetRedex& r) {
  auto bad = [&](const char* why) { throw StaleRedex(std::string("net redex: ") + why); };
  if (r.cut < 0 || r.cut >= static_cast<NodeIdx>(n.nodes.size())) bad("cut node out of range");
  if (r.a < 0 || r.b < 0 || r.a >= static_cast<LinkIdx>(n.links.size()) ||
      r.b >= static_cast<LinkIdx>(n.links.size()))
    bad("link out of range");
  switch (r.kind) {
    case RuleKind::M:
      if (n.links[r.a].kind != LinkKind::Par || n.links[r.b].kind != LinkKind::Tensor)
        bad("expected par/tensor");
      if (n.links[r.a].targets[0] != r.cut || n.links[r.b].sources[0] != r.cut)
        bad("par/tensor do not meet at the cut");
      break;
    case RuleKind::E:
      if (n.links[r.a].kind != LinkKind::Der || n.links[r.b].kind != LinkKind::Bang)
        bad("expected der/bang");
      if (n.links[r.a].targets[1] != r.cut || n.links[r.b].sources[1] != r.cut)
        bad("der/bang do not meet at the cut");
      break;
    case RuleKind::Gc:
      if (n.links[r.a].kind != LinkKind::Weak || n.links[r.b].kind != LinkKind::Bang)
        bad("expected weak/bang");
      if (n.links[r.a].targets[0] != r.cut || n.links[r.b].sources[1] != r.cut)
        bad("weak/bang do not meet at the cut");
      break;
  }
}

// boxes of P (bang indices) that contain a given link
std::vector<LinkIdx> boxes_containing(const Net& n, LinkIdx l) {
  std::vector<LinkIdx> out;
  for (size_t b = 0; b < n.links.size(); ++b) {
    if (n.links[b].kind != LinkKind::Bang) continue;
    if (std::binary_search(n.boxes[b].begin(), n.boxes[b].end(), l))
      out.push_back(static_cast<LinkIdx>(b));
  }
  return out;
}

Net step_m(const Net& n, const NetRedex& r) {
  NetEditor ed(n);
  const NetLink par = n.links[r.a];
  const NetLink tensor = n.links[r.b];
  NodeIdx bound = par.sources[0];       // the abstraction's variable
  NodeIdx body_root = par.sources[1];
  NodeIdx app_root = tensor.targets[0];
  NodeIdx arg_port = tensor.targets[1];
  LinkIdx arg_bang = -1;
  for (LinkIdx l : n.outgoing[arg_port])
    if (n.links[l].kind == LinkKind::Bang) arg_bang = l;
  if (arg_bang < 0) throw StaleRedex("m-step: argument port has no bang");

  ed.remove_link(r.a);
  ed.remove_link(r.b);
  // the argument box becomes a substitution on the abstracted variable
  ed.replace_node(arg_port, bound);
  // the body takes the application's place
  ed.replace_node(body_root, app_root);
  return ed.finish();
}

Net step_gc(const Net& n, const NetRedex& r) {
  NetEditor ed(n);
  const NetLink bang = n.links[r.b];
  auto interior = n.boxes[r.b];
  auto fv = box_free_vars(n, r.b);
  std::sort(fv.begin(), fv.end(),
            [&](NodeIdx a, NodeIdx b) { return n.nodes[a].id < n.nodes[b].id; });
  ed.remove_link(r.a);
  ed.remove_link(r.b);
  for (LinkIdx m : interior) ed.remove_link(m);
  // weaken box variables that lost their last use; contracted ones need none
  for (NodeIdx v : fv)
    if (ed.incoming_of(v).empty())
      ed.add_weakening(v, "w!" + bang.id + "." + n.nodes[v].id);
  return ed.finish();
}

Net step_e(const Net& n, const NetRedex& r) {
  NetEditor ed(n);
  const NetLink der = n.links[r.a];
  const NetLink bang = n.links[r.b];
  NodeIdx cut = r.cut;
  NodeIdx hook = der.targets[0];       // m-node where the occurrence was used
  NodeIdx box_root = bang.sources[0];
  const auto interior = n.boxes[r.b];
  std::set<LinkIdx> inbox(interior.begin(), interior.end());

  std::set<NodeIdx> border;
  for (NodeIdx v : box_free_vars(n, r.b)) border.insert(v);

  // fresh copy of the box interior: the root lands on the dereliction's
  // m-node, border variables keep their identity, everything else is new
  std::map<NodeIdx, NodeIdx> nmap;
  auto copy_node = [&](NodeIdx x) {
    if (x == box_root) return hook;
    if (border.count(x)) return x;
    auto it = nmap.find(x);
    if (it != nmap.end()) return it->second;
    NodeIdx fresh = ed.add_node(ed.unique_node_id(n.nodes[x].id + "'"), n.nodes[x].type);
    nmap.emplace(x, fresh);
    return fresh;
  };
  std::map<LinkIdx, LinkIdx> lmap;
  for (LinkIdx m : interior) {
    const NetLink& src = n.links[m];
    std::vector<NodeIdx> ns, nt;
    for (NodeIdx x : src.sources) ns.push_back(copy_node(x));
    for (NodeIdx x : src.targets) nt.push_back(copy_node(x));
    lmap[m] = ed.add_link(ed.unique_link_id(src.id + "'"), src.kind, std::move(ns),
                          std::move(nt));
  }
  for (LinkIdx m : interior) {
    if (n.links[m].kind != LinkKind::Bang) continue;
    for (LinkIdx inner : n.boxes[m]) ed.box_insert(lmap[m], lmap[inner]);
  }
  // the copy lives wherever the dereliction lived
  for (LinkIdx host : boxes_containing(n, r.a))
    for (auto& [_, c] : lmap) ed.box_insert(host, c);

  ed.remove_link(r.a);
  // a lone dereliction leaves the substituted variable unused
  if (ed.incoming_of(cut).empty()) ed.add_weakening(cut, "w!" + bang.id);
  return ed.finish();
}

}  // namespace

Net apply_net_redex(const Net& n, const NetRedex& r) {
  check_redex(n, r);
  switch (r.kind) {
    case RuleKind::M: return step_m(n, r);
    case RuleKind::E: return step_e(n, r);
    case RuleKind::Gc: return step_gc(n, r);
  }
  throw std::logic_error("apply_net_redex: bad kind");
}

// erasures first, then multiplicative cuts, then duplication: boxes that
// become garbage go away before anything copies them
size_t pick_net_redex(const std::vector<NetRedex>& rs) {
  auto prio = [](RuleKind k) { return k == RuleKind::Gc ? 0 : k == RuleKind::M ? 1 : 2; };
  size_t best = 0;
  for (size_t i = 1; i < rs.size(); ++i)
    if (prio(rs[i].kind) < prio(rs[best].kind)) best = i;
  return best;
}

NetNormalizeResult normalize_net(const Net& n, long fuel, const NetStepObserver& observer) {
  NetNormalizeResult res;
  res.net = n;
  for (long step = 0; step < fuel; ++step) {
    auto redexes = find_net_redexes(res.net);
    if (redexes.empty()) {
      res.reached_normal_form = true;
      return res;
    }
    const NetRedex& pick = redexes[pick_net_redex(redexes)];
    Net next = apply_net_redex(res.net, pick);
    switch (pick.kind) {
      case RuleKind::M: ++res.steps_m; break;
      case RuleKind::E: ++res.steps_e; break;
      case RuleKind::Gc: ++res.steps_gc; break;
    }
    if (observer) observer(res.total_steps(), pick, next);
    res.net = std::move(next);
  }
  res.reached_normal_form = find_net_redexes(res.net).empty();
  return res;
}

RedexBijection redex_bijection(const Net& p, const ExprPtr& t) {
  ReadBackTrace trace = guided_read_back(p, t);

  std::map<Path, LinkIdx> tensor_at, bang_at, der_at;
  for (size_t l = 0; l < p.links.size(); ++l) {
    switch (trace.role[l]) {
      case LinkRole::Application: tensor_at[trace.position[l]] = static_cast<LinkIdx>(l); break;
      case LinkRole::Substitution: bang_at[trace.position[l]] = static_cast<LinkIdx>(l); break;
      case LinkRole::Occurrence: der_at[trace.position[l]] = static_cast<LinkIdx>(l); break;
      default: break;
    }
  }

  auto term_redexes = find_term_redexes(t);
  auto net_redexes = find_net_redexes(p);
  std::set<std::pair<LinkIdx, LinkIdx>> net_set;
  for (const auto& r : net_redexes) net_set.insert({r.a, r.b});

  RedexBijection out;
  for (const auto& tr : term_redexes) {
    NetRedex nr;
    nr.kind = tr.kind;
    switch (tr.kind) {
      case RuleKind::M: {
        auto it = tensor_at.find(tr.at);
        if (it == tensor_at.end())
          throw std::logic_error("redex_bijection: no tensor at " + path_to_string(tr.at));
        nr.b = it->second;
        nr.cut = p.links[nr.b].sources[0];
        if (p.incoming[nr.cut].size() != 1 ||
            p.links[p.incoming[nr.cut][0]].kind != LinkKind::Par)
          throw std::logic_error("redex_bijection: m-redex without a par at the cut");
        nr.a = p.incoming[nr.cut][0];
        break;
      }
      case RuleKind::E: {
        auto ib = bang_at.find(tr.at);
        auto id = der_at.find(tr.occ);
        if (ib == bang_at.end() || id == der_at.end())
          throw std::logic_error("redex_bijection: unmatched e-redex at " +
                                 path_to_string(tr.at));
        nr.b = ib->second;
        nr.a = id->second;
        nr.cut = p.links[nr.b].sources[1];
        if (p.links[nr.a].targets[1] != nr.cut)
          throw std::logic_error("redex_bijection: dereliction is not on the cut variable");
        break;
      }
      case RuleKind::Gc: {
        auto ib = bang_at.find(tr.at);
        if (ib == bang_at.end())
          throw std::logic_error("redex_bijection: unmatched gc-redex at " +
                                 path_to_string(tr.at));
        nr.b = ib->second;
        nr.cut = p.links[nr.b].sources[1];
        LinkIdx weak = -1;
        for (LinkIdx l : p.incoming[nr.cut])
          if (p.links[l].kind == LinkKind::Weak) weak = l;
        if (weak < 0) throw std::logic_error("redex_bijection: gc-redex without a weakening");
        nr.a = weak;
        break;
      }
    }
    if (!net_set.erase({nr.a, nr.b}))
      throw std::logic_error("redex_bijection: term redex maps outside the net redex set");
    out.pairs.push_back({tr, nr});
  }
  if (!net_set.empty())
    throw std::logic_error("redex_bijection: " + std::to_string(net_set.size()) +
                           " net redexes have no term counterpart");
  return out;
}

}  // namespace lsnet
