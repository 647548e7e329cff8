#include "lsnet/net_io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace lsnet {

using nlohmann::json;

std::string net_to_json(const Net& n, bool pretty) {
  json j;
  j["nodes"] = json::array();
  for (const auto& nd : n.nodes)
    j["nodes"].push_back({{"id", nd.id}, {"ntype", nd.type == NodeType::E ? "e" : "m"}});
  j["links"] = json::array();
  for (const auto& lk : n.links) {
    json src = json::array(), tgt = json::array();
    for (NodeIdx s : lk.sources) src.push_back(n.nodes[s].id);
    for (NodeIdx t : lk.targets) tgt.push_back(n.nodes[t].id);
    j["links"].push_back({{"id", lk.id},
                          {"kind", std::string(kind_name(lk.kind))},
                          {"sources", src},
                          {"targets", tgt}});
  }
  j["root"] = n.root >= 0 ? n.nodes[n.root].id : "";
  j["freeVars"] = json::array();
  for (NodeIdx v : n.free_vars) j["freeVars"].push_back(n.nodes[v].id);
  j["iboxes"] = json::object();
  for (size_t l = 0; l < n.links.size(); ++l) {
    if (n.links[l].kind != LinkKind::Bang) continue;
    json members = json::array();
    for (LinkIdx m : n.boxes[l]) members.push_back(n.links[m].id);
    j["iboxes"][n.links[l].id] = members;
  }
  return pretty ? j.dump(2) : j.dump();
}

Net net_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("json parse error: ") + e.what());
  }
  auto need = [&](const char* field) {
    if (!j.contains(field)) throw MalformedInput(std::string("missing field '") + field + "'");
  };
  need("nodes");
  need("links");
  need("root");
  need("freeVars");
  need("iboxes");

  Net n;
  std::map<std::string, NodeIdx> node_of;
  for (const auto& nd : j["nodes"]) {
    if (!nd.contains("id") || !nd.contains("ntype"))
      throw MalformedInput("node entry needs 'id' and 'ntype'");
    std::string id = nd["id"].get<std::string>();
    std::string ty = nd["ntype"].get<std::string>();
    if (ty != "e" && ty != "m") throw MalformedInput("node '" + id + "': ntype must be e or m");
    if (node_of.count(id)) throw MalformedInput("duplicate node id '" + id + "'");
    node_of[id] = static_cast<NodeIdx>(n.nodes.size());
    n.nodes.push_back({id, ty == "e" ? NodeType::E : NodeType::M});
  }
  auto node_ref = [&](const json& v, const std::string& where) {
    std::string id = v.get<std::string>();
    auto it = node_of.find(id);
    if (it == node_of.end())
      throw MalformedInput("unknown node '" + id + "' in " + where);
    return it->second;
  };
  std::map<std::string, LinkIdx> link_of;
  for (const auto& lk : j["links"]) {
    if (!lk.contains("id") || !lk.contains("kind"))
      throw MalformedInput("link entry needs 'id' and 'kind'");
    std::string id = lk["id"].get<std::string>();
    auto kind = kind_from_name(lk["kind"].get<std::string>());
    if (!kind) throw MalformedInput("link '" + id + "': unknown kind");
    if (link_of.count(id)) throw MalformedInput("duplicate link id '" + id + "'");
    NetLink l;
    l.id = id;
    l.kind = *kind;
    if (lk.contains("sources"))
      for (const auto& s : lk["sources"]) l.sources.push_back(node_ref(s, "link '" + id + "'"));
    if (lk.contains("targets"))
      for (const auto& t : lk["targets"]) l.targets.push_back(node_ref(t, "link '" + id + "'"));
    link_of[id] = static_cast<LinkIdx>(n.links.size());
    n.links.push_back(std::move(l));
  }
  n.boxes.assign(n.links.size(), {});
  for (auto it = j["iboxes"].begin(); it != j["iboxes"].end(); ++it) {
    auto bit = link_of.find(it.key());
    if (bit == link_of.end()) throw MalformedInput("iboxes: unknown link '" + it.key() + "'");
    for (const auto& m : it.value()) {
      std::string mid = m.get<std::string>();
      auto mit = link_of.find(mid);
      if (mit == link_of.end())
        throw MalformedInput("iboxes of '" + it.key() + "': unknown link '" + mid + "'");
      n.boxes[bit->second].push_back(mit->second);
    }
  }
  std::string root = j["root"].get<std::string>();
  if (!root.empty()) {
    auto it = node_of.find(root);
    if (it == node_of.end()) throw MalformedInput("unknown root node '" + root + "'");
    n.root = it->second;
  }
  for (const auto& v : j["freeVars"]) n.free_vars.push_back(node_ref(v, "freeVars"));
  n.finalize();
  return n;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

bool principal_source(LinkKind k, size_t i) {
  return (k == LinkKind::Tensor && i == 0) || (k == LinkKind::Bang && i == 1);
}

bool principal_target(LinkKind k, size_t i) {
  return (k == LinkKind::Der && i == 1) || (k == LinkKind::Weak && i == 0) ||
         (k == LinkKind::Par && i == 0);
}

}  // namespace

std::string net_to_dot(const Net& n) {
  std::ostringstream o;
  o << "digraph net {\n  rankdir=BT;\n";
  auto lev = link_levels(n);

  // innermost box a link belongs to, -1 for level 0
  std::vector<LinkIdx> owner(n.links.size(), -1);
  for (size_t l = 0; l < n.links.size(); ++l) {
    int best = -1;
    LinkIdx who = -1;
    for (size_t b = 0; b < n.links.size(); ++b) {
      if (n.links[b].kind != LinkKind::Bang) continue;
      if (!std::binary_search(n.boxes[b].begin(), n.boxes[b].end(), static_cast<LinkIdx>(l)))
        continue;
      if (lev[b] > best) {
        best = lev[b];
        who = static_cast<LinkIdx>(b);
      }
    }
    owner[l] = who;
  }
  // a node is drawn inside the innermost box it is internal to
  std::vector<LinkIdx> node_owner(n.nodes.size(), -1);
  for (size_t x = 0; x < n.nodes.size(); ++x) {
    if (n.outgoing[x].empty()) continue;
    node_owner[x] = owner[n.outgoing[x][0]];
  }

  auto node_decl = [&](NodeIdx x) {
    std::ostringstream d;
    if (n.nodes[x].type == NodeType::E)
      d << "    n" << x << " [label=" << dot_quote(n.nodes[x].id)
        << ", shape=circle, color=cyan3, fontsize=10];\n";
    else
      d << "    n" << x << " [label=\"\", shape=point, color=brown, xlabel="
        << dot_quote(n.nodes[x].id) << ", fontsize=8];\n";
    return d.str();
  };
  auto link_decl = [&](LinkIdx l) {
    std::ostringstream d;
    d << "    l" << l << " [label=" << dot_quote(std::string(kind_name(n.links[l].kind)))
      << ", shape=box, height=0.2, fontsize=10];\n";
    return d.str();
  };

  std::function<void(LinkIdx, int)> emit_box = [&](LinkIdx box, int depth) {
    std::string ind(static_cast<size_t>(depth) * 2, ' ');
    for (size_t l = 0; l < n.links.size(); ++l)
      if (owner[l] == box) o << ind << link_decl(static_cast<LinkIdx>(l));
    for (size_t x = 0; x < n.nodes.size(); ++x)
      if (node_owner[x] == box) o << ind << node_decl(static_cast<NodeIdx>(x));
    for (size_t b = 0; b < n.links.size(); ++b) {
      if (n.links[b].kind != LinkKind::Bang) continue;
      bool direct = false;
      if (box == -1)
        direct = lev[b] == 0;
      else
        direct = owner[b] == box && static_cast<LinkIdx>(b) != box;
      if (!direct) continue;
      o << ind << "subgraph cluster_" << b << " {\n"
        << ind << "  style=dashed; label=" << dot_quote(n.links[b].id) << ";\n";
      emit_box(static_cast<LinkIdx>(b), depth + 1);
      o << ind << "}\n";
    }
  };
  // boxes cluster their interior; the bang link itself sits at its own level
  emit_box(-1, 1);

  for (size_t l = 0; l < n.links.size(); ++l) {
    const auto& lk = n.links[l];
    for (size_t i = 0; i < lk.sources.size(); ++i)
      o << "  n" << lk.sources[i] << " -> l" << l
        << (principal_source(lk.kind, i) ? " [penwidth=2, arrowhead=dot]" : "") << ";\n";
    for (size_t i = 0; i < lk.targets.size(); ++i)
      o << "  l" << l << " -> n" << lk.targets[i]
        << (principal_target(lk.kind, i) ? " [penwidth=2, arrowhead=dot]" : "") << ";\n";
  }
  if (n.root >= 0) o << "  n" << n.root << " [xlabel=\"root\"];\n";
  o << "}\n";
  return o.str();
}

uint64_t net_hash(const Net& n) {
  std::string s = net_to_json(n, false);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lsnet
