#include <algorithm>

#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/net_io.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

ExprPtr wp(const char* s) { return well_name(parse_expr(s)); }

bool has_violation(const Net& n, const std::string& condition) {
  for (const auto& v : validate(n))
    if (v.condition == condition) return true;
  return false;
}

LinkIdx the_bang(const Net& n, size_t which = 0) {
  size_t seen = 0;
  for (size_t l = 0; l < n.links.size(); ++l)
    if (n.links[l].kind == LinkKind::Bang && seen++ == which) return static_cast<LinkIdx>(l);
  return -1;
}

}  // namespace

TEST_SUITE("net") {

TEST_CASE("smallest term net") {
  Net n = translate(parse_expr("x"));
  CHECK(validate(n).empty());
  REQUIRE(n.links.size() == 1);
  CHECK(n.links[0].kind == LinkKind::Der);
  REQUIRE(n.links[0].targets.size() == 2);
  CHECK(n.nodes[n.links[0].targets[0]].type == NodeType::M);
  CHECK(n.nodes[n.links[0].targets[1]].id == "x");
  CHECK(n.free_vars.size() == 1);
  CHECK(net_kind(n) == NetKind::TermNet);
}

TEST_CASE("weakenings cannot be contracted") {
  Net n = translate(parse_expr("x"));
  // add a weakening on the same e-node the dereliction uses
  NetEditor ed(n);
  ed.add_link("w-bad", LinkKind::Weak, {}, {n.links[0].targets[1]});
  Net bad = ed.finish();
  CHECK(has_violation(bad, "contraction"));
}

TEST_CASE("box omitting a contraction premise violates internal closure") {
  Net n = translate(wp("w[y<-\\x. x x]"));
  // the substitution box holds the abstraction: find the bang whose box
  // contains the par, then drop one dereliction on the bound variable
  LinkIdx b = -1;
  for (size_t l = 0; l < n.links.size(); ++l) {
    if (n.links[l].kind != LinkKind::Bang) continue;
    for (LinkIdx m : n.boxes[l])
      if (n.links[m].kind == LinkKind::Par) b = static_cast<LinkIdx>(l);
  }
  REQUIRE(b >= 0);
  Net mutated = n;
  auto& box = mutated.boxes[b];
  LinkIdx dropped = -1;
  for (LinkIdx m : box) {
    if (mutated.links[m].kind != LinkKind::Der) continue;
    NodeIdx x = mutated.links[m].targets[1];
    if (!mutated.outgoing[x].empty() &&
        mutated.links[mutated.outgoing[x][0]].kind == LinkKind::Par)
      dropped = m;
  }
  REQUIRE(dropped >= 0);
  box.erase(std::remove(box.begin(), box.end(), dropped), box.end());
  // keep inner boxes consistent: remove it from nested boxes too
  for (auto& other : mutated.boxes)
    other.erase(std::remove(other.begin(), other.end(), dropped), other.end());
  mutated.finalize();
  CHECK(has_violation(mutated, "internal-closure"));
}

TEST_CASE("box containment must be acyclic") {
  const char* mutual = R"({
    "nodes": [{"id":"r","ntype":"m"},{"id":"m1","ntype":"m"},{"id":"m2","ntype":"m"},
              {"id":"x","ntype":"e"},{"id":"y","ntype":"e"},{"id":"u","ntype":"e"},
              {"id":"v","ntype":"e"}],
    "links": [{"id":"d0","kind":"der","sources":[],"targets":["r","u"]},
              {"id":"d1","kind":"der","sources":[],"targets":["m1","v"]},
              {"id":"d2","kind":"der","sources":[],"targets":["m2","u"]},
              {"id":"b1","kind":"bang","sources":["m1","x"],"targets":[]},
              {"id":"b2","kind":"bang","sources":["m2","y"],"targets":[]},
              {"id":"w1","kind":"weak","sources":[],"targets":["x"]},
              {"id":"w2","kind":"weak","sources":[],"targets":["y"]}],
    "root": "r",
    "freeVars": ["u","v"],
    "iboxes": {"b1": ["d1","b2","d2","w2"], "b2": ["d2","b1","d1","w1"]}
  })";
  Net n = net_from_json(mutual);
  CHECK(has_violation(n, "box-nesting-cycle"));
}

TEST_CASE("declared interface must match the structure") {
  Net n = translate(parse_expr("x"));
  Net bad = n;
  bad.free_vars.clear();
  bad.finalize();
  CHECK(has_violation(bad, "free-variables"));
}

TEST_CASE("levels") {
  Net n = translate(parse_expr("x"));
  CHECK(link_level(n, 0) == 0);

  n = translate(wp("(\\x. x) y"));
  auto lev = link_levels(n);
  for (size_t l = 0; l < n.links.size(); ++l) {
    if (n.links[l].kind == LinkKind::Der && n.nodes[n.links[l].targets[1]].id == "y")
      CHECK(lev[l] == 1);  // the argument sits inside one box
    if (n.links[l].kind == LinkKind::Par) CHECK(lev[l] == 0);
  }

  n = translate(wp("(\\x. x) (y z)"));
  lev = link_levels(n);
  int deepest = 0;
  for (size_t l = 0; l < n.links.size(); ++l) deepest = std::max(deepest, lev[l]);
  CHECK(deepest == 2);  // argument box inside the outer argument box
}

TEST_CASE("box classification") {
  // substitution box, free when its variables are free in the whole net
  Net n = translate(wp("x[x<-y]"));
  auto c = classify_box(n, the_bang(n));
  CHECK_FALSE(c.argument);
  CHECK(c.free_box);

  // argument box
  n = translate(wp("x y"));
  c = classify_box(n, the_bang(n));
  CHECK(c.argument);
  CHECK(c.free_box);

  // a box under another box is not free
  n = translate(wp("x[x<-y[y<-z]]"));
  auto lev = link_levels(n);
  for (size_t l = 0; l < n.links.size(); ++l)
    if (n.links[l].kind == LinkKind::Bang && lev[l] == 1)
      CHECK_FALSE(classify_box(n, static_cast<LinkIdx>(l)).free_box);

  // substitution box whose variable is bound outside is not free
  n = translate(wp("\\y. x[x<-y]"));
  c = classify_box(n, the_bang(n));
  CHECK_FALSE(c.argument);
  CHECK_FALSE(c.free_box);
}

TEST_CASE("subnets") {
  Net n = translate(wp("x[x<-y]"), {"w1"});
  std::vector<LinkIdx> all(n.links.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<LinkIdx>(i);
  CHECK(is_subnet(n, all));

  // dropping a free weakening keeps a subnet
  std::vector<LinkIdx> no_weak;
  for (LinkIdx l : all)
    if (n.links[l].kind != LinkKind::Weak) no_weak.push_back(l);
  REQUIRE(no_weak.size() == all.size() - 1);
  CHECK(is_subnet(n, no_weak));

  // a box interior missing one link is not
  LinkIdx b = the_bang(n);
  std::vector<LinkIdx> broken;
  for (LinkIdx l : all)
    if (l != n.boxes[b].front()) broken.push_back(l);
  CHECK_FALSE(is_subnet(n, broken));
}

TEST_CASE("isomorphism ignores internal identities and fixes free names") {
  Net a = translate(wp("(\\x. x) y"));
  // same net with every internal id renamed
  std::string j = net_to_json(a);
  size_t pos;
  while ((pos = j.find("m@")) != std::string::npos) j.replace(pos, 2, "Q_");
  Net b = net_from_json(j);
  CHECK(net_iso_eq(a, b));

  // structurally equal but with a renamed free variable: not isomorphic
  Net c = translate(wp("(\\x. x) z"));
  CHECK_FALSE(net_iso_eq(a, c));

  // bound names do not matter
  CHECK(net_iso_eq(translate(parse_expr("\\x. x")), translate(parse_expr("\\y. y"))));

  // the equivalence axiom instance
  CHECK(net_iso_eq(translate(wp("(\\y. x)[x<-z]")), translate(wp("\\y. x[x<-z]"))));
  CHECK_FALSE(net_iso_eq(translate(wp("(y x)[x<-z]")), translate(wp("y (x[x<-z])"))));

  // witness maps compose: spot check transitivity
  Net d = translate(parse_expr("\\q. q"));
  auto i1 = net_iso(translate(parse_expr("\\x. x")), translate(parse_expr("\\y. y")));
  auto i2 = net_iso(translate(parse_expr("\\y. y")), d);
  REQUIRE(i1);
  REQUIRE(i2);
  CHECK(net_iso_eq(translate(parse_expr("\\x. x")), d));
}

TEST_CASE("plugging context nets") {
  // identity context
  Net id_ctx = translate(parse_expr("[.]{x}"));
  Net x = translate(parse_expr("x"));
  CHECK(net_iso_eq(plug_net(id_ctx, x), x));

  // interface violation
  Net y = translate(parse_expr("y"), {"x"});
  CHECK_THROWS_AS(plug_net(id_ctx, y), InterfaceViolation);

  // capture: \x. [.]{x} filled with x
  Net lam_ctx = translate(wp("\\x. [.]{x}"));
  Net filled = plug_net(lam_ctx, x);
  CHECK(validate(filled).empty());
  CHECK(net_iso_eq(filled, translate(wp("\\x. x"))));

  // unused interface names get weakened
  Net lam_ctx2 = translate(wp("\\x. [.]{x,y}"));
  Net filled2 = plug_net(lam_ctx2, translate(parse_expr("y"), {}));
  CHECK(validate(filled2).empty());
  CHECK(net_iso_eq(filled2, translate(wp("\\x. y"))));

  // plugging inside a box pushes new weakenings out
  Net box_ctx = translate(wp("w[q<-[.]{x,y}]"));
  Net filled3 = plug_net(box_ctx, translate(parse_expr("x")));
  CHECK(validate(filled3).empty());
  CHECK(net_iso_eq(filled3, translate(wp("w[q<-x]"), {"y"})));
}

TEST_CASE("plugging matches plugging on terms") {
  // net(C)<net(e)> is isomorphic to net(C<e>) over decompositions of corpus terms
  long checked = 0;
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    std::function<void(const Expr&, Path)> walk = [&](const Expr& e, Path pos) {
      auto dec = split_at(t, pos);
      Net ctx = translate(dec.context);
      Net fill = translate(dec.sub);
      Net plugged = plug_net(ctx, fill);
      CHECK(validate(plugged).empty());
      CHECK(net_iso_eq(plugged, translate(t)));
      ++checked;
      if (e.kind == ExprKind::Abs) {
        Path p = pos;
        p.push_back(0);
        walk(*e.left, p);
      } else if (e.kind == ExprKind::App || e.kind == ExprKind::Sub) {
        Path p0 = pos;
        p0.push_back(0);
        walk(*e.left, p0);
        Path p1 = pos;
        p1.push_back(1);
        walk(*e.right, p1);
      }
    };
    walk(*t, {});
    return checked < 1500;
  });
  CHECK(checked >= 1500);
}

TEST_CASE("json round trip") {
  for (const char* src : {"x", "(\\x. x) y", "(x x)[x<-\\y. y z]", "\\x. [.]{x,q} x"}) {
    Net n = translate(wp(src));
    Net back = net_from_json(net_to_json(n));
    CHECK(validate(back).empty());
    CHECK(net_iso_eq(n, back));
    // identical serialization, not just isomorphic
    CHECK(net_to_json(back) == net_to_json(n));
  }
  CHECK_THROWS_AS(net_from_json("{"), MalformedInput);
  CHECK_THROWS_AS(net_from_json("{\"nodes\":[]}"), MalformedInput);
  CHECK_THROWS_AS(
      net_from_json(
          R"({"nodes":[{"id":"a","ntype":"e"}],"links":[{"id":"l","kind":"zap","sources":[],"targets":["a"]}],"root":"","freeVars":[],"iboxes":{}})"),
      MalformedInput);
}

TEST_CASE("a structurally broken net parses and then fails validation") {
  // border violation: a box free variable under a weakening
  const char* bad = R"({
    "nodes": [{"id":"r","ntype":"m"},{"id":"ms","ntype":"m"},{"id":"x","ntype":"e"},
              {"id":"q","ntype":"e"},{"id":"y","ntype":"e"}],
    "links": [{"id":"d0","kind":"der","sources":[],"targets":["r","x"]},
              {"id":"d1","kind":"der","sources":[],"targets":["ms","q"]},
              {"id":"w1","kind":"weak","sources":[],"targets":["y"]},
              {"id":"b","kind":"bang","sources":["ms","x"],"targets":[]}],
    "root": "r",
    "freeVars": ["q","y"],
    "iboxes": {"b": ["d1","w1"]}
  })";
  Net n = net_from_json(bad);
  CHECK(has_violation(n, "box-border"));
}

TEST_CASE("dot export") {
  Net n = translate(wp("(\\x. x) y"));
  std::string dot = net_to_dot(n);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("subgraph cluster_") != std::string::npos);  // the argument box
  CHECK(dot.find("der") != std::string::npos);
  CHECK(dot.find("tensor") != std::string::npos);
  Net v = translate(parse_expr("x"));
  CHECK(net_to_dot(v).find("der") != std::string::npos);
}

TEST_CASE("multiplicities on nets") {
  Net n = translate(wp("(x x)[y<-z]"));
  CHECK(net_multiplicity(n, "x") == 2);
  CHECK(net_multiplicity(n, "y") == 0);
  CHECK(net_multiplicity(n, "z") == 1);
}

}  // TEST_SUITE
