#include <functional>
#include <set>

#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/equivalence.hpp"
#include "lsnet/net_io.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/suite.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

ExprPtr wp(const char* s) { return well_name(parse_expr(s)); }

int count_kind(const Net& n, LinkKind k) {
  int c = 0;
  for (const auto& l : n.links) c += l.kind == k;
  return c;
}

}  // namespace

TEST_SUITE("readback") {

TEST_CASE("correction nets") {
  Net plain = correction_net(translate(parse_expr("x")));
  CHECK(plain.links.size() == 1);  // nothing to collapse

  Net c = correction_net(translate(wp("x[x<-y]")));
  CHECK(count_kind(c, LinkKind::Bang) == 0);
  CHECK(count_kind(c, LinkKind::Der) == 1);
  CHECK(count_kind(c, LinkKind::GenAx) == 1);
  for (const auto& l : c.links)
    if (l.kind == LinkKind::GenAx) {
      CHECK(c.nodes[l.sources[0]].id == "x");  // the collapsed box runs x to y
      REQUIRE(l.targets.size() == 1);
      CHECK(c.nodes[l.targets[0]].id == "y");
    }

  // nested boxes: only the outer box collapses into the genax
  Net nested = correction_net(translate(wp("q[x<-y[w<-z]]")));
  CHECK(count_kind(nested, LinkKind::Bang) == 0);
  CHECK(count_kind(nested, LinkKind::GenAx) == 1);
  CHECK(net_kind(nested) == NetKind::CorrectionNet);
}

TEST_CASE("correctness") {
  CHECK(is_correct(translate(parse_expr("x"))));
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    CHECK(is_correct(translate(t)));
    return true;
  });

  Net cyclic = net_from_json(kCyclicFixtureJson);
  CHECK(validate(cyclic).empty());
  auto rep = check_correctness(cyclic);
  CHECK_FALSE(rep.ok);
  CHECK(rep.clause == "acyclic");
  REQUIRE(rep.witness.size() >= 3);
  CHECK(rep.witness.front() == rep.witness.back());  // a closed cycle
}

TEST_CASE("linear skeleton") {
  auto single = linear_skeleton(translate(parse_expr("x")));
  CHECK(single.size() == 1);

  Net lam = translate(wp("\\x. x"));
  auto two = linear_skeleton(lam);
  REQUIRE(two.size() == 2);
  CHECK(two.back() == lam.nodes[lam.root].id);  // root comes last

  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    Net n = translate(t);
    auto order = linear_skeleton(n);
    CHECK(order.back() == n.nodes[n.root].id);
    return true;
  });
}

TEST_CASE("decomposition cases") {
  // a binder weakening is not free: the root abstraction applies instead
  auto c = decompose(translate(wp("\\x. y")));
  CHECK(c.tag == DecompositionCase::Tag::RootAbstraction);

  c = decompose(translate(wp("x[x<-y]")));
  CHECK(c.tag == DecompositionCase::Tag::FreeSubstitution);

  c = decompose(translate(wp("x y")));
  CHECK(c.tag == DecompositionCase::Tag::RootApplicationFreeArgument);

  // a free weakening wins over everything
  c = decompose(translate(wp("x y"), {"q"}));
  CHECK(c.tag == DecompositionCase::Tag::FreeWeakening);

  c = decompose(translate(parse_expr("x")));
  CHECK(c.tag == DecompositionCase::Tag::OneLinkDer);

  c = decompose(translate(parse_expr("[.]{x}")));
  CHECK(c.tag == DecompositionCase::Tag::OneLinkHole);
}

TEST_CASE("decomposition removals are subnets") {
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    Net n = translate(t, {"w1"});
    auto c = decompose(n);
    std::vector<LinkIdx> keep;
    std::set<LinkIdx> gone;
    switch (c.tag) {
      case DecompositionCase::Tag::FreeWeakening:
      case DecompositionCase::Tag::RootAbstraction: gone.insert(c.link); break;
      case DecompositionCase::Tag::FreeSubstitution:
        gone.insert(c.link);
        for (LinkIdx m : n.boxes[c.link]) gone.insert(m);
        break;
      case DecompositionCase::Tag::RootApplicationFreeArgument:
        gone.insert(c.link);
        gone.insert(c.bang);
        for (LinkIdx m : n.boxes[c.bang]) gone.insert(m);
        break;
      default: return true;
    }
    for (size_t l = 0; l < n.links.size(); ++l)
      if (!gone.count(static_cast<LinkIdx>(l))) keep.push_back(static_cast<LinkIdx>(l));
    CHECK(is_subnet(n, keep));
    return true;
  });
}

TEST_CASE("deterministic read back") {
  CHECK(print_expr(read_back(translate(parse_expr("x")))) == "x");
  CHECK(print_expr(read_back(translate(parse_expr("[.]{x,y}")))) == "[.]{x,y}");

  // the read back of an image is equivalent to the term
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    Net p = translate(t);
    auto rb = read_back_full(p);
    CHECK(rb.weakened.empty());
    CHECK(equiv_via_nets(rb.expr, t));
    CHECK(net_iso_eq(translate(rb.expr), p));
    return true;
  });

  // weakened names are collected and reproduce the net
  Net p = translate(wp("\\x. y"), {"w1", "w2"});
  auto rb = read_back_full(p);
  CHECK(rb.weakened == std::vector<std::string>{"w1", "w2"});
  CHECK(net_iso_eq(translate(rb.expr, rb.weakened), p));
}

TEST_CASE("all read backs") {
  auto all = read_back_all(translate(wp("(\\y. x)[x<-z]")));
  REQUIRE(all.size() == 2);
  std::set<std::string> keys;
  for (const auto& e : all) keys.insert(alpha_key(e));
  CHECK(keys.count(alpha_key(parse_expr("(\\y. x)[x<-z]"))));
  CHECK(keys.count(alpha_key(parse_expr("\\y. x[x<-z]"))));

  CHECK(read_back_all(translate(parse_expr("x"))).size() == 1);

  // the set of read backs is the equivalence class
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    auto cls = equiv_closure(t, 2000);
    REQUIRE(cls.complete);
    std::set<std::string> class_keys;
    for (const auto& m : cls.members) class_keys.insert(alpha_key(m));
    std::set<std::string> rb_keys;
    for (const auto& e : read_back_all(translate(t))) rb_keys.insert(alpha_key(e));
    CHECK(rb_keys == class_keys);
    return true;
  });
}

TEST_CASE("guided read back") {
  auto t = wp("(\\y. x)[x<-z]");
  Net p = translate(t);
  auto trace = guided_read_back(p, t);
  int occurrences = 0, substitutions = 0;
  for (auto role : trace.role) {
    occurrences += role == LinkRole::Occurrence;
    substitutions += role == LinkRole::Substitution;
  }
  CHECK(occurrences == 2);  // x and z
  CHECK(substitutions == 1);

  // the other class member is also a read back of the same net
  CHECK_NOTHROW(guided_read_back(p, wp("\\y. x[x<-z]")));
  // a different term is not
  CHECK_THROWS_AS(guided_read_back(p, wp("\\y. z[x<-z]")), NotAReadBack);
  CHECK_THROWS_AS(guided_read_back(p, wp("x")), NotAReadBack);
}

TEST_CASE("factorisation at a variable occurrence") {
  // identity case
  Net p = translate(parse_expr("x"));
  auto f = factor_at_var(p, parse_expr("x"), 0);
  CHECK(print_expr(f.context) == "[.]{x}");
  CHECK(net_iso_eq(plug_net(f.context_net, p), p));

  // x y, factored at x
  auto t = wp("x y");
  Net q = translate(t);
  LinkIdx der_x = -1;
  for (size_t l = 0; l < q.links.size(); ++l)
    if (q.links[l].kind == LinkKind::Der && q.nodes[q.links[l].targets[1]].id == "x")
      der_x = static_cast<LinkIdx>(l);
  REQUIRE(der_x >= 0);
  auto g = factor_at_var(q, t, der_x);
  CHECK(print_expr(g.context) == "[.]{x} y");
  CHECK(net_iso_eq(plug_net(g.context_net, translate(parse_expr("x"))), q));
  CHECK(print_expr(plug(g.context, parse_expr("x"))) == "x y");

  // sweep: every dereliction on a free variable factors cleanly
  long checked = 0;
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& u) {
    Net n = translate(u);
    for (size_t l = 0; l < n.links.size(); ++l) {
      if (n.links[l].kind != LinkKind::Der) continue;
      NodeIdx v = n.links[l].targets[1];
      if (!n.outgoing[v].empty()) continue;  // bound occurrence
      auto fr = factor_at_var(n, u, static_cast<LinkIdx>(l));
      CHECK(net_iso_eq(plug_net(fr.context_net, translate(mk_var(n.nodes[v].id))), n));
      CHECK(alpha_eq(plug(fr.context, mk_var(n.nodes[v].id)), u));
      CHECK_NOTHROW(guided_read_back(fr.context_net, fr.context));
      ++checked;
    }
    return checked < 400;
  });
  CHECK(checked >= 400);
}

}  // TEST_SUITE
