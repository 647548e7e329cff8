#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/net_rewrite.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

ExprPtr wp(const char* s) { return well_name(parse_expr(s)); }

int count_kind(const std::vector<NetRedex>& rs, RuleKind k) {
  int n = 0;
  for (const auto& r : rs) n += r.kind == k;
  return n;
}

// applies the unique redex of the given kind
Net step_once(const Net& n, RuleKind k) {
  auto rs = find_net_redexes(n);
  for (const auto& r : rs)
    if (r.kind == k) return apply_net_redex(n, r);
  REQUIRE(false);
  return n;
}

}  // namespace

TEST_SUITE("net_rewrite") {

TEST_CASE("cut enumeration") {
  auto rs = find_net_redexes(translate(wp("(\\x. x) y")));
  CHECK(rs.size() == 1);
  CHECK(count_kind(rs, RuleKind::M) == 1);

  rs = find_net_redexes(translate(wp("(x x)[x<-y]")));
  CHECK(rs.size() == 2);
  CHECK(count_kind(rs, RuleKind::E) == 2);

  rs = find_net_redexes(translate(wp("z[x<-y]")));
  CHECK(rs.size() == 1);
  CHECK(count_kind(rs, RuleKind::Gc) == 1);

  // an argument box is not a cut
  CHECK(find_net_redexes(translate(wp("x y"))).empty());
  // a substitution under an abstraction variable is not an m-cut
  CHECK(find_net_redexes(translate(wp("\\x. x"))).empty());
}

TEST_CASE("multiplicative step") {
  Net q = step_once(translate(wp("(\\x. x) y")), RuleKind::M);
  CHECK(validate(q).empty());
  CHECK(net_iso_eq(q, translate(wp("x[x<-y]"))));

  // the binder weakening persists through the step
  q = step_once(translate(wp("(\\x. z) y")), RuleKind::M);
  CHECK(net_iso_eq(q, translate(wp("z[x<-y]"))));

  // at a distance: the cut fires through the substitution stack
  q = step_once(translate(wp("(\\x. x)[z<-w] y")), RuleKind::M);
  CHECK(net_iso_eq(q, translate(wp("x[x<-y][z<-w]"))));
}

TEST_CASE("garbage collection step") {
  // the erased box leaves a weakening on its free variable
  Net q = step_once(translate(wp("z[x<-y]")), RuleKind::Gc);
  CHECK(validate(q).empty());
  CHECK(net_iso_eq(q, translate(parse_expr("z"), {"y"})));

  // ... unless that variable still has a use: removal on the fly
  q = step_once(translate(wp("z[x<-z]")), RuleKind::Gc);
  CHECK(net_iso_eq(q, translate(parse_expr("z"))));

  // a closed box erases without a trace
  q = step_once(translate(wp("z[x<-\\w. w]")), RuleKind::Gc);
  CHECK(net_iso_eq(q, translate(parse_expr("z"))));

  // the new weakening lands at the binder of the erased variable
  q = step_once(translate(wp("\\y. z[x<-y]")), RuleKind::Gc);
  CHECK(validate(q).empty());
  CHECK(net_iso_eq(q, translate(wp("\\y. z"))));
}

TEST_CASE("exponential step") {
  // the lone occurrence is replaced and the variable is weakened
  Net q = step_once(translate(wp("x[x<-y]")), RuleKind::E);
  CHECK(validate(q).empty());
  CHECK(net_iso_eq(q, translate(wp("y[x<-y]"))));

  // with two occurrences the leftmost dereliction is one of the two cuts
  Net p = translate(wp("(x x)[x<-y]"));
  auto rs = find_net_redexes(p);
  REQUIRE(rs.size() == 2);
  bool saw_expected = false;
  for (const auto& r : rs) {
    Net next = apply_net_redex(p, r);
    CHECK(validate(next).empty());
    if (net_iso_eq(next, translate(wp("(y x)[x<-y]")))) saw_expected = true;
  }
  CHECK(saw_expected);

  // the redex crosses box borders: the dereliction lives inside the argument
  // box while the bang sits outside
  auto t = wp("(w (x z))[x<-y]");
  Net across = translate(t);
  auto rs2 = find_net_redexes(across);
  REQUIRE(count_kind(rs2, RuleKind::E) == 1);
  for (const auto& r : rs2)
    if (r.kind == RuleKind::E) {
      Net next = apply_net_redex(across, r);
      CHECK(validate(next).empty());
      CHECK(net_iso_eq(next, translate(wp("(w (y z))[x<-y]"))));
    }

  // and through a substitution box
  t = wp("q[w<-x][x<-y]");
  Net through = translate(t);
  for (const auto& r : find_net_redexes(through))
    if (r.kind == RuleKind::E) {
      Net next = apply_net_redex(through, r);
      CHECK(validate(next).empty());
      CHECK(net_iso_eq(next, translate(wp("q[w<-y][x<-y]"))));
    }

  // a copied box keeps its own boxes: definition with a nested box
  t = wp("x[x<-y[w<-z]]");
  Net nested = translate(t);
  for (const auto& r : find_net_redexes(nested))
    if (r.kind == RuleKind::E) {
      Net next = apply_net_redex(nested, r);
      CHECK(validate(next).empty());
      auto term_next = wp("(y[w<-z])[x<-y[w<-z]]");
      CHECK(net_iso_eq(next, translate(term_next)));
    }
}

TEST_CASE("stale redexes are rejected") {
  Net p = translate(wp("x[x<-y]"));
  auto rs = find_net_redexes(p);
  REQUIRE(rs.size() == 1);
  Net other = translate(wp("(\\x. x) y"));
  CHECK_THROWS_AS(apply_net_redex(other, rs[0]), StaleRedex);
}

TEST_CASE("redex bijection") {
  auto t = wp("(\\x. x) y");
  auto bij = redex_bijection(translate(t), t);
  REQUIRE(bij.pairs.size() == 1);
  CHECK(bij.pairs[0].term.kind == RuleKind::M);
  CHECK(bij.pairs[0].net.kind == RuleKind::M);

  t = wp("(x x)[x<-y]");
  bij = redex_bijection(translate(t), t);
  REQUIRE(bij.pairs.size() == 2);
  CHECK(bij.pairs[0].term.occ != bij.pairs[1].term.occ);
  CHECK(bij.pairs[0].net.a != bij.pairs[1].net.a);  // distinct derelictions

  // counts per kind agree over the corpus
  enumerate_terms({6, {"x", "y"}}, [&](const ExprPtr& u) {
    Net p = translate(u);
    auto b = redex_bijection(p, u);
    CHECK(b.pairs.size() == find_term_redexes(u).size());
    CHECK(b.pairs.size() == find_net_redexes(p).size());
    for (const auto& pr : b.pairs) CHECK(pr.term.kind == pr.net.kind);
    return true;
  });
}

TEST_CASE("both squares close on a small corpus") {
  long squares = 0;
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    Net p = translate(t);
    for (const auto& pr : redex_bijection(p, t).pairs) {
      ExprPtr s = apply_term_redex(t, pr.term);
      Net q = apply_net_redex(p, pr.net);
      CHECK(validate(q).empty());
      CHECK(is_correct(q));
      CHECK(net_iso_eq(q, translate(s, free_weakening_names(q))));
      ++squares;
    }
    return true;
  });
  CHECK(squares > 250);
}

TEST_CASE("net normalization matches term normalization") {
  auto t = wp("(\\x. x x) (\\y. y)");
  auto res = normalize_net(translate(t), 1000);
  CHECK(res.reached_normal_form);
  CHECK(net_iso_eq(res.net, translate(parse_expr("\\y. y"))));

  // erasable divergence: the unused argument box is collected, not copied
  t = wp("(\\q. z) ((\\x. x x) (\\x. x x))");
  res = normalize_net(translate(t), 50);
  CHECK(res.reached_normal_form);
  CHECK(net_iso_eq(res.net, translate(parse_expr("z"))));
}

}  // TEST_SUITE
