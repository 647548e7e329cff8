#include <functional>

#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/net_io.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

ExprPtr wp(const char* s) { return well_name(parse_expr(s)); }

std::vector<std::string> fv_names(const Net& n) {
  std::vector<std::string> out;
  for (NodeIdx v : n.free_vars) out.push_back(n.nodes[v].id);
  return out;
}

}  // namespace

TEST_SUITE("translate") {

TEST_CASE("base cases") {
  Net n = translate(parse_expr("x"));
  CHECK(n.links.size() == 1);
  CHECK(fv_names(n) == std::vector<std::string>{"x"});

  // an extra weakened name shows up as a free weakening
  Net m = translate(parse_expr("x"), {"y"});
  CHECK(m.links.size() == 2);
  CHECK(fv_names(m) == std::vector<std::string>{"x", "y"});
  CHECK(free_weakening_names(m) == std::vector<std::string>{"y"});
  // already-present names receive nothing
  Net k = translate(parse_expr("x"), {"x"});
  CHECK(k.links.size() == 1);

  Net h = translate(parse_expr("[.]{x,y}"));
  CHECK(net_kind(h) == NetKind::ContextNet);
  CHECK(fv_names(h) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("images are deterministic") {
  auto t = wp("(\\x. x y) (z y)");
  CHECK(net_to_json(translate(t)) == net_to_json(translate(t)));
}

TEST_CASE("structurally equivalent terms share their net") {
  CHECK(net_iso_eq(translate(wp("(\\y. x)[x<-z]")), translate(wp("\\y. x[x<-z]"))));
  CHECK(net_iso_eq(translate(wp("(x w)[x<-z]")), translate(wp("x[x<-z] w"))));
  CHECK(net_iso_eq(translate(wp("q[y<-z][w<-v]")), translate(wp("q[w<-v][y<-z]"))));
}

TEST_CASE("well-naming is required") {
  CHECK_THROWS_AS(translate(parse_expr("\\x. \\x. x")), WellNamingViolation);
  CHECK_THROWS_AS(translate(wp("\\x. x"), {"x"}), WellNamingViolation);
}

TEST_CASE("images are valid, correct, and interface-exact") {
  const std::vector<std::vector<std::string>> deltas = {{}, {"w1"}};
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    for (const auto& d : deltas) {
      Net n = translate(t, d);
      CHECK(validate(n).empty());
      CHECK(is_correct(n));
      CHECK(net_kind(n) == NetKind::TermNet);
      auto want = free_vars(t);
      for (const auto& w : d)
        if (std::find(want.begin(), want.end(), w) == want.end()) want.push_back(w);
      std::sort(want.begin(), want.end());
      CHECK(fv_names(n) == want);
      for (const auto& x : free_vars(t)) CHECK(net_multiplicity(n, x) == multiplicity(t, x));
    }
    return true;
  });
}

TEST_CASE("contexts translate to context nets") {
  enumerate_terms({4, {"x", "y"}}, [&](const ExprPtr& t) {
    std::function<void(const Expr&, Path)> walk = [&](const Expr& e, Path pos) {
      auto dec = split_at(t, pos);
      Net n = translate(dec.context);
      CHECK(net_kind(n) == NetKind::ContextNet);
      CHECK(is_correct(n));
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
    return true;
  });
}

TEST_CASE("translation is compositional over plugging") {
  // net(C<e>) with weakening set G u (D \ cv C)  =  net(C) with G, filled
  // with net(e)
  long checked = 0;
  const std::vector<std::vector<std::string>> gammas = {{}, {"w1"}};
  enumerate_terms({5, {"x", "y"}}, [&](const ExprPtr& t) {
    std::function<void(const Expr&, Path)> walk = [&](const Expr& e, Path pos) {
      auto dec = split_at(t, pos);
      const Expr& hole = subterm_at(dec.context, pos);
      REQUIRE(hole.kind == ExprKind::Hole);
      auto cv = captured_vars(dec.context);
      for (const auto& gamma : gammas) {
        std::vector<std::string> pi = gamma;
        for (const auto& v : hole.hole_interface)
          if (!std::binary_search(cv.begin(), cv.end(), v)) pi.push_back(v);
        std::sort(pi.begin(), pi.end());
        pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
        Net whole = translate(t, pi);
        Net plugged = plug_net(translate(dec.context, gamma), translate(dec.sub));
        CHECK(net_iso_eq(whole, plugged));
        ++checked;
      }
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
    return checked < 3000;
  });
  CHECK(checked >= 3000);
}

}  // TEST_SUITE
