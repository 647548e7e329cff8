#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/term_rewrite.hpp"

using namespace lsnet;

namespace {

ExprPtr wp(const char* s) { return well_name(parse_expr(s)); }

int count_kind(const std::vector<TermRedex>& rs, RuleKind k) {
  int n = 0;
  for (const auto& r : rs)
    if (r.kind == k) ++n;
  return n;
}

}  // namespace

TEST_SUITE("term_rewrite") {

TEST_CASE("redex enumeration") {
  auto rs = find_term_redexes(wp("(\\x. x) y"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == RuleKind::M);

  rs = find_term_redexes(wp("(x x)[x<-y]"));
  REQUIRE(rs.size() == 2);
  CHECK(count_kind(rs, RuleKind::E) == 2);
  CHECK(rs[0].occ < rs[1].occ);  // leftmost occurrence first

  rs = find_term_redexes(wp("z[x<-y]"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == RuleKind::Gc);

  // the rule fires through a stack of substitutions
  rs = find_term_redexes(wp("(\\x. x)[z<-w] y"));
  CHECK(count_kind(rs, RuleKind::M) == 1);
}

TEST_CASE("steps") {
  auto t = wp("(\\x. x) y");
  auto rs = find_term_redexes(t);
  CHECK(print_expr(apply_term_redex(t, rs[0])) == "x[x<-y]");

  t = wp("(x x)[x<-y]");
  rs = find_term_redexes(t);
  CHECK(print_expr(apply_term_redex(t, rs[0])) == "(y x)[x<-y]");
  CHECK(print_expr(apply_term_redex(t, rs[1])) == "(x y)[x<-y]");

  // multiplicative step under a substitution stack
  t = wp("(\\x. x)[z<-w] y");
  rs = find_term_redexes(t);
  REQUIRE(rs.size() >= 1);
  CHECK(print_expr(apply_term_redex(t, rs[0])) == "x[x<-y][z<-w]");

  // stale redexes are rejected
  auto stale = find_term_redexes(wp("(\\x. x) y"))[0];
  CHECK_THROWS_AS(apply_term_redex(wp("z[x<-y]"), stale), StaleRedex);
}

TEST_CASE("e-steps freshen the copied definition") {
  auto t = wp("(x x)[x<-\\y. y]");
  auto rs = find_term_redexes(t);
  auto u = apply_term_redex(t, rs[0]);
  CHECK(is_well_named(u));
  // the substitution survives the step
  CHECK(u->kind == ExprKind::Sub);
  CHECK(multiplicity(u->left, "x") == 1);
}

TEST_CASE("normalization") {
  auto res = normalize(wp("(\\x. x) y"), Strategy::LeftmostOutermost, 100);
  CHECK(res.reached_normal_form);
  CHECK(print_expr(res.term) == "y");
  CHECK(res.steps_m == 1);
  CHECK(res.steps_e == 1);
  CHECK(res.steps_gc == 1);

  res = normalize(wp("y"), Strategy::LeftmostOutermost, 100);
  CHECK(res.reached_normal_form);
  CHECK(res.total_steps() == 0);

  res = normalize(wp("(\\x. x x) (\\x. x x)"), Strategy::LeftmostOutermost, 20);
  CHECK_FALSE(res.reached_normal_form);
  CHECK(res.term != nullptr);  // carries the last term

  // gc-eager prefers collection but reaches the same normal form
  auto a = normalize(wp("(\\x. z) ((\\w. w) v)"), Strategy::GcEager, 100);
  auto b = normalize(wp("(\\x. z) ((\\w. w) v)"), Strategy::LeftmostOutermost, 100);
  CHECK(a.reached_normal_form);
  CHECK(b.reached_normal_form);
  CHECK(alpha_eq(a.term, b.term));

  // every reduction order agrees at small size
  auto c = normalize(wp("(\\x. x x) (\\y. y)"), Strategy::ExhaustiveEnumeration, 10000);
  CHECK(c.reached_normal_form);
  CHECK(alpha_eq(c.term, parse_expr("\\y. y")));
}

TEST_CASE("unfolding") {
  CHECK(print_expr(unfold(wp("x[x<-y]"))) == "y");
  CHECK(print_expr(unfold(wp("(x x)[x<-\\y. y]"))) == "(\\y. y) (\\y. y)");
  CHECK(print_expr(unfold(wp("z[x<-y]"))) == "z");
  CHECK(is_pure_lambda(unfold(wp("(x x)[x<-\\y. y]"))));
}

TEST_CASE("meta substitution avoids capture") {
  // (\y. x){x := y} must rename the binder
  auto e = mk_abs("y", mk_var("x"));
  auto r = meta_subst(e, "x", mk_var("y"));
  REQUIRE(r->kind == ExprKind::Abs);
  CHECK(r->name != "y");
  CHECK(r->left->name == "y");
}

TEST_CASE("beta oracle") {
  auto res = beta_normalize(parse_expr("(\\x. x) y"), 10);
  CHECK(res.reached_normal_form);
  CHECK(print_expr(res.term) == "y");

  // church arithmetic: 2 + 2 = 4
  auto sum = parse_expr(
      "(\\m. \\n. \\f. \\x. m f (n f x)) (\\f. \\x. f (f x)) (\\f. \\x. f (f x))");
  res = beta_normalize(sum, 100);
  CHECK(res.reached_normal_form);
  CHECK(alpha_eq(res.term, parse_expr("\\f. \\x. f (f (f (f x)))")));

  res = beta_normalize(parse_expr("\\x. x"), 10);
  CHECK(res.reached_normal_form);
  CHECK(res.total_steps() == 0);

  CHECK_THROWS_AS(beta_normalize(wp("x[x<-y]"), 10), std::invalid_argument);
}

TEST_CASE("enumeration is sound on the corpus") {
  long redexes = 0;
  enumerate_terms({6, {"x", "y", "z"}}, [&](const ExprPtr& t) {
    for (const auto& r : find_term_redexes(t)) {
      auto u = apply_term_redex(t, r);  // must not be stale
      CHECK(is_well_named(u));
      ++redexes;
    }
    // e-redex count per substitution equals the multiplicity; gc exactly when zero
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
      if (e.kind == ExprKind::Sub) {
        int mult = multiplicity(e.left, e.name);
        auto rs = find_term_redexes(std::make_shared<Expr>(e));
        int es = 0, gcs = 0;
        for (const auto& r : rs)
          if (r.at.empty()) {
            es += r.kind == RuleKind::E;
            gcs += r.kind == RuleKind::Gc;
          }
        CHECK(es == mult);
        CHECK(gcs == (mult == 0 ? 1 : 0));
      }
      if (e.left) walk(*e.left);
      if (e.right) walk(*e.right);
    };
    walk(*t);
    return true;
  });
  CHECK(redexes > 3000);
}

TEST_CASE("full normal forms agree with the oracle") {
  const char* terms[] = {
      "(\\x. x) (\\y. y)",
      "(\\x. x x) (\\y. y)",
      "(\\f. f (f z)) (\\w. w)",
      "(\\x. \\y. x) a b",
      "(\\x. z) ((\\y. y) w)",
  };
  for (const char* src : terms) {
    auto t = wp(src);
    auto lsc = normalize(t, Strategy::LeftmostOutermost, 1000);
    REQUIRE(lsc.reached_normal_form);
    auto beta = beta_normalize(unfold(t), 1000);
    REQUIRE(beta.reached_normal_form);
    CHECK(alpha_eq(unfold(lsc.term), beta.term));
    CHECK(is_pure_lambda(lsc.term));  // no substitutions survive
  }
}

}  // TEST_SUITE
