#include <algorithm>
#include <functional>

#include "doctest.h"
#include "lsnet/corpus.hpp"
#include "lsnet/expr.hpp"

using namespace lsnet;

TEST_SUITE("expr") {

TEST_CASE("free variables") {
  CHECK(free_vars(mk_var("x")) == std::vector<std::string>{"x"});
  auto t = mk_abs("x", mk_app(mk_var("x"), mk_var("y")));
  CHECK(free_vars(t) == std::vector<std::string>{"y"});
  // fv(y[x<-z]) unfolds to {y, z}
  auto s = mk_sub(mk_var("y"), "x", mk_var("z"));
  CHECK(free_vars(s) == std::vector<std::string>{"y", "z"});
  // hole interfaces contribute their names
  CHECK(free_vars(mk_hole({"b", "a"})) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(mk_app(mk_var("x"), mk_var("x")), "x") == 2);
  CHECK(multiplicity(mk_abs("x", mk_var("x")), "x") == 0);
  // counting through both sides of a substitution
  CHECK(multiplicity(mk_sub(mk_var("y"), "x", mk_var("y")), "y") == 2);
  CHECK(multiplicity(parse_expr("(x x)[x<-y]"), "x") == 0);  // bound now
}

TEST_CASE("captured variables") {
  CHECK(captured_vars(mk_hole({"x"})).empty());
  CHECK(captured_vars(mk_abs("x", mk_hole({"x", "y"}))) == std::vector<std::string>{"x"});
  // walking the table: the substitution binder captures over its body only
  auto c = mk_app(mk_var("z"), mk_sub(mk_hole({"x"}), "x", mk_var("y")));
  CHECK(captured_vars(c) == std::vector<std::string>{"x"});
  auto d = mk_app(mk_var("z"), mk_sub(mk_var("x"), "x", mk_hole({"q"})));
  CHECK(captured_vars(d).empty());
}

TEST_CASE("plugging") {
  CHECK(print_expr(plug(mk_hole({"x"}), mk_var("x"))) == "x");
  // plugging captures: \x. ((y [.]{x,y})[z<-x]) filled with x x
  auto ctx = mk_abs("x", mk_sub(mk_app(mk_var("y"), mk_hole({"x", "y"})), "z", mk_var("x")));
  auto filled = plug(ctx, mk_app(mk_var("x"), mk_var("x")));
  CHECK(print_expr(filled) == "\\x. (y (x x))[z<-x]");
  CHECK_THROWS_AS(plug(mk_hole({"x"}), mk_var("y")), InterfaceViolation);
  CHECK_THROWS_AS(plug(mk_var("x"), mk_var("y")), std::invalid_argument);
}

TEST_CASE("split and plug are inverse; free variables stay bounded") {
  auto corpus = enumerate_terms_vec({4, {"x", "y"}});
  int checked = 0;
  for (const auto& t : corpus) {
    std::function<void(const Expr&, Path)> walk = [&](const Expr& e, Path pos) {
      auto dec = split_at(t, pos);
      auto cv = captured_vars(dec.context);
      auto back = plug(dec.context, dec.sub);
      CHECK(print_expr(back) == print_expr(t));
      auto fv_c = free_vars(dec.context);
      auto fv_e = free_vars(dec.sub);
      for (const auto& v : free_vars(back)) {
        bool in_c = std::binary_search(fv_c.begin(), fv_c.end(), v);
        bool in_e = std::binary_search(fv_e.begin(), fv_e.end(), v) &&
                    !std::binary_search(cv.begin(), cv.end(), v);
        CHECK((in_c || in_e));
      }
      ++checked;
      if (e.kind == ExprKind::Abs) {
        Path p = pos;
        p.push_back(0);
        walk(*e.left, p);
      }
      if (e.kind == ExprKind::App || e.kind == ExprKind::Sub) {
        Path p0 = pos;
        p0.push_back(0);
        walk(*e.left, p0);
        Path p1 = pos;
        p1.push_back(1);
        walk(*e.right, p1);
      }
    };
    walk(*t, {});
  }
  CHECK(checked > 250);
}

TEST_CASE("well naming") {
  auto t = parse_expr("\\x. \\x. x");
  auto w = well_name(t);
  CHECK(is_well_named(w));
  CHECK(alpha_eq(w, t));
  CHECK(print_expr(w) != print_expr(t));  // the inner binder was renamed
  CHECK(print_expr(well_name(mk_var("x"))) == "x");
  auto u = well_name(parse_expr("(\\x. x) (\\x. x)"));
  CHECK(is_well_named(u));
  CHECK(alpha_eq(u, parse_expr("(\\x. x) (\\y. y)")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_expr("\\x. x"), parse_expr("\\y. y")));
  CHECK_FALSE(alpha_eq(parse_expr("\\x. y"), parse_expr("\\x. z")));
  CHECK(alpha_eq(parse_expr("x[x<-y]"), parse_expr("q[q<-y]")));
  CHECK_FALSE(alpha_eq(parse_expr("x y"), parse_expr("y x")));
  // hole interfaces follow the binder renaming
  CHECK(alpha_eq(parse_expr("\\x. [.]{x}"), parse_expr("\\y. [.]{y}")));
  CHECK_FALSE(alpha_eq(parse_expr("\\x. [.]{x}"), parse_expr("\\y. [.]{z}")));
}

TEST_CASE("parsing") {
  auto t = parse_expr("(\\x. x x) y");
  REQUIRE(t->kind == ExprKind::App);
  CHECK(t->left->kind == ExprKind::Abs);
  CHECK(print_expr(t) == "(\\x. x x) y");

  auto s = parse_expr("x[x<-y]");
  REQUIRE(s->kind == ExprKind::Sub);
  CHECK(s->name == "x");

  auto h = parse_expr("[.]{x,y}");
  REQUIRE(h->kind == ExprKind::Hole);
  CHECK(h->hole_interface == std::vector<std::string>{"x", "y"});

  // substitution binds tighter than application
  auto a = parse_expr("x y[a<-b]");
  REQUIRE(a->kind == ExprKind::App);
  CHECK(a->right->kind == ExprKind::Sub);
  // and groups left to right
  auto b = parse_expr("x[a<-b][c<-d]");
  REQUIRE(b->kind == ExprKind::Sub);
  CHECK(b->name == "c");

  CHECK(print_expr(parse_expr("λx. x")) == "\\x. x");
  CHECK_THROWS_AS(parse_expr("(\\x. x"), ParseError);
  CHECK_THROWS_AS(parse_expr("x ["), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  try {
    parse_expr("x [y<-");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos > 0);
  }
}

TEST_CASE("print parse round trip") {
  auto corpus = enumerate_terms_vec({5, {"x", "y", "z"}});
  for (const auto& t : corpus) {
    auto printed = print_expr(t);
    CHECK(print_expr(parse_expr(printed)) == printed);
  }
  for (const char* src : {"[.]{}", "\\x. [.]{x} x", "([.]{a,b} y)[q<-z]"}) {
    auto once = print_expr(parse_expr(src));
    CHECK(print_expr(parse_expr(once)) == once);
  }
}

TEST_CASE("corpus terms are well-named") {
  int n = 0;
  enumerate_terms({5, {"x", "y", "z"}}, [&](const ExprPtr& t) {
    CHECK(is_well_named(t));
    return ++n < 1000;
  });
  CHECK(n > 500);
}

}  // TEST_SUITE
