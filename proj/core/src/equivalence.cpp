#include "lsnet/equivalence.hpp"

#include <algorithm>
#include <deque>

#include "lsnet/net.hpp"
#include "lsnet/term_rewrite.hpp"
#include "lsnet/translate.hpp"

namespace lsnet {

namespace {

void neighbors_at(const ExprPtr& t, const Path& pos, const Expr& e, bool with_appr,
                  std::vector<ExprPtr>& out) {
  auto emit = [&](const ExprPtr& replacement) {
    out.push_back(replace_at(t, pos, replacement));
  };
  if (e.kind == ExprKind::Sub) {
    const Expr& body = *e.left;
    // (\y. t)[x<-s]  ->  \y. t[x<-s]
    if (body.kind == ExprKind::Abs && body.name != e.name &&
        !has_free_var(e.right, body.name))
      emit(mk_abs(body.name, mk_sub(body.left, e.name, e.right)));
    // (t u)[x<-s]  ->  t[x<-s] u
    if (body.kind == ExprKind::App && !has_free_var(body.right, e.name))
      emit(mk_app(mk_sub(body.left, e.name, e.right), body.right));
    // (t u)[x<-s]  ->  t (u[x<-s])     the deliberately absent axiom
    if (with_appr && body.kind == ExprKind::App && !has_free_var(body.left, e.name))
      emit(mk_app(body.left, mk_sub(body.right, e.name, e.right)));
    // t[x<-s][y<-u]  ->  t[y<-u][x<-s]
    if (body.kind == ExprKind::Sub && body.name != e.name &&
        !has_free_var(e.right, body.name) && !has_free_var(body.right, e.name))
      emit(mk_sub(mk_sub(body.left, e.name, e.right), body.name, body.right));
  }
  if (e.kind == ExprKind::Abs) {
    const Expr& body = *e.left;
    // \y. t[x<-s]  ->  (\y. t)[x<-s]
    if (body.kind == ExprKind::Sub && body.name != e.name &&
        !has_free_var(body.right, e.name))
      emit(mk_sub(mk_abs(e.name, body.left), body.name, body.right));
  }
  if (e.kind == ExprKind::App) {
    const Expr& fn = *e.left;
    // t[x<-s] u  ->  (t u)[x<-s]
    if (fn.kind == ExprKind::Sub && !has_free_var(e.right, fn.name))
      emit(mk_sub(mk_app(fn.left, e.right), fn.name, fn.right));
    // t (u[x<-s])  ->  (t u)[x<-s]
    if (with_appr && e.right->kind == ExprKind::Sub && !has_free_var(e.left, e.right->name))
      emit(mk_sub(mk_app(e.left, e.right->left), e.right->name, e.right->right));
  }
}

std::vector<ExprPtr> neighbors(const ExprPtr& t, bool with_appr) {
  std::vector<ExprPtr> out;
  Path cur;
  std::function<void(const Expr&)> go = [&](const Expr& e) {
    neighbors_at(t, cur, e, with_appr, out);
    switch (e.kind) {
      case ExprKind::Var:
      case ExprKind::Hole: return;
      case ExprKind::Abs:
        cur.push_back(0);
        go(*e.left);
        cur.pop_back();
        return;
      case ExprKind::App:
      case ExprKind::Sub:
        cur.push_back(0);
        go(*e.left);
        cur.back() = 1;
        go(*e.right);
        cur.pop_back();
        return;
    }
  };
  go(*t);
  // distinct results only, modulo alpha
  std::set<std::string> seen;
  std::vector<ExprPtr> uniq;
  for (auto& e : out)
    if (seen.insert(alpha_key(e)).second) uniq.push_back(e);
  return uniq;
}

}  // namespace

std::vector<ExprPtr> equiv_neighbors(const ExprPtr& t) { return neighbors(t, false); }
std::vector<ExprPtr> equiv_neighbors_appr(const ExprPtr& t) { return neighbors(t, true); }

EquivClosure equiv_closure(const ExprPtr& t, long bound, const NeighborFn& fn) {
  EquivClosure res;
  std::set<std::string> seen{alpha_key(t)};
  std::deque<ExprPtr> frontier{t};
  res.members.push_back(t);
  long used = 0;
  while (!frontier.empty()) {
    ExprPtr cur = frontier.front();
    frontier.pop_front();
    if (used++ >= bound) {
      res.complete = false;
      return res;
    }
    for (const auto& nb : fn(cur)) {
      if (seen.insert(alpha_key(nb)).second) {
        res.members.push_back(nb);
        frontier.push_back(nb);
      }
    }
  }
  return res;
}

bool equiv_oracle(const ExprPtr& t, const ExprPtr& s, long bound) {
  if (bound <= 0) {
    long n = expr_size(t);
    bound = n * n + 8;
  }
  std::string want = alpha_key(s);
  if (alpha_key(t) == want) return true;
  EquivClosure c = equiv_closure(t, bound);
  for (const auto& m : c.members)
    if (alpha_key(m) == want) return true;
  if (!c.complete)
    throw BoundExceeded("equivalence closure cut off after " + std::to_string(bound) +
                        " expansions");
  return false;
}

bool equiv_via_nets(const ExprPtr& t, const ExprPtr& s) {
  if (free_vars(t) != free_vars(s)) return false;
  ExprPtr tw = is_well_named(t) ? t : well_name(t);
  ExprPtr sw = is_well_named(s) ? s : well_name(s);
  return net_iso_eq(translate(tw), translate(sw));
}

namespace {

RewritingSystemModulo<ExprPtr> lsc_base(bool with_appr) {
  RewritingSystemModulo<ExprPtr> sys;
  sys.name = with_appr ? "lsc+right-application" : "lsc";
  sys.steps = [](const ExprPtr& t) {
    std::vector<std::pair<std::string, ExprPtr>> out;
    for (const auto& r : find_term_redexes(t))
      out.push_back({rule_name(r.kind), apply_term_redex(t, r)});
    return out;
  };
  sys.equiv_one = with_appr ? equiv_neighbors_appr : equiv_neighbors;
  NeighborFn fn = sys.equiv_one;
  sys.related = [fn](const ExprPtr& a, const ExprPtr& b) {
    long n = expr_size(a);
    std::string want = alpha_key(b);
    if (alpha_key(a) == want) return true;
    EquivClosure c = equiv_closure(a, 4 * n * n + 64, fn);
    for (const auto& m : c.members)
      if (alpha_key(m) == want) return true;
    if (!c.complete) throw BoundExceeded("reduct closure cut off");
    return false;
  };
  sys.show = print_expr;
  return sys;
}

}  // namespace

RewritingSystemModulo<ExprPtr> lsc_system() { return lsc_base(false); }
RewritingSystemModulo<ExprPtr> lsc_system_appr() { return lsc_base(true); }

RewritingSystemModulo<ExprPtr> lsc_system_identity() {
  RewritingSystemModulo<ExprPtr> sys = lsc_base(false);
  sys.name = "lsc/identity";
  sys.equiv_one = [](const ExprPtr&) { return std::vector<ExprPtr>{}; };
  sys.related = alpha_eq;
  return sys;
}

}  // namespace lsnet
