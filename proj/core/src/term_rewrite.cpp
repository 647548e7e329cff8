#include "lsnet/term_rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace lsnet {

const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::M: return "m";
    case RuleKind::E: return "e";
    case RuleKind::Gc: return "gc";
  }
  return "?";
}

namespace {

// walks the substitution spine of an application's function part:
// returns the abstraction at the bottom, if any
const Expr* spine_abstraction(const Expr& f) {
  const Expr* cur = &f;
  while (cur->kind == ExprKind::Sub) cur = cur->left.get();
  return cur->kind == ExprKind::Abs ? cur : nullptr;
}

}  // namespace

std::vector<TermRedex> find_term_redexes(const ExprPtr& t) {
  std::vector<TermRedex> out;
  Path cur;
  std::function<void(const Expr&)> go = [&](const Expr& e) {
    switch (e.kind) {
      case ExprKind::Var:
      case ExprKind::Hole: return;
      case ExprKind::Abs:
        cur.push_back(0);
        go(*e.left);
        cur.pop_back();
        return;
      case ExprKind::App: {
        if (const Expr* lam = spine_abstraction(*e.left))
          out.push_back({RuleKind::M, cur, {}, lam->name});
        cur.push_back(0);
        go(*e.left);
        cur.back() = 1;
        go(*e.right);
        cur.pop_back();
        return;
      }
      case ExprKind::Sub: {
        auto body = e.left;
        auto occs = occurrences(body, e.name);
        if (occs.empty()) {
          out.push_back({RuleKind::Gc, cur, {}, e.name});
        } else {
          for (auto& o : occs) {
            Path abs = cur;
            abs.push_back(0);
            abs.insert(abs.end(), o.begin(), o.end());
            out.push_back({RuleKind::E, cur, std::move(abs), e.name});
          }
        }
        cur.push_back(0);
        go(*e.left);
        cur.back() = 1;
        go(*e.right);
        cur.pop_back();
        return;
      }
    }
  };
  go(*t);
  std::sort(out.begin(), out.end(), [](const TermRedex& a, const TermRedex& b) {
    if (a.at != b.at) return a.at < b.at;
    return a.occ < b.occ;
  });
  return out;
}

namespace {

// rebuilds L<\x.t> s  as  L<t[x<-s]>
ExprPtr fire_m(const Expr& app) {
  std::function<ExprPtr(const Expr&)> down = [&](const Expr& f) -> ExprPtr {
    if (f.kind == ExprKind::Sub) return mk_sub(down(*f.left), f.name, f.right);
    if (f.kind == ExprKind::Abs)
      return mk_sub(f.left, f.name, ExprPtr(nullptr));  // definition patched by caller
    throw StaleRedex("m-redex: function part is not an abstraction under substitutions");
  };
  // patch the innermost definition with the argument
  std::function<ExprPtr(const Expr&, const ExprPtr&)> build = [&](const Expr& f,
                                                                  const ExprPtr& arg) -> ExprPtr {
    if (f.kind == ExprKind::Sub) return mk_sub(build(*f.left, arg), f.name, f.right);
    if (f.kind == ExprKind::Abs) return mk_sub(f.left, f.name, arg);
    throw StaleRedex("m-redex: function part is not an abstraction under substitutions");
  };
  return build(*app.left, app.right);
}

ExprPtr freshen_bound(const ExprPtr& e, NameGen& gen) {
  std::function<ExprPtr(const Expr&, std::map<std::string, std::string>&)> go =
      [&](const Expr& n, std::map<std::string, std::string>& env) -> ExprPtr {
    switch (n.kind) {
      case ExprKind::Var: {
        auto it = env.find(n.name);
        return mk_var(it == env.end() ? n.name : it->second);
      }
      case ExprKind::Hole: {
        std::vector<std::string> iface;
        for (const auto& v : n.hole_interface) {
          auto it = env.find(v);
          iface.push_back(it == env.end() ? v : it->second);
        }
        return mk_hole(std::move(iface));
      }
      case ExprKind::Abs: {
        std::string nb = gen.fresh(n.name);
        auto save = env;
        env[n.name] = nb;
        auto body = go(*n.left, env);
        env = save;
        return mk_abs(nb, body);
      }
      case ExprKind::App: {
        auto l = go(*n.left, env);
        auto r = go(*n.right, env);
        return mk_app(l, r);
      }
      case ExprKind::Sub: {
        auto def = go(*n.right, env);
        std::string nb = gen.fresh(n.name);
        auto save = env;
        env[n.name] = nb;
        auto body = go(*n.left, env);
        env = save;
        return mk_sub(body, nb, def);
      }
    }
    throw std::logic_error("freshen_bound: bad kind");
  };
  std::map<std::string, std::string> env;
  return go(*e, env);
}

std::vector<std::string> all_names(const ExprPtr& e) {
  auto names = free_vars(e);
  auto bs = bound_names(e);
  names.insert(names.end(), bs.begin(), bs.end());
  return names;
}

}  // namespace

ExprPtr apply_term_redex(const ExprPtr& t, const TermRedex& r) {
  const Expr& anchor = subterm_at(t, r.at);
  switch (r.kind) {
    case RuleKind::M: {
      if (anchor.kind != ExprKind::App) throw StaleRedex("m-redex: anchor is not an application");
      return replace_at(t, r.at, fire_m(anchor));
    }
    case RuleKind::E: {
      if (anchor.kind != ExprKind::Sub || anchor.name != r.binder)
        throw StaleRedex("e-redex: anchor is not the expected substitution");
      if (r.occ.size() <= r.at.size()) throw StaleRedex("e-redex: bad occurrence path");
      const Expr& occ = subterm_at(t, r.occ);
      if (occ.kind != ExprKind::Var || occ.name != r.binder)
        throw StaleRedex("e-redex: occurrence does not match the binder");
      NameGen gen(all_names(t));
      ExprPtr copy = freshen_bound(anchor.right, gen);
      return replace_at(t, r.occ, copy);
    }
    case RuleKind::Gc: {
      if (anchor.kind != ExprKind::Sub || anchor.name != r.binder)
        throw StaleRedex("gc-redex: anchor is not the expected substitution");
      if (multiplicity(anchor.left, r.binder) != 0)
        throw StaleRedex("gc-redex: binder still occurs");
      return replace_at(t, r.at, anchor.left);
    }
  }
  throw std::logic_error("apply_term_redex: bad kind");
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "leftmost-outermost" || name == "leftmost" || name == "lo")
    return Strategy::LeftmostOutermost;
  if (name == "gc-eager" || name == "gc") return Strategy::GcEager;
  if (name == "exhaustive-enumeration" || name == "exhaustive")
    return Strategy::ExhaustiveEnumeration;
  return std::nullopt;
}

namespace {

NormalizeResult normalize_deterministic(const ExprPtr& t, Strategy s, long fuel,
                                        const StepObserver& observer) {
  NormalizeResult res;
  res.term = t;
  for (long step = 0; step < fuel; ++step) {
    auto redexes = find_term_redexes(res.term);
    if (redexes.empty()) {
      res.reached_normal_form = true;
      return res;
    }
    const TermRedex* pick = &redexes.front();
    if (s == Strategy::GcEager) {
      for (const auto& r : redexes)
        if (r.kind == RuleKind::Gc) {
          pick = &r;
          break;
        }
    }
    res.term = apply_term_redex(res.term, *pick);
    switch (pick->kind) {
      case RuleKind::M: ++res.steps_m; break;
      case RuleKind::E: ++res.steps_e; break;
      case RuleKind::Gc: ++res.steps_gc; break;
    }
    if (observer) observer(res.total_steps(), *pick, res.term);
  }
  res.reached_normal_form = find_term_redexes(res.term).empty();
  return res;
}

NormalizeResult normalize_exhaustive(const ExprPtr& t, long fuel) {
  NormalizeResult res;
  res.term = t;
  std::set<std::string> seen;
  std::deque<ExprPtr> frontier{t};
  seen.insert(alpha_key(t));
  std::vector<ExprPtr> normals;
  long expanded = 0;
  while (!frontier.empty()) {
    if (expanded++ >= fuel) return res;  // not finished
    ExprPtr cur = frontier.front();
    frontier.pop_front();
    auto redexes = find_term_redexes(cur);
    if (redexes.empty()) {
      normals.push_back(cur);
      continue;
    }
    for (const auto& r : redexes) {
      ExprPtr next = apply_term_redex(cur, r);
      if (seen.insert(alpha_key(next)).second) frontier.push_back(next);
    }
  }
  for (size_t i = 1; i < normals.size(); ++i)
    if (!alpha_eq(normals[0], normals[i]))
      throw std::logic_error("exhaustive normalization found distinct normal forms");
  if (!normals.empty()) {
    res.term = normals.front();
    res.reached_normal_form = true;
  }
  return res;
}

}  // namespace

NormalizeResult normalize(const ExprPtr& t, Strategy s, long fuel, const StepObserver& observer) {
  if (s == Strategy::ExhaustiveEnumeration) return normalize_exhaustive(t, fuel);
  return normalize_deterministic(t, s, fuel, observer);
}

bool is_pure_lambda(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: return true;
    case ExprKind::Hole:
    case ExprKind::Sub: return false;
    case ExprKind::Abs: return is_pure_lambda(e->left);
    case ExprKind::App: return is_pure_lambda(e->left) && is_pure_lambda(e->right);
  }
  return false;
}

namespace {

ExprPtr subst_rec(const ExprPtr& e, const std::string& x, const ExprPtr& v,
                  const std::vector<std::string>& fv_v, NameGen& gen) {
  switch (e->kind) {
    case ExprKind::Var: return e->name == x ? v : e;
    case ExprKind::Hole: return e;
    case ExprKind::Abs: {
      if (e->name == x) return e;
      if (std::binary_search(fv_v.begin(), fv_v.end(), e->name)) {
        std::string nb = gen.fresh(e->name);
        auto body = meta_subst(e->left, e->name, mk_var(nb));
        return mk_abs(nb, subst_rec(body, x, v, fv_v, gen));
      }
      return mk_abs(e->name, subst_rec(e->left, x, v, fv_v, gen));
    }
    case ExprKind::App:
      return mk_app(subst_rec(e->left, x, v, fv_v, gen), subst_rec(e->right, x, v, fv_v, gen));
    case ExprKind::Sub: {
      auto def = subst_rec(e->right, x, v, fv_v, gen);
      if (e->name == x) return mk_sub(e->left, e->name, def);
      if (std::binary_search(fv_v.begin(), fv_v.end(), e->name)) {
        std::string nb = gen.fresh(e->name);
        auto body = meta_subst(e->left, e->name, mk_var(nb));
        return mk_sub(subst_rec(body, x, v, fv_v, gen), nb, def);
      }
      return mk_sub(subst_rec(e->left, x, v, fv_v, gen), e->name, def);
    }
  }
  throw std::logic_error("subst_rec: bad kind");
}

}  // namespace

ExprPtr meta_subst(const ExprPtr& e, const std::string& x, const ExprPtr& v) {
  if (!has_free_var(e, x)) return e;
  auto fv_v = free_vars(v);
  std::vector<std::string> used = all_names(e);
  auto more = all_names(v);
  used.insert(used.end(), more.begin(), more.end());
  NameGen gen(used);
  return subst_rec(e, x, v, fv_v, gen);
}

ExprPtr unfold(const ExprPtr& t) {
  switch (t->kind) {
    case ExprKind::Var:
    case ExprKind::Hole: return t;
    case ExprKind::Abs: return mk_abs(t->name, unfold(t->left));
    case ExprKind::App: return mk_app(unfold(t->left), unfold(t->right));
    case ExprKind::Sub: {
      auto body = unfold(t->left);
      auto def = unfold(t->right);
      return meta_subst(body, t->name, def);
    }
  }
  throw std::logic_error("unfold: bad kind");
}

namespace {

// leftmost-outermost beta redex position, if any
std::optional<Path> find_beta_redex(const ExprPtr& t) {
  std::optional<Path> found;
  Path cur;
  std::function<void(const Expr&)> go = [&](const Expr& e) {
    if (found) return;
    switch (e.kind) {
      case ExprKind::Var:
      case ExprKind::Hole: return;
      case ExprKind::Abs:
        cur.push_back(0);
        go(*e.left);
        cur.pop_back();
        return;
      case ExprKind::App:
        if (e.left->kind == ExprKind::Abs) {
          found = cur;
          return;
        }
        cur.push_back(0);
        go(*e.left);
        if (!found) {
          cur.back() = 1;
          go(*e.right);
        }
        cur.pop_back();
        return;
      case ExprKind::Sub: return;  // not pure
    }
  };
  go(*t);
  return found;
}

}  // namespace

NormalizeResult beta_normalize(const ExprPtr& t, long fuel, const StepObserver& observer) {
  if (!is_pure_lambda(t))
    throw std::invalid_argument("beta_normalize: term contains substitutions or holes");
  NormalizeResult res;
  res.term = t;
  for (long step = 0; step < fuel; ++step) {
    auto pos = find_beta_redex(res.term);
    if (!pos) {
      res.reached_normal_form = true;
      return res;
    }
    const Expr& app = subterm_at(res.term, *pos);
    ExprPtr contracted = meta_subst(app.left->left, app.left->name, app.right);
    res.term = replace_at(res.term, *pos, contracted);
    ++res.steps_m;
    if (observer) observer(res.total_steps(), TermRedex{RuleKind::M, *pos, {}, app.left->name},
                           res.term);
  }
  res.reached_normal_form = !find_beta_redex(res.term).has_value();
  return res;
}

}  // namespace lsnet
