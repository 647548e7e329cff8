#include "lsnet/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lsnet {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void merge_into(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

ExprPtr mk_var(std::string name) {
  return std::make_shared<Expr>(ExprKind::Var, std::move(name), nullptr, nullptr,
                                std::vector<std::string>{});
}

ExprPtr mk_hole(std::vector<std::string> interface) {
  return std::make_shared<Expr>(ExprKind::Hole, "", nullptr, nullptr,
                                sorted_unique(std::move(interface)));
}

ExprPtr mk_abs(std::string binder, ExprPtr body) {
  return std::make_shared<Expr>(ExprKind::Abs, std::move(binder), std::move(body), nullptr,
                                std::vector<std::string>{});
}

ExprPtr mk_app(ExprPtr fn, ExprPtr arg) {
  return std::make_shared<Expr>(ExprKind::App, "", std::move(fn), std::move(arg),
                                std::vector<std::string>{});
}

ExprPtr mk_sub(ExprPtr body, std::string binder, ExprPtr def) {
  return std::make_shared<Expr>(ExprKind::Sub, std::move(binder), std::move(body),
                                std::move(def), std::vector<std::string>{});
}

int expr_size(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var:
    case ExprKind::Hole: return 1;
    case ExprKind::Abs: return 1 + expr_size(e->left);
    case ExprKind::App:
    case ExprKind::Sub: return 1 + expr_size(e->left) + expr_size(e->right);
  }
  return 0;
}

int hole_count(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: return 0;
    case ExprKind::Hole: return 1;
    case ExprKind::Abs: return hole_count(e->left);
    case ExprKind::App:
    case ExprKind::Sub: return hole_count(e->left) + hole_count(e->right);
  }
  return 0;
}

bool is_term(const ExprPtr& e) { return hole_count(e) == 0; }
bool is_context(const ExprPtr& e) { return hole_count(e) == 1; }

namespace {

void collect_free(const Expr& e, std::vector<std::string>& acc) {
  switch (e.kind) {
    case ExprKind::Var:
      acc.push_back(e.name);
      return;
    case ExprKind::Hole:
      merge_into(acc, e.hole_interface);
      return;
    case ExprKind::Abs: {
      std::vector<std::string> body;
      collect_free(*e.left, body);
      for (auto& n : body)
        if (n != e.name) acc.push_back(std::move(n));
      return;
    }
    case ExprKind::App:
      collect_free(*e.left, acc);
      collect_free(*e.right, acc);
      return;
    case ExprKind::Sub: {
      std::vector<std::string> body;
      collect_free(*e.left, body);
      for (auto& n : body)
        if (n != e.name) acc.push_back(std::move(n));
      collect_free(*e.right, acc);
      return;
    }
  }
}

}  // namespace

std::vector<std::string> free_vars(const ExprPtr& e) {
  std::vector<std::string> acc;
  collect_free(*e, acc);
  return sorted_unique(std::move(acc));
}

bool has_free_var(const ExprPtr& e, std::string_view x) {
  switch (e->kind) {
    case ExprKind::Var: return e->name == x;
    case ExprKind::Hole:
      return std::find(e->hole_interface.begin(), e->hole_interface.end(), x) !=
             e->hole_interface.end();
    case ExprKind::Abs: return e->name != x && has_free_var(e->left, x);
    case ExprKind::App: return has_free_var(e->left, x) || has_free_var(e->right, x);
    case ExprKind::Sub:
      return (e->name != x && has_free_var(e->left, x)) || has_free_var(e->right, x);
  }
  return false;
}

int multiplicity(const ExprPtr& e, std::string_view x) {
  switch (e->kind) {
    case ExprKind::Var: return e->name == x ? 1 : 0;
    case ExprKind::Hole: return 0;
    case ExprKind::Abs: return e->name == x ? 0 : multiplicity(e->left, x);
    case ExprKind::App: return multiplicity(e->left, x) + multiplicity(e->right, x);
    case ExprKind::Sub:
      return (e->name == x ? 0 : multiplicity(e->left, x)) + multiplicity(e->right, x);
  }
  return 0;
}

std::vector<std::string> bound_names(const ExprPtr& e) {
  std::vector<std::string> acc;
  std::function<void(const Expr&)> go = [&](const Expr& n) {
    switch (n.kind) {
      case ExprKind::Var:
      case ExprKind::Hole: return;
      case ExprKind::Abs:
        acc.push_back(n.name);
        go(*n.left);
        return;
      case ExprKind::App:
        go(*n.left);
        go(*n.right);
        return;
      case ExprKind::Sub:
        acc.push_back(n.name);
        go(*n.left);
        go(*n.right);
        return;
    }
  };
  go(*e);
  return acc;
}

std::vector<std::string> captured_vars(const ExprPtr& ctx) {
  if (hole_count(ctx) != 1)
    throw std::invalid_argument("captured_vars: expression is not a context");
  std::vector<std::string> acc;
  const Expr* cur = ctx.get();
  while (cur->kind != ExprKind::Hole) {
    switch (cur->kind) {
      case ExprKind::Abs:
        acc.push_back(cur->name);
        cur = cur->left.get();
        break;
      case ExprKind::App:
        cur = hole_count(cur->left) == 1 ? cur->left.get() : cur->right.get();
        break;
      case ExprKind::Sub:
        if (hole_count(cur->left) == 1) {
          acc.push_back(cur->name);
          cur = cur->left.get();
        } else {
          cur = cur->right.get();  // hole in the definition: binder does not capture
        }
        break;
      default:
        throw std::logic_error("captured_vars: lost the hole");
    }
  }
  return sorted_unique(std::move(acc));
}

bool is_well_named(const ExprPtr& e) {
  auto binders = bound_names(e);
  std::set<std::string> seen;
  for (const auto& b : binders)
    if (!seen.insert(b).second) return false;
  for (const auto& f : free_vars(e))
    if (seen.count(f)) return false;
  return true;
}

namespace {

ExprPtr plug_rec(const Expr& c, const ExprPtr& e, const std::vector<std::string>& fv_e) {
  switch (c.kind) {
    case ExprKind::Hole: {
      for (const auto& v : fv_e) {
        if (!std::binary_search(c.hole_interface.begin(), c.hole_interface.end(), v))
          throw InterfaceViolation("plug: free variable '" + v +
                                   "' is not in the hole interface");
      }
      return e;
    }
    case ExprKind::Abs:
      return mk_abs(c.name, plug_rec(*c.left, e, fv_e));
    case ExprKind::App:
      if (hole_count(c.left) == 1)
        return mk_app(plug_rec(*c.left, e, fv_e), c.right);
      return mk_app(c.left, plug_rec(*c.right, e, fv_e));
    case ExprKind::Sub:
      if (hole_count(c.left) == 1)
        return mk_sub(plug_rec(*c.left, e, fv_e), c.name, c.right);
      return mk_sub(c.left, c.name, plug_rec(*c.right, e, fv_e));
    default:
      throw std::logic_error("plug: lost the hole");
  }
}

}  // namespace

ExprPtr plug(const ExprPtr& ctx, const ExprPtr& e) {
  if (hole_count(ctx) != 1) throw std::invalid_argument("plug: expression is not a context");
  return plug_rec(*ctx, e, free_vars(e));
}

NameGen::NameGen(const std::vector<std::string>& used) : used_(used.begin(), used.end()) {}

std::string NameGen::fresh(const std::string& base) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int n = 1;; ++n) {
    std::string cand = stem + std::to_string(n);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

std::string NameGen::keep_or_fresh(const std::string& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  return fresh(base);
}

namespace {

ExprPtr rename_rec(const Expr& e, std::map<std::string, std::string>& env, NameGen& gen) {
  switch (e.kind) {
    case ExprKind::Var: {
      auto it = env.find(e.name);
      return mk_var(it == env.end() ? e.name : it->second);
    }
    case ExprKind::Hole: {
      std::vector<std::string> iface;
      iface.reserve(e.hole_interface.size());
      for (const auto& n : e.hole_interface) {
        auto it = env.find(n);
        iface.push_back(it == env.end() ? n : it->second);
      }
      return mk_hole(std::move(iface));
    }
    case ExprKind::Abs: {
      std::string nb = gen.keep_or_fresh(e.name);
      auto saved = env.find(e.name);
      std::string old;
      bool had = saved != env.end();
      if (had) old = saved->second;
      env[e.name] = nb;
      auto body = rename_rec(*e.left, env, gen);
      if (had)
        env[e.name] = old;
      else
        env.erase(e.name);
      return mk_abs(nb, body);
    }
    case ExprKind::App: {
      auto l = rename_rec(*e.left, env, gen);
      auto r = rename_rec(*e.right, env, gen);
      return mk_app(l, r);
    }
    case ExprKind::Sub: {
      // The definition is outside the binder's scope.
      auto def = rename_rec(*e.right, env, gen);
      std::string nb = gen.keep_or_fresh(e.name);
      auto saved = env.find(e.name);
      std::string old;
      bool had = saved != env.end();
      if (had) old = saved->second;
      env[e.name] = nb;
      auto body = rename_rec(*e.left, env, gen);
      if (had)
        env[e.name] = old;
      else
        env.erase(e.name);
      return mk_sub(body, nb, def);
    }
  }
  throw std::logic_error("rename_rec: bad kind");
}

}  // namespace

ExprPtr well_name(const ExprPtr& e) {
  NameGen gen(free_vars(e));
  std::map<std::string, std::string> env;
  return rename_rec(*e, env, gen);
}

namespace {

void alpha_rec(const Expr& e, std::map<std::string, std::string>& env, int& counter,
               std::string& out) {
  switch (e.kind) {
    case ExprKind::Var: {
      auto it = env.find(e.name);
      out += it == env.end() ? e.name : it->second;
      return;
    }
    case ExprKind::Hole: {
      std::vector<std::string> iface;
      iface.reserve(e.hole_interface.size());
      for (const auto& n : e.hole_interface) {
        auto it = env.find(n);
        iface.push_back(it == env.end() ? n : it->second);
      }
      std::sort(iface.begin(), iface.end());
      out += "[.]{";
      for (size_t i = 0; i < iface.size(); ++i) {
        if (i) out += ',';
        out += iface[i];
      }
      out += '}';
      return;
    }
    case ExprKind::Abs:
    case ExprKind::Sub: {
      std::string canon = "#" + std::to_string(counter++);
      if (e.kind == ExprKind::Sub) {
        out += '(';
        // definition first: it is outside the binder's scope
        std::string def;
        alpha_rec(*e.right, env, counter, def);
        auto saved = env.find(e.name);
        std::string old;
        bool had = saved != env.end();
        if (had) old = saved->second;
        env[e.name] = canon;
        out += 's';
        out += canon;
        out += '.';
        alpha_rec(*e.left, env, counter, out);
        out += '<';
        out += def;
        out += ')';
        if (had)
          env[e.name] = old;
        else
          env.erase(e.name);
      } else {
        auto saved = env.find(e.name);
        std::string old;
        bool had = saved != env.end();
        if (had) old = saved->second;
        env[e.name] = canon;
        out += "(\\";
        out += canon;
        out += '.';
        alpha_rec(*e.left, env, counter, out);
        out += ')';
        if (had)
          env[e.name] = old;
        else
          env.erase(e.name);
      }
      return;
    }
    case ExprKind::App: {
      out += '(';
      alpha_rec(*e.left, env, counter, out);
      out += ' ';
      alpha_rec(*e.right, env, counter, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string alpha_key(const ExprPtr& e) {
  std::string out;
  out.reserve(32);
  std::map<std::string, std::string> env;
  int counter = 0;
  alpha_rec(*e, env, counter, out);
  return out;
}

bool alpha_eq(const ExprPtr& a, const ExprPtr& b) { return alpha_key(a) == alpha_key(b); }

std::string path_to_string(const Path& p) {
  if (p.empty()) return "@";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

namespace {

const Expr* child(const Expr& e, int i) {
  switch (e.kind) {
    case ExprKind::Abs:
      if (i == 0) return e.left.get();
      break;
    case ExprKind::App:
    case ExprKind::Sub:
      if (i == 0) return e.left.get();
      if (i == 1) return e.right.get();
      break;
    default: break;
  }
  return nullptr;
}

}  // namespace

const Expr& subterm_at(const ExprPtr& e, const Path& p) {
  const Expr* cur = e.get();
  for (int i : p) {
    cur = child(*cur, i);
    if (!cur) throw std::out_of_range("subterm_at: invalid path");
  }
  return *cur;
}

ExprPtr replace_at(const ExprPtr& e, const Path& p, const ExprPtr& replacement) {
  std::function<ExprPtr(const Expr&, size_t)> go = [&](const Expr& cur, size_t i) -> ExprPtr {
    if (i == p.size()) return replacement;
    int c = p[i];
    switch (cur.kind) {
      case ExprKind::Abs:
        if (c == 0) return mk_abs(cur.name, go(*cur.left, i + 1));
        break;
      case ExprKind::App:
        if (c == 0) return mk_app(go(*cur.left, i + 1), cur.right);
        if (c == 1) return mk_app(cur.left, go(*cur.right, i + 1));
        break;
      case ExprKind::Sub:
        if (c == 0) return mk_sub(go(*cur.left, i + 1), cur.name, cur.right);
        if (c == 1) return mk_sub(cur.left, cur.name, go(*cur.right, i + 1));
        break;
      default: break;
    }
    throw std::out_of_range("replace_at: invalid path");
  };
  return go(*e, 0);
}

Decomposition split_at(const ExprPtr& t, const Path& p) {
  const Expr& sub = subterm_at(t, p);
  ExprPtr subp = std::make_shared<Expr>(sub);
  std::vector<std::string> iface = free_vars(subp);
  // add captured binders on the path
  {
    const Expr* cur = t.get();
    for (size_t i = 0; i < p.size(); ++i) {
      if (cur->kind == ExprKind::Abs || (cur->kind == ExprKind::Sub && p[i] == 0))
        iface.push_back(cur->name);
      cur = child(*cur, p[i]);
    }
  }
  auto ctx = replace_at(t, p, mk_hole(sorted_unique(std::move(iface))));
  return {ctx, subp};
}

std::vector<Path> occurrences(const ExprPtr& e, std::string_view x) {
  std::vector<Path> out;
  Path cur;
  std::function<void(const Expr&)> go = [&](const Expr& n) {
    switch (n.kind) {
      case ExprKind::Var:
        if (n.name == x) out.push_back(cur);
        return;
      case ExprKind::Hole: return;
      case ExprKind::Abs:
        if (n.name == x) return;
        cur.push_back(0);
        go(*n.left);
        cur.pop_back();
        return;
      case ExprKind::App:
        cur.push_back(0);
        go(*n.left);
        cur.back() = 1;
        go(*n.right);
        cur.pop_back();
        return;
      case ExprKind::Sub:
        if (n.name != x) {
          cur.push_back(0);
          go(*n.left);
          cur.pop_back();
        }
        cur.push_back(1);
        go(*n.right);
        cur.pop_back();
        return;
    }
  };
  go(*e);
  return out;
}

ParseError::ParseError(std::string msg, size_t at)
    : std::runtime_error(msg + " at offset " + std::to_string(at)), pos(at) {}

namespace {

struct Parser {
  std::string_view s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eof() {
    skip_ws();
    return i >= s.size();
  }

  bool peek_lambda() {
    skip_ws();
    if (i < s.size() && s[i] == '\\') return true;
    // UTF-8 lambda
    return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xCE &&
           static_cast<unsigned char>(s[i + 1]) == 0xBB;
  }

  void eat_lambda() {
    skip_ws();
    if (s[i] == '\\')
      ++i;
    else
      i += 2;
  }

  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }

  bool peek_hole() {
    skip_ws();
    return i + 2 < s.size() && s[i] == '[' && s[i + 1] == '.' && s[i + 2] == ']';
  }

  void expect(char c) {
    skip_ws();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_';
  }

  std::string ident() {
    skip_ws();
    if (i >= s.size() || !ident_start(s[i])) throw ParseError("expected identifier", i);
    size_t start = i;
    while (i < s.size() && ident_char(s[i])) ++i;
    return std::string(s.substr(start, i - start));
  }

  ExprPtr expr() {
    if (peek_lambda()) {
      eat_lambda();
      std::string x = ident();
      expect('.');
      return mk_abs(std::move(x), expr());
    }
    return appseq();
  }

  bool atom_ahead() {
    skip_ws();
    if (i >= s.size()) return false;
    char c = s[i];
    return ident_start(c) || c == '(' || peek_hole();
  }

  ExprPtr appseq() {
    ExprPtr e = postfix();
    while (atom_ahead()) e = mk_app(e, postfix());
    return e;
  }

  ExprPtr postfix() {
    ExprPtr e = atom();
    while (true) {
      skip_ws();
      if (peek_hole()) break;  // '[.]' starts a new atom, not a substitution
      if (!peek('[')) break;
      ++i;
      std::string x = ident();
      skip_ws();
      if (i + 1 >= s.size() || s[i] != '<' || s[i + 1] != '-')
        throw ParseError("expected '<-'", i);
      i += 2;
      ExprPtr def = expr();
      expect(']');
      e = mk_sub(e, std::move(x), def);
    }
    return e;
  }

  ExprPtr atom() {
    skip_ws();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    if (peek_hole()) {
      i += 3;
      expect('{');
      std::vector<std::string> iface;
      skip_ws();
      if (!peek('}')) {
        iface.push_back(ident());
        while (peek(',')) {
          ++i;
          iface.push_back(ident());
        }
      }
      expect('}');
      return mk_hole(std::move(iface));
    }
    if (peek('(')) {
      ++i;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    return mk_var(ident());
  }
};

void print_rec(const Expr& e, std::string& out);

// true when the printed form can stand as one `postfix` item
bool atomic_enough(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Var:
    case ExprKind::Hole: return true;
    case ExprKind::Sub: return atomic_enough(*e.left);
    default: return false;
  }
}

void print_atomish(const Expr& e, std::string& out) {
  if (atomic_enough(e)) {
    print_rec(e, out);
  } else {
    out += '(';
    print_rec(e, out);
    out += ')';
  }
}

void print_app_lhs(const Expr& e, std::string& out) {
  if (e.kind == ExprKind::App || atomic_enough(e)) {
    print_rec(e, out);
  } else {
    out += '(';
    print_rec(e, out);
    out += ')';
  }
}

void print_rec(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Var:
      out += e.name;
      return;
    case ExprKind::Hole: {
      out += "[.]{";
      for (size_t i = 0; i < e.hole_interface.size(); ++i) {
        if (i) out += ',';
        out += e.hole_interface[i];
      }
      out += '}';
      return;
    }
    case ExprKind::Abs:
      out += '\\';
      out += e.name;
      out += ". ";
      print_rec(*e.left, out);
      return;
    case ExprKind::App:
      print_app_lhs(*e.left, out);
      out += ' ';
      print_atomish(*e.right, out);
      return;
    case ExprKind::Sub:
      print_atomish(*e.left, out);
      out += '[';
      out += e.name;
      out += "<-";
      print_rec(*e.right, out);
      out += ']';
      return;
  }
}

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  Parser p{text};
  ExprPtr e = p.expr();
  if (!p.eof()) throw ParseError("trailing input", p.i);
  return e;
}

std::string print_expr(const ExprPtr& e) {
  std::string out;
  out.reserve(32);
  print_rec(*e, out);
  return out;
}

}  // namespace lsnet
