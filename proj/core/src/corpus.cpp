#include "lsnet/corpus.hpp"

namespace lsnet {

namespace {

struct Enumerator {
  const CorpusSpec& spec;
  const std::function<bool(const ExprPtr&)>& fn;
  bool stopped = false;

  // Builds every term of exactly `size` constructors under `depth` binders
  // and hands it to sink. Binder names are assigned by depth: b1, b2, ...
  void gen(int size, int depth, const std::function<void(const ExprPtr&)>& sink) {
    if (stopped || size < 1) return;
    if (size == 1) {
      for (const auto& v : spec.pool) sink(mk_var(v));
      for (int d = 1; d <= depth; ++d) sink(mk_var("b" + std::to_string(d)));
      return;
    }
    std::string binder = "b" + std::to_string(depth + 1);
    gen(size - 1, depth + 1,
        [&](const ExprPtr& body) { sink(mk_abs(binder, body)); });
    for (int i = 1; i <= size - 2; ++i) {
      int j = size - 1 - i;
      gen(i, depth, [&](const ExprPtr& fn_part) {
        gen(j, depth, [&](const ExprPtr& arg) { sink(mk_app(fn_part, arg)); });
      });
      gen(i, depth + 1, [&](const ExprPtr& body) {
        gen(j, depth, [&](const ExprPtr& def) { sink(mk_sub(body, binder, def)); });
      });
    }
  }
};

// The nested-lambda naming above reuses b(depth+1) across sibling scopes, so
// a term can mention the same binder name twice. Renaming by traversal order
// restores well-naming and canonical alpha representatives.
ExprPtr canonicalize(const ExprPtr& e, int& counter,
                     std::vector<std::pair<std::string, std::string>>& env) {
  switch (e->kind) {
    case ExprKind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == e->name) return mk_var(it->second);
      return e;
    }
    case ExprKind::Hole: return e;
    case ExprKind::Abs: {
      std::string nb = "b" + std::to_string(++counter);
      env.push_back({e->name, nb});
      auto body = canonicalize(e->left, counter, env);
      env.pop_back();
      return mk_abs(nb, body);
    }
    case ExprKind::App: {
      auto l = canonicalize(e->left, counter, env);
      auto r = canonicalize(e->right, counter, env);
      return mk_app(l, r);
    }
    case ExprKind::Sub: {
      std::string nb = "b" + std::to_string(++counter);
      env.push_back({e->name, nb});
      auto body = canonicalize(e->left, counter, env);
      env.pop_back();
      auto def = canonicalize(e->right, counter, env);
      return mk_sub(body, nb, def);
    }
  }
  throw std::logic_error("canonicalize: bad kind");
}

}  // namespace

void enumerate_terms(const CorpusSpec& spec, const std::function<bool(const ExprPtr&)>& fn) {
  Enumerator en{spec, fn};
  for (int size = 1; size <= spec.max_constructors && !en.stopped; ++size) {
    en.gen(size, 0, [&](const ExprPtr& t) {
      if (en.stopped) return;
      int counter = 0;
      std::vector<std::pair<std::string, std::string>> env;
      if (!fn(canonicalize(t, counter, env))) en.stopped = true;
    });
  }
}

std::vector<ExprPtr> enumerate_terms_vec(const CorpusSpec& spec) {
  std::vector<ExprPtr> out;
  enumerate_terms(spec, [&](const ExprPtr& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

unsigned long long count_terms(const CorpusSpec& spec) {
  unsigned long long n = 0;
  enumerate_terms(spec, [&](const ExprPtr&) {
    ++n;
    return true;
  });
  return n;
}

}  // namespace lsnet
