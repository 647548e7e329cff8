#pragma once

#include "lsnet/expr.hpp"

namespace lsnet {

// Exhaustive enumeration of well-named terms: all shapes over Var, Abs, App,
// Sub up to a constructor budget, free variables drawn from a fixed pool,
// binders named canonically (b1, b2, ... in traversal order). The stream is
// duplicate-free modulo alpha by construction and ordered by size.
struct CorpusSpec {
  int max_constructors = 9;
  std::vector<std::string> pool = {"x", "y", "z"};
};

// Calls fn for every term; stop early by returning false.
void enumerate_terms(const CorpusSpec& spec, const std::function<bool(const ExprPtr&)>& fn);
std::vector<ExprPtr> enumerate_terms_vec(const CorpusSpec& spec);
unsigned long long count_terms(const CorpusSpec& spec);

}  // namespace lsnet
