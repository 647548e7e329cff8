#pragma once

#include <functional>
#include <optional>

#include "lsnet/expr.hpp"

namespace lsnet {

// The three rewrite rules, applied anywhere in a term:
//
//   m  : L<\x. t> s   ->  L<t[x<-s]>     L a stack of substitutions
//   e  : C<x>[x<-s]   ->  C<s>[x<-s]     one occurrence at a time
//   gc : t[x<-s]      ->  t              when x does not occur free in t
//
// Terms are kept well-named throughout: e-steps freshen the binders of the
// copied definition.

enum class RuleKind : uint8_t { M, E, Gc };
const char* rule_name(RuleKind k);

// A positioned redex. `at` anchors the rule: the application node for m,
// the substitution node for e and gc. For e-redexes `occ` is the absolute
// position of the replaced occurrence.
struct TermRedex {
  RuleKind kind;
  Path at;
  Path occ;
  std::string binder;
};

struct StaleRedex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All redexes of a well-named term, ordered by anchor position
// (lexicographic), e-redexes of one substitution by occurrence.
std::vector<TermRedex> find_term_redexes(const ExprPtr& t);

ExprPtr apply_term_redex(const ExprPtr& t, const TermRedex& r);

enum class Strategy { LeftmostOutermost, GcEager, ExhaustiveEnumeration };
std::optional<Strategy> strategy_from_name(std::string_view name);

struct NormalizeResult {
  ExprPtr term;
  bool reached_normal_form = false;
  long steps_m = 0, steps_e = 0, steps_gc = 0;
  long total_steps() const { return steps_m + steps_e + steps_gc; }
};

using StepObserver = std::function<void(long, const TermRedex&, const ExprPtr&)>;

// Applies the strategy's choice until no redex remains or `fuel` steps were
// taken; a fuel-exhausted result carries the last term reached.
// ExhaustiveEnumeration explores every reduction order (breadth first, alpha
// deduplicated) and returns the common normal form; `fuel` then bounds the
// number of expanded states.
NormalizeResult normalize(const ExprPtr& t, Strategy s, long fuel,
                          const StepObserver& observer = {});

bool is_pure_lambda(const ExprPtr& e);  // no substitutions, no holes

// Removes every explicit substitution by capture-avoiding meta-substitution.
ExprPtr unfold(const ExprPtr& t);

// Capture-avoiding substitution on pure lambda terms; exposed for tests.
ExprPtr meta_subst(const ExprPtr& e, const std::string& x, const ExprPtr& v);

// Independent oracle: ordinary beta reduction, leftmost-outermost.
NormalizeResult beta_normalize(const ExprPtr& t, long fuel,
                               const StepObserver& observer = {});

}  // namespace lsnet
