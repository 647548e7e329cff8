#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsnet {

// Expressions of the calculus: variables, context holes (annotated with the
// set of names that may appear free in whatever gets plugged in), lambda
// abstractions, applications, and explicit substitutions t[x<-s].
//
// A *term* is an expression with no holes; a *context* has exactly one.
// Expressions are immutable and shared; every operation below is pure.

enum class ExprKind : uint8_t { Var, Hole, Abs, App, Sub };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
  ExprKind kind;
  std::string name;                         // Var: the variable; Abs/Sub: the binder
  ExprPtr left;                             // Abs: body; App: function; Sub: body
  ExprPtr right;                            // App: argument; Sub: definition
  std::vector<std::string> hole_interface;  // Hole only; sorted, duplicate-free

  Expr(ExprKind k, std::string n, ExprPtr l, ExprPtr r, std::vector<std::string> iface)
      : kind(k), name(std::move(n)), left(std::move(l)), right(std::move(r)),
        hole_interface(std::move(iface)) {}
};

ExprPtr mk_var(std::string name);
ExprPtr mk_hole(std::vector<std::string> interface);
ExprPtr mk_abs(std::string binder, ExprPtr body);
ExprPtr mk_app(ExprPtr fn, ExprPtr arg);
ExprPtr mk_sub(ExprPtr body, std::string binder, ExprPtr def);

int expr_size(const ExprPtr& e);   // number of constructors
int hole_count(const ExprPtr& e);
bool is_term(const ExprPtr& e);
bool is_context(const ExprPtr& e);

// Free names, sorted and duplicate-free. Hole interfaces count as free
// occurrences of their names; Abs and Sub remove their binder from the body
// contribution, and Sub adds the definition's free names.
std::vector<std::string> free_vars(const ExprPtr& e);
bool has_free_var(const ExprPtr& e, std::string_view x);

// Number of free occurrences of x (hole interfaces contribute none).
int multiplicity(const ExprPtr& e, std::string_view x);

// All binder names in traversal order (may repeat if not well-named).
std::vector<std::string> bound_names(const ExprPtr& e);

// Binders lying on the path from the root to the hole of a context.
// Only binders whose scope contains the hole count: the binder of t[x<-C]
// does not capture, the binder of C[x<-t] and \x.C does.
std::vector<std::string> captured_vars(const ExprPtr& ctx);

// Pairwise-distinct binders, also distinct from every free name.
bool is_well_named(const ExprPtr& e);

struct InterfaceViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Textual plugging: replaces the hole of ctx by e. Capture is intentional and
// no renaming happens. Requires fv(e) to be contained in the hole interface.
ExprPtr plug(const ExprPtr& ctx, const ExprPtr& e);

// Deterministic fresh-name source. fresh() strips a trailing numeric suffix
// from the base and appends the first counter value that is still unused.
class NameGen {
public:
  NameGen() = default;
  explicit NameGen(const std::vector<std::string>& used);
  void mark_used(const std::string& n) { used_.insert(n); }
  bool is_used(const std::string& n) const { return used_.count(n) != 0; }
  std::string fresh(const std::string& base);
  // Keeps `base` when never seen, otherwise freshens it. Marks the result.
  std::string keep_or_fresh(const std::string& base);

private:
  std::set<std::string> used_;
};

// Alpha-renames binders so that all bound names are pairwise distinct and
// disjoint from the free names. Free names are untouched; binder names are
// kept when they do not clash.
ExprPtr well_name(const ExprPtr& e);

// Canonical form under alpha: binders are numbered in traversal order; hole
// interfaces are mapped through the binding environment and sorted.
std::string alpha_key(const ExprPtr& e);
bool alpha_eq(const ExprPtr& a, const ExprPtr& b);

// Positions are child-index paths: Abs body = 0, App function = 0,
// argument = 1, Sub body = 0, definition = 1.
using Path = std::vector<int>;
std::string path_to_string(const Path& p);

const Expr& subterm_at(const ExprPtr& e, const Path& p);
ExprPtr replace_at(const ExprPtr& e, const Path& p, const ExprPtr& replacement);

// Splits t at position p into a context and the subterm there. The hole is
// annotated with fv(subterm) plus the binders captured along the path, the
// smallest interface that keeps the pair pluggable.
struct Decomposition {
  ExprPtr context;
  ExprPtr sub;
};
Decomposition split_at(const ExprPtr& t, const Path& p);

// Positions of free occurrences of x, in lexicographic order.
std::vector<Path> occurrences(const ExprPtr& e, std::string_view x);

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(std::string msg, size_t at);
};

// Concrete grammar (UTF-8):
//   expr    := '\' ident '. ' expr | 'λ' ident '. ' expr | appseq
//   appseq  := postfix+                     (left associative)
//   postfix := atom ('[' ident '<-' expr ']')*
//   atom    := ident | '(' expr ')' | '[.]' '{' ident (',' ident)* '}' | '[.]{}'
ExprPtr parse_expr(std::string_view text);
std::string print_expr(const ExprPtr& e);

}  // namespace lsnet
