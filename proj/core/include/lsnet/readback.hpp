#pragma once

#include "lsnet/expr.hpp"
#include "lsnet/net.hpp"

namespace lsnet {

// Correctness in the polarised style: collapse every level-0 box to a genax
// link over its interface, then ask for a unique terminal m-node (the root),
// an acyclic collapsed net, and recursively correct boxes.

// Collapses each level-0 box into a genax whose source is the bang's e-node
// and whose targets are the box free variables.
Net correction_net(const Net& n);

struct CorrectnessReport {
  bool ok = true;
  std::string clause;                 // "root" | "acyclic" | "box"
  std::string detail;
  std::vector<std::string> witness;   // cycle as node/link ids, or extra terminal nodes
};
CorrectnessReport check_correctness(const Net& n);
bool is_correct(const Net& n);

// The m-nodes of the correction net, ordered along the par/tensor paths.
// For a correct net this is a total order ending at the root; anything else
// throws (it would contradict correctness).
struct NotLinear : std::logic_error {
  using std::logic_error::logic_error;
};
std::vector<std::string> linear_skeleton(const Net& n);

// A subset of links is a subnet when, with the inherited boxes, it is a
// valid correct net that is closed under contractions, box interiors, and
// boxes reached through an internal free variable.
bool is_subnet(const Net& n, const std::vector<LinkIdx>& links);

// The ways a correct net decomposes; exactly one is reported, following the
// priority free weakening > free substitution > root abstraction > root
// application, ties resolved by smallest e-node id.
struct DecompositionCase {
  enum class Tag {
    OneLinkDer,
    OneLinkHole,
    FreeWeakening,
    FreeSubstitution,
    RootAbstraction,
    RootApplicationFreeArgument,
  };
  Tag tag;
  LinkIdx link = -1;  // the weak / bang / par / tensor of the case
  LinkIdx bang = -1;  // argument bang for root applications
};
DecompositionCase decompose(const Net& n);

struct NotDecomposable : std::logic_error {
  using std::logic_error::logic_error;
};

// Deterministic read back of a correct net. `weakened` collects the free
// weakenings dropped along the way: translate(expr, weakened) is isomorphic
// to the input again.
struct ReadBackResult {
  ExprPtr expr;
  std::vector<std::string> weakened;
};
ReadBackResult read_back_full(const Net& n);
ExprPtr read_back(const Net& n);

// Every expression the net reads back to, alpha-deduplicated, by exploring
// all applicable decompositions. `limit` caps the result count.
std::vector<ExprPtr> read_back_all(const Net& n, size_t limit = static_cast<size_t>(-1));

struct NotAReadBack : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A read-back derivation for a given target expression, recording where each
// link of the net was consumed. Positions index into the target.
enum class LinkRole : uint8_t {
  Unused,
  Occurrence,   // der at a variable occurrence
  HoleSite,     // hole link
  Application,  // tensor at an application
  ArgumentBox,  // bang boxed as an application argument
  Abstraction,  // par at an abstraction
  Substitution, // bang kept as an explicit substitution
  BinderWeak,   // weakening for a binder with no occurrences
  FreeWeak,     // weakening dropped into the weakened set
};
struct ReadBackTrace {
  std::vector<LinkRole> role;      // per link
  std::vector<Path> position;      // per link, where it was consumed
  std::vector<std::string> weakened;
};

// Derives the trace witnessing that `target` is a read back of the net;
// throws NotAReadBack when it is not.
ReadBackTrace guided_read_back(const Net& n, const ExprPtr& target);

// Splits a term net at a dereliction on a free variable: the net with the
// der replaced by a hole, and the matching term context. Plugging the one-der
// net back (resp. the variable) restores the inputs.
struct FactorResult {
  Net context_net;
  ExprPtr context;
};
FactorResult factor_at_var(const Net& n, const ExprPtr& t, LinkIdx der,
                           const std::vector<std::string>& extra_interface = {});

}  // namespace lsnet
