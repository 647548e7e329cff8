#pragma once

#include "lsnet/net.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/term_rewrite.hpp"

namespace lsnet {

// Cuts are nodes whose incoming and outgoing connections are both principal:
//
//   m  : an m-node between a par (target) and a tensor (source)
//   e  : an e-node between derelictions and a bang; one redex per dereliction
//   gc : an e-node between a weakening and a bang
//
// The rules mirror the term rules exactly: m removes the par/tensor pair and
// turns the argument box into a substitution on the abstracted variable; e
// replaces one dereliction by a fresh copy of the box, which stays in place;
// gc erases the box, weakening its free variables when they lose their last
// use.

struct NetRedex {
  RuleKind kind;
  NodeIdx cut;
  LinkIdx a;  // m: the par, e: the dereliction, gc: the weakening
  LinkIdx b;  // m: the tensor, e/gc: the bang
};

// All cuts of a correct term net, ordered by cut node id (derelictions of one
// cut by link id).
std::vector<NetRedex> find_net_redexes(const Net& n);

Net apply_net_redex(const Net& n, const NetRedex& r);

// The index normalize_net fires next: erasing cuts first, then multiplicative,
// then duplicating ones.
size_t pick_net_redex(const std::vector<NetRedex>& rs);

struct NetNormalizeResult {
  Net net;
  bool reached_normal_form = false;
  long steps_m = 0, steps_e = 0, steps_gc = 0;
  long total_steps() const { return steps_m + steps_e + steps_gc; }
};

using NetStepObserver = std::function<void(long, const NetRedex&, const Net&)>;

NetNormalizeResult normalize_net(const Net& n, long fuel, const NetStepObserver& observer = {});

// The redex bijection between a term and a net it reads back to. Built from
// the read-back trace: applications pair with tensors, substitutions with
// bangs, occurrences with derelictions. Throws NotAReadBack if the net does
// not read back to the term, and logic_error if the redex sets fail to match
// up kind for kind.
struct RedexPair {
  TermRedex term;
  NetRedex net;
};
struct RedexBijection {
  std::vector<RedexPair> pairs;
};
RedexBijection redex_bijection(const Net& p, const ExprPtr& t);

}  // namespace lsnet
