#pragma once

#include "lsnet/expr.hpp"
#include "lsnet/net.hpp"

namespace lsnet {

struct WellNamingViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compositional translation of a well-named expression to a net, with an
// extra set of weakened variables. Per constructor:
//
//   x        one der feeding a fresh root and the e-node x
//   [.]{G}   one hole link over a fresh root and the nodes of G
//   \x. t    par closing the e-node x over t's root (weakening x if unused)
//   t s      tensor on t's root; s's translation boxed under a bang whose
//            e-node is the tensor's argument port
//   t[x<-s]  s's translation boxed under a bang whose e-node is x
//            (weakening x if unused); the root is t's root
//
// Subnets sharing a free name share its e-node, which is all there is to
// contraction. Every name in `weakened` not already present receives a free
// weakening. Node and link ids are derived from the traversal path, so equal
// inputs produce identical nets.
Net translate(const ExprPtr& e, const std::vector<std::string>& weakened = {});

}  // namespace lsnet
