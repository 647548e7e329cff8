#pragma once

#include <functional>
#include <map>
#include <set>

#include "lsnet/expr.hpp"

namespace lsnet {

// Structural equivalence: the contextual, reflexive, symmetric, transitive
// closure of three axioms that commute a substitution with an abstraction,
// the left side of an application, or another substitution:
//
//   (\y. t)[x<-s]   ~  \y. t[x<-s]        y not free in s
//   (t u)[x<-s]     ~  t[x<-s] u          x not free in u
//   t[x<-s][y<-u]   ~  t[y<-u][x<-s]      y not free in s, x not free in u
//
// Commuting into the right side of an application is deliberately absent.

// All terms one axiom application away (either direction, any position).
std::vector<ExprPtr> equiv_neighbors(const ExprPtr& t);

// The same plus the right-application axiom; breaks the strong bisimulation
// property and exists to show exactly that.
std::vector<ExprPtr> equiv_neighbors_appr(const ExprPtr& t);

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using NeighborFn = std::function<std::vector<ExprPtr>(const ExprPtr&)>;

// Breadth-first closure under one-step neighbors, comparing modulo alpha.
// The axioms preserve size, so the closure is finite; `complete` reports
// whether it was exhausted within the bound.
struct EquivClosure {
  std::vector<ExprPtr> members;
  bool complete = true;
};
EquivClosure equiv_closure(const ExprPtr& t, long bound, const NeighborFn& fn = equiv_neighbors);

// Brute-force decision by closure from t; bound 0 means size(t) squared.
// Throws BoundExceeded if the closure was cut off before finding s.
bool equiv_oracle(const ExprPtr& t, const ExprPtr& s, long bound = 0);

// Decision through nets: translate both terms and test isomorphism. False
// when the free variables differ.
bool equiv_via_nets(const ExprPtr& t, const ExprPtr& s);

// ---------------------------------------------------------------------------
// Strong bisimulation harness. An equivalence is a strong bisimulation for a
// kind-labelled rewriting relation when every step out of an equivalent
// object is matched by one step of the same kind with equivalent reducts.

template <typename T>
struct RewritingSystemModulo {
  std::string name;
  std::function<std::vector<std::pair<std::string, T>>(const T&)> steps;
  std::function<std::vector<T>(const T&)> equiv_one;     // one-axiom neighbors
  std::function<bool(const T&, const T&)> related;       // full equivalence
  std::function<std::string(const T&)> show;
};

struct BisimCounterexample {
  std::string object, neighbor, kind, reduct;
};

struct BisimReport {
  long objects = 0, pairs = 0, steps = 0;
  std::vector<BisimCounterexample> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

template <typename T>
BisimReport check_strong_bisimulation(const RewritingSystemModulo<T>& sys,
                                      const std::vector<T>& samples,
                                      size_t max_counterexamples = 8) {
  BisimReport rep;
  for (const T& t : samples) {
    ++rep.objects;
    auto t_steps = sys.steps(t);
    for (const T& s : sys.equiv_one(t)) {
      ++rep.pairs;
      for (const auto& [kind, u] : sys.steps(s)) {
        ++rep.steps;
        bool matched = false;
        for (const auto& [kind2, r] : t_steps) {
          if (kind2 != kind) continue;
          if (sys.related(r, u)) {
            matched = true;
            break;
          }
        }
        if (!matched) {
          rep.counterexamples.push_back({sys.show(t), sys.show(s), kind, sys.show(u)});
          if (rep.counterexamples.size() >= max_counterexamples) return rep;
        }
      }
    }
  }
  return rep;
}

// The calculus as a structural rewriting system, with the closure oracle as
// the reduct equivalence.
RewritingSystemModulo<ExprPtr> lsc_system();
// Variant with the right-application axiom added to both the neighbor
// enumeration and the reduct equivalence.
RewritingSystemModulo<ExprPtr> lsc_system_appr();
// Degenerate instance whose equivalence is the identity.
RewritingSystemModulo<ExprPtr> lsc_system_identity();

}  // namespace lsnet
