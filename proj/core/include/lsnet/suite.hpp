#pragma once

#include <iosfwd>

#include "lsnet/corpus.hpp"

namespace lsnet {

// Property suites run over the exhaustive corpus. Every criterion is checked
// at full strength; a failing item is reported with the term that broke it.
//
//   static    1 translation validity, correctness, interfaces, multiplicities
//             8 linear skeleton on every image; the cyclic fixture is rejected
//   quotient  2 read back / translate round trips
//             3 equivalence classes coincide with isomorphism classes;
//               read_back_all enumerates exactly the equivalence class
//   dynamic   4 kind-preserving redex bijection, both commuting squares
//             5 every net reduct stays valid and correct
//             7 normal forms agree with the beta oracle on closed terms
//   bisim     6 the structural equivalence is a strong bisimulation; adding
//               the right-application axiom breaks it

struct SuiteOptions {
  int term_size = 9;      // corpus bound for criteria 1, 2, 4, 5, 6, 8
  int pair_size = 7;      // corpus bound for criterion 3
  int context_size = 7;   // decomposition contexts in criterion 1
  unsigned threads = 0;   // 0 = hardware concurrency
  bool verbose = false;
};

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  long checked = 0;
  std::string detail;
  double seconds = 0.0;
};

// which: static | quotient | dynamic | bisim | all
std::vector<CriterionResult> run_suite(const std::string& which, const SuiteOptions& opts,
                                       std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& rs);

// The hand-built net whose collapsed box closes a cycle: structurally valid,
// rejected by the correctness criterion. Exposed for tests and fixtures.
extern const char* kCyclicFixtureJson;

}  // namespace lsnet
