// Acceptance gate: runs every criterion over the exhaustive corpus (terms up
// to 9 constructors over a 3-name pool; quotient pairs up to 7) and prints one
// pass/fail line per criterion. Exits non-zero when anything fails.
//
// LSNET_ACCEPTANCE_SIZE / LSNET_ACCEPTANCE_THREADS override the defaults for
// local iteration; the shipped defaults are the real gate.

#include <cstdlib>
#include <iostream>

#include "lsnet/suite.hpp"

int main() {
  lsnet::SuiteOptions opts;
  opts.term_size = 9;
  opts.pair_size = 7;
  opts.context_size = 7;
  if (const char* env = std::getenv("LSNET_ACCEPTANCE_SIZE")) opts.term_size = std::atoi(env);
  if (const char* env = std::getenv("LSNET_ACCEPTANCE_THREADS")) opts.threads = std::atoi(env);

  std::cout << "acceptance suite: corpus up to " << opts.term_size
            << " constructors over {x,y,z}, pairs up to " << opts.pair_size << "\n"
            << std::flush;

  auto results = lsnet::run_suite("all", opts, std::cerr);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << "criterion " << r.number << " (" << r.name << "): "
              << (r.pass ? "PASS" : "FAIL") << " [" << r.checked << " checks, "
              << static_cast<long>(r.seconds) << "s]";
    if (!r.pass) std::cout << " " << r.detail;
    std::cout << "\n" << std::flush;
    ok = ok && r.pass;
  }
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above") << "\n";
  return ok ? 0 : 1;
}
