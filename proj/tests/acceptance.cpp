// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cstdio>

#include "cover2/acceptance.hpp"

int main() {
  int failed = 0;
  const auto results = cover2::run_acceptance();
  for (const auto& r : results) {
    std::printf("%s %d. %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed ? 1 : 0;
}
