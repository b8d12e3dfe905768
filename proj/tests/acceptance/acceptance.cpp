#include <cstdio>
#include <cstdlib>
#include <string>

#include "antisym/validation.hpp"

/// Runs the listed criteria (all when none are given) at n = 1, s = 0.5 with default
/// quadrature and prints one line per criterion.
int main(int argc, char** argv) {
  const antisym::Params p(1, 0.5);
  const auto q = antisym::quad::QuadSpec::defaults(1);
  bool all = true;
  auto one = [&](int id) {
    const auto r = antisym::run_criterion(id, p, q);
    std::printf("criterion %2d %s  %s  measured=%.6g tol=%.6g time=%.1fs/%.0fs\n    %s\n", r.id,
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance, r.seconds, r.time_limit,
                r.detail.c_str());
    all = all && r.passed;
  };
  if (argc == 1) {
    for (int id = 1; id <= antisym::kCriterionCount; ++id) one(id);
  } else {
    for (int i = 1; i < argc; ++i) one(std::atoi(argv[i]));
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
