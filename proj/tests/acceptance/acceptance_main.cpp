// Acceptance suite: one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <w11tools/acceptance.hpp>

int main(int argc, char** argv) {
  w11tools::ReproOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  std::vector<w11tools::CriterionResult> results;
  w11tools::run_repro(options, &results);
  results.push_back(w11tools::check_determinism(options));
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d (%s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  std::fflush(stdout);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
