#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "w11tools/report.hpp"

namespace w11tools {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// One line: the decisive numbers against their pinned tolerances.
  std::string summary;
  ordered_json details;
};

struct ReproOptions {
  std::uint64_t seed = 1;
};

CriterionResult check_bbm_identity(const ReproOptions& o);
CriterionResult check_upper_bound(const ReproOptions& o);
CriterionResult check_scaling(const ReproOptions& o);
CriterionResult check_interpolation_constants(const ReproOptions& o);
CriterionResult check_jump_bound(const ReproOptions& o);
CriterionResult check_trace_round_trip(const ReproOptions& o);
CriterionResult check_strip_bound(const ReproOptions& o);
CriterionResult check_trace_inequalities(const ReproOptions& o);
CriterionResult check_constancy(const ReproOptions& o);

/// Runs criteria 1-9; the JSON report lists every result with details.
ordered_json run_repro(const ReproOptions& o, std::vector<CriterionResult>* results = nullptr);

/// Criterion 10: two repro runs with the same seed (one and three worker
/// threads) must serialise to identical bytes.
CriterionResult check_determinism(const ReproOptions& o);

}  // namespace w11tools
