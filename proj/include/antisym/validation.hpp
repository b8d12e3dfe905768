#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "antisym/params.hpp"
#include "antisym/quad.hpp"

namespace antisym {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  /// Human-readable breakdown of the measurement.
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct ValidationReport {
  Params params;
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12). Quadrature rejections become failed entries.
CriterionResult run_criterion(int id, const Params& p, const quad::QuadSpec& q);
/// Runs every criterion in order.
ValidationReport validate_all(const Params& p, const quad::QuadSpec& q);

nlohmann::json to_json(const CriterionResult& c);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace antisym
