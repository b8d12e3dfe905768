#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "antisym/fields.hpp"
#include "antisym/params.hpp"
#include "antisym/quad.hpp"

namespace antisym {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Comma-separated rows with a fixed header; doubles use format_double.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(const std::vector<double>& values);
  std::string str() const;
  void write(std::ostream& os) const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> lines_;
};

enum class Command {
  constants,
  norms,
  fraclap,
  poisson,
  meanvalue,
  psi,
  barrier,
  harnack_boundary,
  harnack_interior,
  harnack_battery,
  counterexample,
  validate_all,
};

enum class OutputFormat { csv, json };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct RunConfig {
  Command command = Command::constants;
  Params params;
  quad::QuadSpec quad;
  std::optional<FieldSpec> field;
  std::vector<std::uint64_t> seeds;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  /// Evaluation point (fraclap, poisson, psi, barrier).
  std::vector<double> x;
  /// Ball radius (poisson) or mean-value radius (meanvalue).
  double radius = 1.0;
  /// Interior Harnack ball parameter.
  double rho = 0.5;
  /// Lattice resolution; 0 selects the per-dimension default.
  int grid_n = 0;
  std::vector<int> ks{1, 2, 4, 8, 16, 32};
  int bump_count = 4;
  double zeta1_transition = 1.0;
  double zeta2_transition = 0.5;
  /// Permit Poisson evaluation beyond the trusted fraction of the radius.
  bool allow_near_boundary = false;
};

nlohmann::json to_json(const Params& p);
Params params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const quad::QuadSpec& q);
/// Missing keys keep the defaults for dimension n.
quad::QuadSpec quad_from_json(const nlohmann::json& j, int n);
nlohmann::json to_json(const RunConfig& c);
/// Throws UsageError on unknown commands, wrong types or invalid values.
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace antisym
