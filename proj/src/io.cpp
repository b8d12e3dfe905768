#include "antisym/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "antisym/errors.hpp"

namespace antisym {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != header_.size()) throw UsageError("CsvWriter: row width does not match header");
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_double(values[i]);
  }
  lines_.push_back(std::move(line));
  return *this;
}

std::string CsvWriter::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void CsvWriter::write(std::ostream& os) const {
  for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
  os << '\n';
  for (const auto& l : lines_) os << l << '\n';
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  write(f);
}

namespace {

constexpr std::array<std::pair<Command, const char*>, 12> kCommands{{
    {Command::constants, "constants"},
    {Command::norms, "norms"},
    {Command::fraclap, "fraclap"},
    {Command::poisson, "poisson"},
    {Command::meanvalue, "meanvalue"},
    {Command::psi, "psi"},
    {Command::barrier, "barrier"},
    {Command::harnack_boundary, "harnack_boundary"},
    {Command::harnack_interior, "harnack_interior"},
    {Command::harnack_battery, "harnack_battery"},
    {Command::counterexample, "counterexample"},
    {Command::validate_all, "validate_all"},
}};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [k, name] : kCommands)
    if (k == c) return name;
  throw UsageError("unknown command");
}

Command command_from_string(const std::string& name) {
  for (const auto& [k, n] : kCommands)
    if (name == n) return k;
  throw UsageError("unknown command: " + name);
}

json to_json(const Params& p) { return json{{"n", p.n}, {"s", p.s}}; }

Params params_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("params must be an object");
  Params p;
  p.n = get_or(j, "n", 1);
  p.s = get_or(j, "s", 0.5);
  p.validate();
  return p;
}

json to_json(const quad::QuadSpec& q) {
  return json{{"rel_tol", q.rel_tol},
              {"abs_tol", q.abs_tol},
              {"max_subdivision_depth", q.max_subdivision_depth},
              {"truncation_radius", q.truncation_radius},
              {"pv_excision", q.pv_excision},
              {"angular_points", q.angular_points},
              {"max_evaluations", q.max_evaluations}};
}

quad::QuadSpec quad_from_json(const json& j, int n) {
  quad::QuadSpec q = quad::QuadSpec::defaults(n);
  if (j.is_null()) return q;
  if (!j.is_object()) throw UsageError("quad must be an object");
  q.rel_tol = get_or(j, "rel_tol", q.rel_tol);
  q.abs_tol = get_or(j, "abs_tol", q.abs_tol);
  q.max_subdivision_depth = get_or(j, "max_subdivision_depth", q.max_subdivision_depth);
  q.truncation_radius = get_or(j, "truncation_radius", q.truncation_radius);
  q.pv_excision = get_or(j, "pv_excision", q.pv_excision);
  q.angular_points = get_or(j, "angular_points", q.angular_points);
  q.max_evaluations = get_or(j, "max_evaluations", q.max_evaluations);
  q.validate();
  return q;
}

json to_json(const RunConfig& c) {
  json j{{"command", to_string(c.command)},
         {"params", to_json(c.params)},
         {"quad", to_json(c.quad)},
         {"seeds", c.seeds},
         {"output_path", c.output_path},
         {"format", c.format == OutputFormat::csv ? "csv" : "json"},
         {"x", c.x},
         {"radius", c.radius},
         {"rho", c.rho},
         {"grid_n", c.grid_n},
         {"ks", c.ks},
         {"bump_count", c.bump_count},
         {"zeta1_transition", c.zeta1_transition},
         {"zeta2_transition", c.zeta2_transition},
         {"allow_near_boundary", c.allow_near_boundary}};
  j["field"] = c.field ? to_json(*c.field) : json(nullptr);
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  c.command = command_from_string(get_or<std::string>(j, "command", "constants"));
  c.params = j.contains("params") ? params_from_json(j.at("params")) : Params{};
  c.quad = quad_from_json(j.contains("quad") ? j.at("quad") : json(nullptr), c.params.n);
  if (j.contains("field") && !j.at("field").is_null()) {
    try {
      c.field = field_from_json(j.at("field"));
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key 'field': ") + e.what());
    }
    if (c.field->dim() != c.params.n) throw UsageError("field dimension does not match params.n");
  }
  c.seeds = get_or(j, "seeds", c.seeds);
  c.output_path = get_or(j, "output_path", c.output_path);
  const auto fmt = get_or<std::string>(j, "format", "json");
  if (fmt != "csv" && fmt != "json") throw UsageError("format must be csv or json");
  c.format = fmt == "csv" ? OutputFormat::csv : OutputFormat::json;
  c.x = get_or(j, "x", c.x);
  c.radius = get_or(j, "radius", c.radius);
  c.rho = get_or(j, "rho", c.rho);
  c.grid_n = get_or(j, "grid_n", c.grid_n);
  c.ks = get_or(j, "ks", c.ks);
  c.bump_count = get_or(j, "bump_count", c.bump_count);
  c.zeta1_transition = get_or(j, "zeta1_transition", c.zeta1_transition);
  c.zeta2_transition = get_or(j, "zeta2_transition", c.zeta2_transition);
  c.allow_near_boundary = get_or(j, "allow_near_boundary", c.allow_near_boundary);
  if (!c.x.empty() && static_cast<int>(c.x.size()) != c.params.n)
    throw UsageError("x must have params.n coordinates");
  if (!(c.radius > 0.0)) throw UsageError("radius must be positive");
  if (c.grid_n < 0) throw UsageError("grid_n must be nonnegative");
  if (c.bump_count < 1) throw UsageError("bump_count must be positive");
  return c;
}

}  // namespace antisym
