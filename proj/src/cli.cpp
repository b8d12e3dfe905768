#include "antisym/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "antisym/errors.hpp"
#include "antisym/fields.hpp"
#include "antisym/fraclap.hpp"
#include "antisym/harnack.hpp"
#include "antisym/norms.hpp"
#include "antisym/poisson.hpp"
#include "antisym/special.hpp"
#include "antisym/validation.hpp"

namespace antisym::cli {

using nlohmann::json;

namespace {

constexpr double kCliSMin = 0.05;
constexpr double kCliSMax = 0.95;

Point point_of(const RunConfig& c) {
  Point x(c.params.n);
  for (int k = 0; k < c.params.n; ++k) x[k] = c.x[k];
  return x;
}

FieldSpec field_or(const RunConfig& c, FieldSpec fallback) { return c.field ? *c.field : std::move(fallback); }

std::uint64_t first_seed(const RunConfig& c) { return c.seeds.empty() ? 1 : c.seeds.front(); }

/// Points on the segment (0, 1/2] e1, or the configured point.
std::vector<Point> eval_points(const RunConfig& c) {
  if (!c.x.empty()) return {point_of(c)};
  std::vector<Point> pts;
  for (int i = 1; i <= 64; ++i) pts.push_back(Point::axis(c.params.n, 0.5 * i / 64.0));
  return pts;
}

std::vector<std::string> coord_header(int n, std::vector<std::string> tail) {
  std::vector<std::string> h;
  for (int k = 1; k <= n; ++k) h.push_back("x" + std::to_string(k));
  h.insert(h.end(), tail.begin(), tail.end());
  return h;
}

std::vector<double> coord_row(const Point& x, std::initializer_list<double> tail) {
  std::vector<double> r(x.coords().begin(), x.coords().end());
  r.insert(r.end(), tail);
  return r;
}

json report_json(const HarnackReport& r) {
  return json{{"seed", r.seed},           {"sup_quotient", r.sup_quotient}, {"inf_quotient", r.inf_quotient},
              {"ratio", r.ratio},         {"anorm", r.anorm_value},         {"c_lower", r.c_lower},
              {"c_upper", r.c_upper},     {"grid_spec", r.grid_spec},       {"points", r.points},
              {"degenerate", r.degenerate}};
}

std::vector<double> report_row(const HarnackReport& r) {
  return {static_cast<double>(r.seed), r.sup_quotient, r.inf_quotient, r.ratio, r.anorm_value, r.c_lower, r.c_upper};
}

const std::vector<std::string> kHarnackHeader{"seed", "sup_q", "inf_q", "ratio", "anorm", "c_lower", "c_upper"};

struct Outcome {
  json summary;
  std::optional<CsvWriter> csv;
  bool ok = true;
};

Outcome execute(const RunConfig& c) {
  const Params& p = c.params;
  const quad::QuadSpec& q = c.quad;
  const int grid_n = c.grid_n > 0 ? c.grid_n : default_grid_n(p.n);
  Outcome o;
  switch (c.command) {
    case Command::constants: {
      o.summary = {{"c_ns", special::c_ns(p)},
                   {"gamma_ns", special::gamma_ns(p)},
                   {"tilde_c", special::tilde_c_ns(p)},
                   {"halfspace_integral", special::halfspace_integral_closed(p)}};
      break;
    }
    case Command::norms: {
      const FieldSpec f = field_or(c, make::monomial_x1(p.n));
      for (const auto& [name, fn] : std::vector<std::pair<const char*, double (*)(const FieldSpec&, const Params&,
                                                                                  const quad::QuadSpec&)>>{
               {"anorm", &anorm}, {"lsnorm", &lsnorm}}) {
        try {
          o.summary[name] = fn(f, p, q);
        } catch (const NumericalRejection& e) {
          o.summary[name] = nullptr;
          o.summary[std::string(name) + "_error"] = e.what();
          o.ok = false;
        }
      }
      break;
    }
    case Command::fraclap: {
      if (c.x.empty()) throw UsageError("fraclap needs an evaluation point (--x)");
      const FieldSpec f = field_or(c, make::odd_cubic_bump(p.n));
      const Point x = point_of(c);
      const FraclapResult r =
          f.meta().antisymmetric && x[0] > 0.0 ? antisym_fraclap_eval(f, x, p, q) : classical_fraclap_eval(f, x, p, q);
      o.summary = {{"value", r.value}, {"error_bound", r.error_bound}, {"route", r.route}};
      break;
    }
    case Command::poisson: {
      const FieldSpec g = field_or(c, make::monomial_x1(p.n));
      const BallProblem bp(c.radius, g, p);
      const bool anti = g.meta().antisymmetric;
      CsvWriter csv(coord_header(p.n, {"value", "error_bound"}));
      json rows = json::array();
      for (const Point& x : eval_points(c)) {
        const Point y = c.x.empty() ? c.radius * x : x;
        const auto e = anti && y[0] >= 0.0 ? poisson_eval_antisym_estimate(bp, y, q, c.allow_near_boundary)
                                           : poisson_eval_estimate(bp, y, q, c.allow_near_boundary);
        csv.row(coord_row(y, {e.value, e.error}));
        rows.push_back({{"x", y.coords()}, {"value", e.value}, {"error_bound", e.error}});
      }
      o.summary = {{"radius", c.radius}, {"route", anti ? "antisymmetric" : "classical"}, {"points", rows}};
      o.csv = std::move(csv);
      break;
    }
    case Command::meanvalue: {
      const FieldSpec g = field_or(c, make::monomial_x1(p.n));
      std::vector<double> radii{0.25, 0.5, 1.0};
      if (c.radius != 1.0) radii = {c.radius};
      const bool anti = g.meta().antisymmetric;
      CsvWriter csv({"r", "value"});
      json rows = json::array();
      for (double r : radii) {
        const double v = anti ? mean_value_antisym_gradient(g, r, p, q) : mean_value_classic(g, r, p, q);
        csv.row({r, v});
        rows.push_back({{"r", r}, {"value", v}});
      }
      o.summary = {{"formula", anti ? "antisymmetric_gradient" : "classic"}, {"values", rows}};
      o.csv = std::move(csv);
      break;
    }
    case Command::psi: {
      CsvWriter csv({"abs_y", "psi"});
      json rows = json::array();
      std::vector<double> radii;
      if (!c.x.empty()) {
        radii.push_back(point_of(c).norm());
      } else {
        radii.push_back(0.0);
        for (int i = 0; i < 64; ++i) radii.push_back(std::pow(10.0, -3.0 + 5.0 * i / 63.0));
      }
      for (double t : radii) {
        const double v = psi_radial(t, p, q);
        csv.row({t, v});
        rows.push_back({{"abs_y", t}, {"psi", v}});
      }
      o.summary = {{"values", rows}};
      if (c.field) o.summary["gradient_via_psi"] = gradient_via_psi(*c.field, p, q);
      o.csv = std::move(csv);
      break;
    }
    case Command::barrier: {
      CsvWriter csv(coord_header(p.n, {"value", "quotient"}));
      double lo = INFINITY, hi = 0.0;
      for (const Point& x : eval_points(c)) {
        const double v = barrier_phi3(x, p, q);
        const double r = x[0] > 0.0 ? v / x[0] : NAN;
        csv.row(coord_row(x, {v, r}));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      o.summary = {{"min_quotient", lo}, {"max_quotient", hi}, {"ratio", hi / lo}};
      o.ok = lo > 0.0;
      o.csv = std::move(csv);
      break;
    }
    case Command::harnack_boundary:
    case Command::harnack_interior: {
      const std::uint64_t seed = first_seed(c);
      const FieldSpec g = field_or(c, random_nonneg_antisym(seed, c.bump_count, p));
      const HarnackReport r = c.command == Command::harnack_boundary
                                  ? boundary_quotient_profile(g, p, q, grid_n, seed)
                                  : interior_harnack_check(g, c.rho, p, q, grid_n, seed);
      o.summary = report_json(r);
      o.ok = !r.degenerate && r.inf_quotient > 0.0;
      CsvWriter csv(kHarnackHeader);
      csv.row(report_row(r));
      o.csv = std::move(csv);
      break;
    }
    case Command::harnack_battery: {
      std::vector<std::uint64_t> seeds = c.seeds;
      if (seeds.empty())
        for (std::uint64_t s = 1; s <= 50; ++s) seeds.push_back(s);
      const auto b = comparability_battery(seeds, p, q, grid_n, BatteryKind::Boundary, c.bump_count, c.rho);
      CsvWriter csv(kHarnackHeader);
      for (const auto& r : b.reports) csv.row(report_row(r));
      o.summary = {{"seeds", seeds.size()},       {"band_lower", b.band_lower}, {"band_upper", b.band_upper},
                   {"max_ratio", b.max_ratio},    {"all_positive", b.all_positive},
                   {"grid_spec", b.reports.empty() ? "" : b.reports.front().grid_spec}};
      o.ok = b.all_positive;
      o.csv = std::move(csv);
      break;
    }
    case Command::counterexample: {
      CounterexampleOptions opt;
      opt.zeta1_transition = c.zeta1_transition;
      opt.zeta2_transition = c.zeta2_transition;
      const auto r = counterexample_run(c.ks, p, q, c.grid_n > 0 ? c.grid_n : 16, opt);
      CsvWriter csv({"k", "m_bar", "sup", "inf", "ratio"});
      for (std::size_t i = 0; i < r.ks.size(); ++i) csv.row({double(r.ks[i]), r.m_bar, r.sups[i], r.infs[i], r.ratios[i]});
      const bool agree = std::abs(r.m_bar - r.m_bar_bisection) <= r.grid_quantum;
      o.summary = {{"m_bar", r.m_bar},
                   {"m_bar_bisection", r.m_bar_bisection},
                   {"grid_quantum", r.grid_quantum},
                   {"argmin", r.argmin.coords()},
                   {"argmin_in_half_ball", r.argmin_in_half_ball},
                   {"ks", r.ks},
                   {"ratios", r.ratios},
                   {"min_u", r.min_u},
                   {"max_u", r.max_u},
                   {"grid_spec", r.grid_spec}};
      o.ok = agree && r.min_u >= 0.0 && r.max_u <= 1.0;
      o.csv = std::move(csv);
      break;
    }
    case Command::validate_all: {
      const ValidationReport r = validate_all(p, q);
      o.summary = to_json(r);
      o.ok = r.all_passed();
      break;
    }
  }
  return o;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  config.params.validate();
  config.quad.validate();
  Outcome o = execute(config);
  json summary{{"command", to_string(config.command)}, {"params", to_json(config.params)}, {"ok", o.ok},
               {"result", o.summary}};
  if (!config.output_path.empty()) {
    if (config.format == OutputFormat::csv && o.csv) {
      o.csv->save(config.output_path);
    } else {
      std::ofstream f(config.output_path, std::ios::binary);
      if (!f) throw UsageError("cannot open output file: " + config.output_path);
      f << summary.dump(2) << '\n';
    }
  } else if (config.format == OutputFormat::csv && o.csv) {
    o.csv->write(out);
    return o.ok ? 0 : 1;
  }
  out << summary.dump(2) << '\n';
  return o.ok ? 0 : 1;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + what + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"antisymmetric fractional Laplacian experiments"};
  app.require_subcommand(0, 1);
  std::string config_path, field_text, format;
  std::optional<int> n, grid_n, bump_count, angular_points, depth;
  std::optional<long> max_evals;
  std::optional<double> s, rel_tol, abs_tol, truncation, pv, radius, rho, z1, z2;
  std::vector<double> x;
  std::vector<std::uint64_t> seeds;
  std::vector<int> ks;
  std::string output;
  bool near = false;

  auto add_common = [&](CLI::App* a) {
    a->add_option("--config", config_path, "JSON run configuration; flags override it");
    a->add_option("--n", n, "dimension (1..3)");
    a->add_option("--s", s, "fractional order in [0.05, 0.95]");
    a->add_option("--rel-tol", rel_tol);
    a->add_option("--abs-tol", abs_tol);
    a->add_option("--max-depth", depth);
    a->add_option("--truncation-radius", truncation);
    a->add_option("--pv-excision", pv);
    a->add_option("--angular-points", angular_points);
    a->add_option("--max-evaluations", max_evals);
    a->add_option("--field", field_text, "field JSON, or @path to a JSON file");
    a->add_option("--x", x, "evaluation point coordinates")->delimiter(',');
    a->add_option("--seeds", seeds, "seed list")->delimiter(',');
    a->add_option("--ks", ks, "k values for the counterexample")->delimiter(',');
    a->add_option("--radius", radius);
    a->add_option("--rho", rho);
    a->add_option("--grid-n", grid_n);
    a->add_option("--bump-count", bump_count);
    a->add_option("--zeta1-transition", z1);
    a->add_option("--zeta2-transition", z2);
    a->add_option("--output", output, "artifact path");
    a->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    a->add_flag("--allow-near-boundary", near);
  };
  add_common(&app);

  std::optional<Command> chosen;
  auto leaf = [&](CLI::App* parent, const std::string& name, Command cmd, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    sub->callback([&chosen, cmd] { chosen = cmd; });
    return sub;
  };
  leaf(&app, "constants", Command::constants, "normalizing constants");
  leaf(&app, "norms", Command::norms, "weighted half-space and tail norms of a field");
  leaf(&app, "fraclap", Command::fraclap, "fractional Laplacian at a point");
  leaf(&app, "poisson", Command::poisson, "Poisson-kernel extension into a ball");
  leaf(&app, "meanvalue", Command::meanvalue, "mean-value formulas");
  leaf(&app, "psi", Command::psi, "psi weight function");
  leaf(&app, "barrier", Command::barrier, "barrier phi3 profile");
  CLI::App* harnack = app.add_subcommand("harnack", "Harnack experiments");
  harnack->require_subcommand(1);
  leaf(harnack, "boundary", Command::harnack_boundary, "boundary quotient profile");
  leaf(harnack, "interior", Command::harnack_interior, "interior Harnack check");
  leaf(harnack, "battery", Command::harnack_battery, "comparability battery over seeds");
  leaf(&app, "counterexample", Command::counterexample, "construction without antisymmetry");
  leaf(&app, "validate_all", Command::validate_all, "acceptance suite")->alias("validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    json j = config_path.empty() ? json::object() : parse_json(read_file(config_path), config_path);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    if (chosen) j["command"] = to_string(*chosen);
    if (!j.contains("command")) throw UsageError("no command given (use a subcommand or a config file)");
    json& pj = j["params"];
    if (pj.is_null()) pj = json::object();
    if (n) pj["n"] = *n;
    if (s) pj["s"] = *s;
    json& qj = j["quad"];
    if (qj.is_null()) qj = json::object();
    if (rel_tol) qj["rel_tol"] = *rel_tol;
    if (abs_tol) qj["abs_tol"] = *abs_tol;
    if (depth) qj["max_subdivision_depth"] = *depth;
    if (truncation) qj["truncation_radius"] = *truncation;
    if (pv) qj["pv_excision"] = *pv;
    if (angular_points) qj["angular_points"] = *angular_points;
    if (max_evals) qj["max_evaluations"] = *max_evals;
    if (!field_text.empty())
      j["field"] = field_text[0] == '@' ? parse_json(read_file(field_text.substr(1)), field_text.substr(1))
                                        : parse_json(field_text, "--field");
    if (!x.empty()) j["x"] = x;
    if (!seeds.empty()) j["seeds"] = seeds;
    if (!ks.empty()) j["ks"] = ks;
    if (radius) j["radius"] = *radius;
    if (rho) j["rho"] = *rho;
    if (grid_n) j["grid_n"] = *grid_n;
    if (bump_count) j["bump_count"] = *bump_count;
    if (z1) j["zeta1_transition"] = *z1;
    if (z2) j["zeta2_transition"] = *z2;
    if (!output.empty()) j["output_path"] = output;
    if (!format.empty()) j["format"] = format;
    if (near) j["allow_near_boundary"] = true;

    const RunConfig config = config_from_json(j);
    if (config.params.s < kCliSMin || config.params.s > kCliSMax)
      throw UsageError("s must lie in [0.05, 0.95] on the command line");
    return run(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalRejection& e) {
    err << "numerical rejection: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace antisym::cli
