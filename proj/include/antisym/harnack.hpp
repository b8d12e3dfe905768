#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antisym/fields.hpp"
#include "antisym/poisson.hpp"
#include "antisym/quad.hpp"

namespace antisym {

struct HarnackReport {
  double sup_quotient = 0.0;
  double inf_quotient = 0.0;
  double ratio = 0.0;
  double anorm_value = 0.0;
  double c_lower = 0.0;
  double c_upper = 0.0;
  std::string grid_spec;
  std::uint64_t seed = 0;
  long points = 0;
  /// True when u vanishes on the grid (zero data).
  bool degenerate = false;
};

/// Default lattice resolution: 64 for n <= 2, 32 for n = 3.
int default_grid_n(int n);

/// Weighted half-space norm of the s-harmonic function tabulated in `u`.
double anorm_of_solution(const PoissonSolution& u, const Params& p, const quad::QuadSpec& q);

/// u = s-harmonic extension of g into B_1; sup and inf of u(x)/x1 over the lattice
/// (step 1/grid_n) of the closed half-ball of radius 1/2 with x1 >= 1/grid_n.
HarnackReport boundary_quotient_profile(const FieldSpec& g, const Params& p, const quad::QuadSpec& q, int grid_n,
                                        std::uint64_t seed = 0);

/// u = s-harmonic extension of g into B_2; sup and inf of u over the lattice of the
/// closed ball B_{rho/2}(e1), rho <= 0.5.
HarnackReport interior_harnack_check(const FieldSpec& g, double rho, const Params& p, const quad::QuadSpec& q,
                                     int grid_n, std::uint64_t seed = 0);

struct BatterySummary {
  std::vector<HarnackReport> reports;
  double band_lower = 0.0;  ///< min c_lower
  double band_upper = 0.0;  ///< max c_upper
  double max_ratio = 0.0;
  bool all_positive = true;
};

enum class BatteryKind { Boundary, Interior };

/// Reports for random nonnegative antisymmetric data, one per seed.
BatterySummary comparability_battery(const std::vector<std::uint64_t>& seeds, const Params& p,
                                     const quad::QuadSpec& q, int grid_n, BatteryKind kind = BatteryKind::Boundary,
                                     int bump_count = 4, double rho = 0.5);

struct CounterexampleOptions {
  /// Width of the transition of the first cutoff (1 on x1 <= -width, 0 on x1 >= 0).
  double zeta1_transition = 1.0;
  /// Width of the transition shell of the second cutoff outside B_{1/2}(-2e1).
  double zeta2_transition = 0.5;
  /// Fraction of the ball radius covered by the evaluation lattice.
  double trusted_fraction = kTrustedFraction;
};

struct CounterexampleRun {
  double m_bar = 0.0;
  double m_bar_bisection = 0.0;
  double grid_quantum = 0.0;
  Point argmin;
  bool argmin_in_half_ball = false;
  std::vector<int> ks;
  std::vector<double> sups, infs, ratios;
  double min_u = 0.0;  ///< smallest u_k over all samples and ks
  double max_u = 0.0;  ///< largest u_k over all samples and ks
  std::string grid_spec;
  long points = 0;
};

/// Non-antisymmetric data on B_1(2e1): v from the first cutoff, w from the second,
/// M_bar = min over the lattice of v/w, u_k = v - (M_bar - 1/k) w.
CounterexampleRun counterexample_run(const std::vector<int>& ks, const Params& p, const quad::QuadSpec& q,
                                     int grid_n, const CounterexampleOptions& opt = {});

}  // namespace antisym
