#include "antisym/poisson.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "antisym/fraclap.hpp"
#include "antisym/parallel.hpp"
#include "antisym/special.hpp"
#include "rays.hpp"

namespace antisym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reach_about(const FieldSpec& g, const Point& c) {
  return g.meta().support_radius ? *g.meta().support_radius + c.norm() : kInf;
}

void check_point(const BallProblem& bp, const Point& xl, bool allow, const char* what) {
  const double d = xl.norm();
  if (!(d < bp.radius)) throw UsageError(std::string(what) + ": evaluation point must lie inside the ball");
  if (!allow && d > kTrustedFraction * bp.radius)
    throw NumericalRejection(std::string(what) + ": |x| > 0.95 r is outside the trusted region");
}

}  // namespace

BallProblem::BallProblem(double r, FieldSpec g, Params p) : BallProblem(r, std::move(g), p, Point(p.n)) {}

BallProblem::BallProblem(double r, FieldSpec g, Params p, Point c)
    : radius(r), data(std::move(g)), params(p), center(c) {
  params.validate();
  if (!(radius > 0.0)) throw UsageError("BallProblem: radius must be positive");
  if (data.dim() != params.n) throw UsageError("BallProblem: data dimension does not match n");
  require_dim(center, params.n, "BallProblem centre");
}

quad::Estimate poisson_eval_estimate(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                                     bool allow_near_boundary) {
  const Params& p = bp.params;
  require_dim(x, p.n, "poisson_eval");
  const Point xl = x - bp.center;
  check_point(bp, xl, allow_near_boundary, "poisson_eval");
  const FieldSpec& g = bp.data;
  const double reach = reach_about(g, bp.center);
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 2.0 * p.s))
    throw NumericalRejection("poisson_eval: exterior data not in the tail-weighted L^1 class; use the antisymmetric route");
  const double r = bp.radius;
  quad::IntegrandShape shape;
  shape.reach = reach;
  shape.length_scale = std::min(g.meta().length_scale, r - xl.norm());
  const quad::TailModel tail{1.0 + 2.0 * p.s - decay, 1.0};
  quad::Estimate est = quad::integrate_exterior_ball(
      [&](const Point& yl) {
        const double v = evaluate(g, bp.center + yl);
        return v == 0.0 ? 0.0 : v * std::pow(distance2(xl, yl), -0.5 * p.n);
      },
      r, p, q, tail, shape);
  const double k = special::gamma_ns(p) * std::pow((r - xl.norm()) * (r + xl.norm()), p.s);
  est.value *= k;
  est.error *= k;
  return est;
}

double poisson_eval(const BallProblem& bp, const Point& x, const quad::QuadSpec& q, bool allow_near_boundary) {
  return poisson_eval_estimate(bp, x, q, allow_near_boundary).value;
}

quad::Estimate poisson_eval_antisym_estimate(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                                             bool allow_near_boundary) {
  const Params& p = bp.params;
  require_dim(x, p.n, "poisson_eval_antisym");
  const FieldSpec& g = bp.data;
  if (!g.meta().antisymmetric)
    throw NumericalRejection("poisson_eval_antisym: exterior data '" + g.family_name() + "' is not antisymmetric");
  if (bp.center[0] != 0.0) throw UsageError("poisson_eval_antisym: ball centre must lie on the plane x1 = 0");
  if (x[0] < 0.0) throw UsageError("poisson_eval_antisym: x must lie in the closed half-space");
  const Point xl = x - bp.center;
  check_point(bp, xl, allow_near_boundary, "poisson_eval_antisym");
  if (x[0] == 0.0) return {};
  const double reach = reach_about(g, bp.center);
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s))
    throw NumericalRejection("poisson_eval_antisym: weighted half-space norm of the data diverges");
  const double r = bp.radius;
  quad::IntegrandShape shape;
  shape.reach = reach;
  shape.length_scale = std::min(g.meta().length_scale, r - xl.norm());
  shape.half_space = true;
  const quad::TailModel tail{2.0 + 2.0 * p.s - decay, 1.0};
  quad::Estimate est = quad::integrate_exterior_ball(
      [&](const Point& yl) {
        const Point y = bp.center + yl;
        if (!(y[0] > 0.0)) return 0.0;
        const double v = evaluate(g, y);
        return v == 0.0 ? 0.0 : v * kernel_difference_exp(xl, yl, p.n);
      },
      r, p, q, tail, shape);
  const double k = special::gamma_ns(p) * std::pow((r - xl.norm()) * (r + xl.norm()), p.s);
  est.value *= k;
  est.error *= k;
  return est;
}

double poisson_eval_antisym(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                            bool allow_near_boundary) {
  return poisson_eval_antisym_estimate(bp, x, q, allow_near_boundary).value;
}

// ---------------------------------------------------------------------------

PoissonSolution::PoissonSolution(const FieldSpec& g, double R, const Params& p, const quad::QuadSpec& q, double h)
    : g_(g), R_(R), h_(h), n_(p.n), antisym_(g.meta().antisymmetric) {
  p.validate();
  if (!(R > 0.0 && h > 0.0 && h < R)) throw UsageError("PoissonSolution: need 0 < h < R");
  if (g.dim() != p.n) throw UsageError("PoissonSolution: data dimension does not match n");
  m_ = static_cast<int>(std::ceil(R / h - 1e-9)) + 1;
  lo1_ = antisym_ ? 0 : -m_;
  const int n1 = m_ - lo1_ + 1;
  const int side = 2 * m_ + 1;
  long total = n1;
  for (int k = 1; k < n_; ++k) total *= side;
  values_.assign(total, 0.0);
  const BallProblem bp(R, g, p);
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t flat) {
    long t = static_cast<long>(flat);
    Point y(n_);
    y[0] = (lo1_ + static_cast<int>(t % n1)) * h_;
    t /= n1;
    for (int k = 1; k < n_; ++k) {
      y[k] = (static_cast<int>(t % side) - m_) * h_;
      t /= side;
    }
    const double d = y.norm();
    if (d >= R_ * (1.0 - 1e-9)) {
      values_[flat] = evaluate(g_, y);
    } else if (antisym_) {
      values_[flat] = poisson_eval_antisym(bp, y, q, true);
    } else {
      values_[flat] = poisson_eval(bp, y, q, true);
    }
  });
}

double PoissonSolution::node(const std::array<int, kMaxDim>& idx) const {
  const int n1 = m_ - lo1_ + 1;
  const int side = 2 * m_ + 1;
  long flat = 0;
  for (int k = n_ - 1; k >= 1; --k) flat = flat * side + (idx[k] + m_);
  flat = flat * n1 + (idx[0] - lo1_);
  return values_[flat];
}

double PoissonSolution::operator()(const Point& y) const {
  require_dim(y, n_, "PoissonSolution");
  if (y.norm2() >= R_ * R_) return evaluate(g_, y);
  if (antisym_ && y[0] < 0.0) return -(*this)(reflect(y));
  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int k = 0; k < n_; ++k) {
    const double t = y[k] / h_;
    int i = static_cast<int>(std::floor(t));
    const int lo = k == 0 ? lo1_ : -m_;
    i = std::clamp(i, lo, m_ - 1);
    base[k] = i;
    frac[k] = t - i;
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << n_); ++corner) {
    std::array<int, kMaxDim> idx = base;
    double w = 1.0;
    for (int k = 0; k < n_; ++k) {
      const bool up = (corner >> k) & 1;
      idx[k] += up ? 1 : 0;
      w *= up ? frac[k] : 1.0 - frac[k];
    }
    if (w != 0.0) acc += w * node(idx);
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

/// int_{|y|>r} f(y) (|y|^2-r^2)^{-s} dy with the integrand built from u(y); kinks at |y| = 1 expected.
quad::Estimate exterior_with_solution(const std::function<double(const Point&)>& f, double r, const Params& p,
                                      const quad::QuadSpec& q, double tail_q, double reach, double scale,
                                      bool half) {
  quad::IntegrandShape shape;
  shape.reach = reach;
  shape.length_scale = scale;
  shape.half_space = half;
  return quad::integrate_exterior_ball(f, r, p, q, quad::TailModel{tail_q, 1.0}, shape);
}

}  // namespace

double mean_value_classic(const FieldSpec& g, double r, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  if (!(r > 0.0)) throw UsageError("mean_value_classic: r must be positive");
  if (g.dim() != p.n) throw UsageError("mean_value_classic: data dimension does not match n");
  const double reach = reach_about(g, Point(p.n));
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 2.0 * p.s))
    throw NumericalRejection("mean_value_classic: data not in the tail-weighted L^1 class");
  if (reach <= r) return 0.0;
  std::unique_ptr<PoissonSolution> u;
  if (r < 1.0) u = std::make_unique<PoissonSolution>(g, 1.0, p, q);
  const quad::Estimate est = exterior_with_solution(
      [&](const Point& y) {
        const double v = u ? (*u)(y) : evaluate(g, y);
        return v == 0.0 ? 0.0 : v * std::pow(y.norm2(), -0.5 * p.n);
      },
      r, p, q, 1.0 + 2.0 * p.s - decay, reach, std::min({1.0, g.meta().length_scale, u ? u->step() : 1.0}), false);
  return special::gamma_ns(p) * std::pow(r, 2.0 * p.s) * est.value;
}

double mean_value_antisym_gradient(const FieldSpec& g, double r, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  if (!(r > 0.0 && r <= 1.0)) throw UsageError("mean_value_antisym_gradient: r must lie in (0,1]");
  if (g.dim() != p.n) throw UsageError("mean_value_antisym_gradient: data dimension does not match n");
  if (!g.meta().antisymmetric) throw NumericalRejection("mean_value_antisym_gradient: data is not antisymmetric");
  const double reach = reach_about(g, Point(p.n));
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s))
    throw NumericalRejection("mean_value_antisym_gradient: weighted half-space norm of the data diverges");
  if (reach <= r) return 0.0;
  std::unique_ptr<PoissonSolution> u;
  if (r < 1.0) u = std::make_unique<PoissonSolution>(g, 1.0, p, q);
  const quad::Estimate est = exterior_with_solution(
      [&](const Point& y) {
        if (!(y[0] > 0.0)) return 0.0;
        const double v = u ? (*u)(y) : evaluate(g, y);
        return v == 0.0 ? 0.0 : y[0] * v * std::pow(y.norm2(), -0.5 * (p.n + 2.0));
      },
      r, p, q, 2.0 + 2.0 * p.s - decay, reach, std::min({1.0, g.meta().length_scale, u ? u->step() : 1.0}), true);
  return 2.0 * p.n * special::gamma_ns(p) * std::pow(r, 2.0 * p.s) * est.value;
}

// ---------------------------------------------------------------------------

namespace {

const quad::GaussRule& cached_rule(int npts, double alpha, double beta) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, quad::GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(npts, alpha, beta);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, quad::gauss_jacobi(npts, alpha, beta)).first;
  return it->second;
}

/// int_0^m rho^a (1-rho^2)^{-s} d rho with an N-point rule.
double psi_integral(double m, double a, double s, int N) {
  auto full = [&]() {
    // rho = (1+xi)/2: rho^a (1-rho)^{-s} = 2^{s-a} (1+xi)^a (1-xi)^{-s}.
    const quad::GaussRule& g = cached_rule(N, -s, a);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double rho = 0.5 * (1.0 + g.nodes[i]);
      acc += g.weights[i] * std::pow(1.0 + rho, -s);
    }
    return acc * std::pow(2.0, s - a) * 0.5;
  };
  if (m >= 1.0) return full();
  if (m <= 0.5) {
    const quad::GaussRule& g = cached_rule(N, 0.0, a);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double t = 0.5 * (1.0 + g.nodes[i]);
      const double rho = m * t;
      acc += g.weights[i] * std::pow(1.0 - rho * rho, -s);
    }
    return acc * std::pow(m, a + 1.0) * std::pow(2.0, -a) * 0.5;
  }
  // Complement on [m,1]: rho = m + (1-m)(1+xi)/2, 1-rho = (1-m)(1-xi)/2.
  const quad::GaussRule& g = cached_rule(N, -s, 0.0);
  double acc = 0.0;
  for (int i = 0; i < N; ++i) {
    const double rho = m + (1.0 - m) * 0.5 * (1.0 + g.nodes[i]);
    acc += g.weights[i] * std::pow(rho, a) * std::pow(1.0 + rho, -s);
  }
  const double tail = acc * std::pow(0.5 * (1.0 - m), 1.0 - s);
  return full() - tail;
}

}  // namespace

double psi_radial(double t, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  if (!(t >= 0.0)) throw UsageError("psi_radial: |y| must be nonnegative");
  const double m = t > 1.0 ? 1.0 / t : 1.0;
  const double a = 2.0 * p.s + p.n + 1.0;
  double prev = psi_integral(m, a, p.s, 24);
  double cur = prev;
  for (int N = 48; N <= 768; N *= 2) {
    cur = psi_integral(m, a, p.s, N);
    if (std::abs(cur - prev) <= std::max(q.rel_tol * std::abs(cur), 1e-300)) break;
    prev = cur;
  }
  return p.n * (p.n + 2.0) * special::gamma_ns(p) * cur;
}

double psi_eval(const Point& y, const Params& p, const quad::QuadSpec& q) {
  require_dim(y, p.n, "psi_eval");
  return psi_radial(y.norm(), p, q);
}

double gradient_via_psi(const PoissonSolution& u, const Params& p, const quad::QuadSpec& q) {
  using namespace quad;
  const FieldSpec& g = u.data();
  if (!u.antisymmetric()) throw NumericalRejection("gradient_via_psi: data is not antisymmetric");
  if (u.radius() != 1.0) throw UsageError("gradient_via_psi: solution must live in the unit ball");
  const double reach = reach_about(g, Point(p.n));
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s))
    throw NumericalRejection("gradient_via_psi: weighted half-space norm of the data diverges");
  const double psi0 = psi_radial(0.0, p, q);
  std::vector<RadialMap> maps{RadialMap::linear(0.0, 1.0)};
  for (const auto& m : detail::outward(1.0, 1.0, reach, q.truncation_radius, 2.0 + 2.0 * p.s - decay))
    maps.push_back(m);
  std::vector<RaySegment> segs;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const double scale = i == 0 ? u.step() : std::min(1.0, g.meta().length_scale);
    segs.push_back({maps[i], Hemisphere::Upper, detail::radial_cells(maps[i], scale, p.n), q.angular_cells()});
  }
  const Estimate est = ray_integral(
      p.n, segs,
      [&](const RayPoint& r) {
        const Point y = r.rho * r.omega;
        if (r.segment == 0) return y[0] * psi0 * u(y);
        const double v = evaluate(g, y);
        return v == 0.0 ? 0.0 : y[0] * psi_radial(r.rho, p, q) * v;
      },
      q);
  return 2.0 * est.value;
}

double gradient_via_psi(const FieldSpec& g, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  if (!g.meta().antisymmetric) throw NumericalRejection("gradient_via_psi: data is not antisymmetric");
  if (g.meta().support_radius && *g.meta().support_radius == 0.0) return 0.0;
  const PoissonSolution u(g, 1.0, p, q);
  return gradient_via_psi(u, p, q);
}

double barrier_phi3(const Point& x, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  require_dim(x, p.n, "barrier_phi3");
  if (!(x.norm() < 1.0)) throw UsageError("barrier_phi3: x must lie in the unit ball");
  if (x[0] < 0.0) return -barrier_phi3(reflect(x), p, q);
  const BallProblem bp(1.0, make::odd_step(p.n), p);
  return poisson_eval_antisym(bp, x, q);
}

}  // namespace antisym
