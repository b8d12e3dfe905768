#include "antisym/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "antisym/prng.hpp"

namespace antisym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double gaussian_reach(const Point& c, double w, double a) {
  const double l = std::log(std::max(a, 0.0) * 1e16);
  return c.norm() + (l > 0.0 ? w * std::sqrt(l) : 0.0);
}

void check_bump(const Point& c, double w, double a, int n, bool antisym) {
  require_dim(c, n, "bump centre");
  if (!(w > 0.0)) throw UsageError("bump width must be positive");
  if (!(a >= 0.0)) throw UsageError("bump amplitude must be nonnegative");
  if (antisym && !(c[0] >= 0.0)) throw UsageError("antisymmetric bump centre must satisfy c1 >= 0");
}

std::vector<family::AntisymGaussianBump> generate_bumps(std::uint64_t seed, int count, double box, int n) {
  SplitMix64 rng(seed);
  std::vector<family::AntisymGaussianBump> bumps;
  bumps.reserve(count);
  for (int i = 0; i < count; ++i) {
    Point c(n);
    do {
      c[0] = rng.uniform(0.2, box);
      for (int k = 1; k < n; ++k) c[k] = rng.uniform(-box, box);
    } while (!(c.norm() < box));
    const double w = std::min(rng.uniform(0.1, 1.0), c[0] / 2.0);
    const double a = rng.uniform(0.5, 2.0);
    bumps.push_back({c, w, a});
  }
  return bumps;
}

FieldMeta compute_meta(int n, Family& fam) {
  using namespace family;
  auto inner_check = [n](const FieldRef& f) -> const FieldSpec& {
    if (!f) throw UsageError("composite field requires an inner field");
    if (f->dim() != n) throw UsageError("inner field dimension mismatch");
    return *f;
  };
  return std::visit(
      overloaded{
          [](Zero&) { return FieldMeta{true, -kInf, 0.0, Smoothness::Smooth, kInf}; },
          [](Constant& c) { return FieldMeta{c.value == 0.0, 0.0, std::nullopt, Smoothness::Smooth, kInf}; },
          [](MonomialX1&) { return FieldMeta{true, 1.0, std::nullopt, Smoothness::Smooth, kInf}; },
          [n](GaussianBump& g) {
            check_bump(g.center, g.width, g.amplitude, n, false);
            return FieldMeta{false, -kInf, gaussian_reach(g.center, g.width, g.amplitude), Smoothness::Smooth,
                             g.width};
          },
          [n](AntisymGaussianBump& g) {
            check_bump(g.center, g.width, g.amplitude, n, true);
            return FieldMeta{true, -kInf, gaussian_reach(g.center, g.width, g.amplitude), Smoothness::Smooth,
                             g.width};
          },
          [n](MirrorBumpSum& m) {
            if (m.count < 1) throw UsageError("MirrorBumpSum: count must be >= 1");
            if (!(m.box > 0.2)) throw UsageError("MirrorBumpSum: box must exceed 0.2");
            m.bumps = generate_bumps(m.seed, m.count, m.box, n);
            double reach = 0.0, len = kInf;
            for (const auto& b : m.bumps) {
              reach = std::max(reach, gaussian_reach(b.center, b.width, b.amplitude));
              len = std::min(len, b.width);
            }
            return FieldMeta{true, -kInf, reach, Smoothness::Smooth, len};
          },
          [](CutoffZeta1& z) {
            if (!(z.transition > 0.0 && z.transition <= 1.0))
              throw UsageError("CutoffZeta1: transition must lie in (0,1]");
            return FieldMeta{false, 0.0, std::nullopt, Smoothness::Smooth, z.transition};
          },
          [](CutoffZeta2& z) {
            if (!(z.transition > 0.0 && z.transition <= 1.5))
              throw UsageError("CutoffZeta2: transition must lie in (0,1.5]");
            return FieldMeta{false, -kInf, 2.5 + z.transition, Smoothness::Smooth, z.transition};
          },
          [](OddCubicBump& b) {
            if (!(b.width > 0.0)) throw UsageError("OddCubicBump: width must be positive");
            return FieldMeta{true, -kInf, b.width, Smoothness::Smooth, b.width / 4.0};
          },
          [](OddStep&) { return FieldMeta{true, 0.0, std::nullopt, Smoothness::Smooth, 1.0}; },
          [&](HalfSpaceRestriction& h) {
            const FieldMeta& m = inner_check(h.inner).meta();
            return FieldMeta{false, m.decay_exponent, m.support_radius,
                             m.antisymmetric ? Smoothness::Lipschitz : Smoothness::Measurable, m.length_scale};
          },
          [&](Antisymmetrized& a) {
            FieldMeta m = inner_check(a.inner).meta();
            m.antisymmetric = true;
            return m;
          },
          [&](ExteriorRestriction& e) {
            const FieldMeta& m = inner_check(e.inner).meta();
            if (!(e.radius > 0.0)) throw UsageError("ExteriorRestriction: radius must be positive");
            if (e.center.dim() == 0) e.center = Point(n);
            require_dim(e.center, n, "ExteriorRestriction centre");
            return FieldMeta{m.antisymmetric && e.center[0] == 0.0, m.decay_exponent, m.support_radius,
                             Smoothness::Measurable, std::min(m.length_scale, e.radius)};
          },
          [&](LinearCombination& l) {
            FieldMeta out{true, -kInf, 0.0, Smoothness::Smooth, kInf};
            for (const auto& [coef, f] : l.terms) {
              const FieldMeta& m = inner_check(f).meta();
              out.antisymmetric = out.antisymmetric && m.antisymmetric;
              out.decay_exponent = std::max(out.decay_exponent, m.decay_exponent);
              if (out.support_radius && m.support_radius)
                out.support_radius = std::max(*out.support_radius, *m.support_radius);
              else
                out.support_radius.reset();
              out.smoothness = std::max(out.smoothness, m.smoothness);
              out.length_scale = std::min(out.length_scale, m.length_scale);
            }
            return out;
          },
      },
      fam);
}

double gauss_value(const Point& x, const Point& c, double w, double a) {
  return a * std::exp(-distance2(x, c) / (w * w));
}

/// 2g(x) - g(x+z) - g(x-z) for g = a exp(-|y-c|^2/w^2).
double gauss_second_difference(const Point& x, const Point& z, const Point& c, double w, double a) {
  const double w2 = w * w;
  const double A = z.norm2() / w2;
  const double B = 2.0 * dot(z, x - c) / w2;
  if (A + std::abs(B) < 1.0) {
    const double sh = std::sinh(0.5 * B);
    return -2.0 * gauss_value(x, c, w, a) * (std::exp(-A) * 2.0 * sh * sh + std::expm1(-A));
  }
  return 2.0 * gauss_value(x, c, w, a) - gauss_value(x + z, c, w, a) - gauss_value(x - z, c, w, a);
}

double antisym_bump_value(const Point& x, const family::AntisymGaussianBump& b) {
  return b.amplitude * (std::exp(-distance2(x, b.center) / (b.width * b.width)) -
                        std::exp(-distance2(reflect(x), b.center) / (b.width * b.width)));
}

double antisym_bump_sd(const Point& x, const Point& z, const family::AntisymGaussianBump& b) {
  return gauss_second_difference(x, z, b.center, b.width, b.amplitude) -
         gauss_second_difference(x, z, reflect(b.center), b.width, b.amplitude);
}

double bump_profile(double t) {
  if (t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double odd_step(double t) {
  const double v = smoothstep(std::abs(t) / 2.0);
  return t < 0.0 ? -v : v;
}

double eval_impl(const FieldSpec& f, const Point& x) {
  using namespace family;
  return std::visit(
      overloaded{
          [](const Zero&) { return 0.0; },
          [](const Constant& c) { return c.value; },
          [&](const MonomialX1&) { return x[0]; },
          [&](const GaussianBump& g) { return gauss_value(x, g.center, g.width, g.amplitude); },
          [&](const AntisymGaussianBump& g) { return antisym_bump_value(x, g); },
          [&](const MirrorBumpSum& m) {
            double acc = 0.0;
            for (const auto& b : m.bumps) acc += antisym_bump_value(x, b);
            return acc;
          },
          [&](const CutoffZeta1& z) { return smoothstep(-x[0] / z.transition); },
          [&](const CutoffZeta2& z) {
            const double d = std::sqrt(distance2(x, Point::axis(x.dim(), -2.0)));
            return smoothstep(1.0 - (d - 0.5) / z.transition);
          },
          [&](const OddCubicBump& b) {
            return b.amplitude * x[0] * x[0] * x[0] * bump_profile(x.norm() / b.width);
          },
          [&](const OddStep&) { return odd_step(x[0]); },
          [&](const HalfSpaceRestriction& h) { return x[0] > 0.0 ? eval_impl(*h.inner, x) : 0.0; },
          [&](const Antisymmetrized& a) { return eval_impl(*a.inner, x) - eval_impl(*a.inner, reflect(x)); },
          [&](const ExteriorRestriction& e) {
            return distance2(x, e.center) >= e.radius * e.radius ? eval_impl(*e.inner, x) : 0.0;
          },
          [&](const LinearCombination& l) {
            double acc = 0.0;
            for (const auto& [coef, g] : l.terms) acc += coef * eval_impl(*g, x);
            return acc;
          },
      },
      f.family());
}

double generic_sd(const FieldSpec& f, const Point& x, const Point& z) {
  const double u0 = eval_impl(f, x);
  const double zn = z.norm();
  const double zt = 1e-3 * std::min(1.0, f.meta().length_scale);
  if (zn > 0.0 && zn < zt) {
    // Even in z with leading quadratic term: rescale from |z| = zt to avoid roundoff.
    const Point zz = (zt / zn) * z;
    const double ref = 2.0 * u0 - eval_impl(f, x + zz) - eval_impl(f, x - zz);
    return ref * (zn / zt) * (zn / zt);
  }
  return 2.0 * u0 - eval_impl(f, x + z) - eval_impl(f, x - z);
}

double sd_impl(const FieldSpec& f, const Point& x, const Point& z) {
  using namespace family;
  return std::visit(
      overloaded{
          [](const Zero&) { return 0.0; },
          [](const Constant&) { return 0.0; },
          [](const MonomialX1&) { return 0.0; },
          [&](const GaussianBump& g) { return gauss_second_difference(x, z, g.center, g.width, g.amplitude); },
          [&](const AntisymGaussianBump& g) { return antisym_bump_sd(x, z, g); },
          [&](const MirrorBumpSum& m) {
            double acc = 0.0;
            for (const auto& b : m.bumps) acc += antisym_bump_sd(x, z, b);
            return acc;
          },
          [&](const Antisymmetrized& a) { return sd_impl(*a.inner, x, z) - sd_impl(*a.inner, reflect(x), reflect(z)); },
          [&](const LinearCombination& l) {
            double acc = 0.0;
            for (const auto& [coef, g] : l.terms) acc += coef * sd_impl(*g, x, z);
            return acc;
          },
          [&](const auto&) { return generic_sd(f, x, z); },
      },
      f.family());
}

const char* smoothness_name(Smoothness s) {
  switch (s) {
    case Smoothness::Smooth:
      return "Smooth";
    case Smoothness::Lipschitz:
      return "Lipschitz";
    default:
      return "Measurable";
  }
}

nlohmann::json point_json(const Point& p) {
  auto arr = nlohmann::json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) throw UsageError("point must be an array of 1-3 numbers");
  std::vector<double> v = j.get<std::vector<double>>();
  return Point(std::span<const double>(v));
}

FieldRef shared(const FieldSpec& f) { return std::make_shared<const FieldSpec>(f); }

}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

FieldSpec::FieldSpec(int dim, Family fam) : dim_(dim), family_(std::move(fam)) {
  if (dim < 1 || dim > kMaxDim) throw UsageError("field dimension must be 1, 2 or 3");
  meta_ = compute_meta(dim, family_);
}

std::string FieldSpec::family_name() const {
  using namespace family;
  return std::visit(overloaded{
                        [](const Zero&) { return "Zero"; },
                        [](const Constant&) { return "Constant"; },
                        [](const MonomialX1&) { return "Monomial_x1"; },
                        [](const GaussianBump&) { return "GaussianBump"; },
                        [](const AntisymGaussianBump&) { return "AntisymGaussianBump"; },
                        [](const MirrorBumpSum&) { return "MirrorBumpSum"; },
                        [](const CutoffZeta1&) { return "CutoffZeta1"; },
                        [](const CutoffZeta2&) { return "CutoffZeta2"; },
                        [](const OddCubicBump&) { return "OddCubicBump"; },
                        [](const OddStep&) { return "OddStep"; },
                        [](const HalfSpaceRestriction&) { return "HalfSpaceRestriction"; },
                        [](const Antisymmetrized&) { return "Antisymmetrized"; },
                        [](const ExteriorRestriction&) { return "ExteriorRestriction"; },
                        [](const LinearCombination&) { return "LinearCombination"; },
                    },
                    family_);
}

double evaluate(const FieldSpec& f, const Point& x) {
  require_dim(x, f.dim(), "evaluate");
  return eval_impl(f, x);
}

double second_difference(const FieldSpec& f, const Point& x, const Point& z) {
  require_dim(x, f.dim(), "second_difference");
  require_dim(z, f.dim(), "second_difference");
  return sd_impl(f, x, z);
}

FieldSpec antisymmetrize(const FieldSpec& f) { return FieldSpec(f.dim(), family::Antisymmetrized{shared(f)}); }

FieldSpec random_nonneg_antisym(std::uint64_t seed, int count, const Params& p, double box) {
  p.validate();
  return FieldSpec(p.n, family::MirrorBumpSum{seed, count, box, {}});
}

namespace make {
FieldSpec zero(int n) { return FieldSpec(n, family::Zero{}); }
FieldSpec constant(int n, double value) { return FieldSpec(n, family::Constant{value}); }
FieldSpec monomial_x1(int n) { return FieldSpec(n, family::MonomialX1{}); }
FieldSpec gaussian(const Point& center, double width, double amplitude) {
  return FieldSpec(center.dim(), family::GaussianBump{center, width, amplitude});
}
FieldSpec antisym_gaussian(const Point& center, double width, double amplitude) {
  return FieldSpec(center.dim(), family::AntisymGaussianBump{center, width, amplitude});
}
FieldSpec zeta1(int n, double transition) { return FieldSpec(n, family::CutoffZeta1{transition}); }
FieldSpec zeta2(int n, double transition) { return FieldSpec(n, family::CutoffZeta2{transition}); }
FieldSpec odd_cubic_bump(int n, double width, double amplitude) {
  return FieldSpec(n, family::OddCubicBump{width, amplitude});
}
FieldSpec odd_step(int n) { return FieldSpec(n, family::OddStep{}); }
FieldSpec halfspace_restriction(const FieldSpec& inner) {
  return FieldSpec(inner.dim(), family::HalfSpaceRestriction{shared(inner)});
}
FieldSpec exterior_restriction(const FieldSpec& inner, double radius, const Point& center) {
  return FieldSpec(inner.dim(), family::ExteriorRestriction{shared(inner), radius, center});
}
FieldSpec exterior_restriction(const FieldSpec& inner, double radius) {
  return exterior_restriction(inner, radius, Point(inner.dim()));
}
FieldSpec linear_combination(const std::vector<std::pair<double, FieldSpec>>& terms) {
  if (terms.empty()) throw UsageError("linear_combination: need at least one term");
  family::LinearCombination l;
  for (const auto& [c, f] : terms) l.terms.emplace_back(c, shared(f));
  return FieldSpec(terms.front().second.dim(), std::move(l));
}
FieldSpec scaled(const FieldSpec& f, double factor) { return linear_combination({{factor, f}}); }
}  // namespace make

nlohmann::json to_json(const FieldSpec& f) {
  using namespace family;
  using nlohmann::json;
  json params = std::visit(
      overloaded{
          [](const Zero&) { return json::object(); },
          [](const Constant& c) { return json{{"value", c.value}}; },
          [](const MonomialX1&) { return json::object(); },
          [](const GaussianBump& g) {
            return json{{"center", point_json(g.center)}, {"width", g.width}, {"amplitude", g.amplitude}};
          },
          [](const AntisymGaussianBump& g) {
            return json{{"center", point_json(g.center)}, {"width", g.width}, {"amplitude", g.amplitude}};
          },
          [](const MirrorBumpSum& m) { return json{{"seed", m.seed}, {"count", m.count}, {"box", m.box}}; },
          [](const CutoffZeta1& z) { return json{{"transition", z.transition}}; },
          [](const CutoffZeta2& z) { return json{{"transition", z.transition}}; },
          [](const OddCubicBump& b) { return json{{"width", b.width}, {"amplitude", b.amplitude}}; },
          [](const OddStep&) { return json::object(); },
          [](const HalfSpaceRestriction& h) { return json{{"inner", to_json(*h.inner)}}; },
          [](const Antisymmetrized& a) { return json{{"inner", to_json(*a.inner)}}; },
          [](const ExteriorRestriction& e) {
            return json{{"inner", to_json(*e.inner)}, {"radius", e.radius}, {"center", point_json(e.center)}};
          },
          [](const LinearCombination& l) {
            json terms = json::array();
            for (const auto& [c, g] : l.terms) terms.push_back({{"coef", c}, {"field", to_json(*g)}});
            return json{{"terms", terms}};
          },
      },
      f.family());
  params["dim"] = f.dim();
  const FieldMeta& m = f.meta();
  json meta{{"antisymmetric", m.antisymmetric}, {"smoothness", smoothness_name(m.smoothness)}};
  meta["decay_exponent"] = std::isfinite(m.decay_exponent) ? json(m.decay_exponent) : json(nullptr);
  meta["support_radius"] = m.support_radius ? json(*m.support_radius) : json(nullptr);
  meta["length_scale"] = std::isfinite(m.length_scale) ? json(m.length_scale) : json(nullptr);
  return json{{"family", f.family_name()}, {"params", params}, {"meta", meta}};
}

FieldSpec field_from_json(const nlohmann::json& j) {
  using namespace family;
  try {
    const std::string fam = j.at("family").get<std::string>();
    const nlohmann::json& p = j.contains("params") ? j.at("params") : nlohmann::json::object();
    auto num = [&](const char* key, double def) { return p.contains(key) ? p.at(key).get<double>() : def; };
    auto inner = [&]() { return shared(field_from_json(p.at("inner"))); };
    int dim = p.contains("dim") ? p.at("dim").get<int>() : 0;
    if (p.contains("center") && dim == 0) dim = static_cast<int>(p.at("center").size());
    if (p.contains("inner") && dim == 0) dim = field_from_json(p.at("inner")).dim();
    if (dim == 0) dim = 1;
    if (fam == "Zero") return FieldSpec(dim, Zero{});
    if (fam == "Constant") return FieldSpec(dim, Constant{num("value", 1.0)});
    if (fam == "Monomial_x1") return FieldSpec(dim, MonomialX1{});
    if (fam == "GaussianBump")
      return FieldSpec(dim, GaussianBump{point_from_json(p.at("center")), num("width", 1.0), num("amplitude", 1.0)});
    if (fam == "AntisymGaussianBump")
      return FieldSpec(dim, AntisymGaussianBump{point_from_json(p.at("center")), num("width", 1.0),
                                                num("amplitude", 1.0)});
    if (fam == "MirrorBumpSum")
      return FieldSpec(dim, MirrorBumpSum{p.at("seed").get<std::uint64_t>(), p.at("count").get<int>(),
                                          num("box", 5.0), {}});
    if (fam == "CutoffZeta1") return FieldSpec(dim, CutoffZeta1{num("transition", 1.0)});
    if (fam == "CutoffZeta2") return FieldSpec(dim, CutoffZeta2{num("transition", 0.5)});
    if (fam == "OddCubicBump") return FieldSpec(dim, OddCubicBump{num("width", 1.0), num("amplitude", 1.0)});
    if (fam == "OddStep") return FieldSpec(dim, OddStep{});
    if (fam == "HalfSpaceRestriction") return FieldSpec(dim, HalfSpaceRestriction{inner()});
    if (fam == "Antisymmetrized") return FieldSpec(dim, Antisymmetrized{inner()});
    if (fam == "ExteriorRestriction") {
      Point c = p.contains("center") ? point_from_json(p.at("center")) : Point(dim);
      return FieldSpec(dim, ExteriorRestriction{inner(), num("radius", 1.0), c});
    }
    if (fam == "LinearCombination") {
      LinearCombination l;
      for (const auto& t : p.at("terms")) l.terms.emplace_back(t.at("coef").get<double>(), shared(field_from_json(t.at("field"))));
      return FieldSpec(dim, std::move(l));
    }
    throw UsageError("unknown field family '" + fam + "'");
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed field JSON: ") + e.what());
  }
}

}  // namespace antisym
