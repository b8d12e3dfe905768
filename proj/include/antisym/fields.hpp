#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "antisym/params.hpp"
#include "json.hpp"

namespace antisym {

enum class Smoothness { Smooth = 0, Lipschitz = 1, Measurable = 2 };

/// Declared (not inferred) properties of a field family.
struct FieldMeta {
  bool antisymmetric = false;
  /// p with |u(y)| <= C (1+|y|)^p; -inf for compactly supported fields.
  double decay_exponent = 0.0;
  /// Radius about the origin outside which |u| < 1e-16.
  std::optional<double> support_radius;
  Smoothness smoothness = Smoothness::Smooth;
  /// Smallest length over which the field changes appreciably (inf if none).
  double length_scale = 1.0;
};

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

namespace family {
struct Zero {};
struct Constant {
  double value = 1.0;
};
struct MonomialX1 {};
/// a exp(-|x-c|^2/w^2).
struct GaussianBump {
  Point center;
  double width = 1.0;
  double amplitude = 1.0;
};
/// a (exp(-|x-c|^2/w^2) - exp(-|x_*-c|^2/w^2)), c1 > 0.
struct AntisymGaussianBump {
  Point center;
  double width = 1.0;
  double amplitude = 1.0;
};
/// Sum of AntisymGaussianBump regenerated from the seed.
struct MirrorBumpSum {
  std::uint64_t seed = 0;
  int count = 1;
  double box = 5.0;
  std::vector<AntisymGaussianBump> bumps;
};
/// S(-x1/eps): 1 on {x1 <= -eps}, 0 on {x1 >= 0}.
struct CutoffZeta1 {
  double transition = 1.0;
};
/// 1 on B_{1/2}(-2e1), 0 outside B_{1/2+tau}(-2e1).
struct CutoffZeta2 {
  double transition = 0.5;
};
/// a x1^3 beta(|x|/w) with the compact C-infinity bump beta(t) = exp(1 - 1/(1-t^2)).
struct OddCubicBump {
  double width = 1.0;
  double amplitude = 1.0;
};
/// phi(x1): odd, C^2, increasing on [0,2], equal to 1 for x1 >= 2.
struct OddStep {};
/// inner(x) for x1 > 0, 0 otherwise.
struct HalfSpaceRestriction {
  FieldRef inner;
};
/// inner(x) - inner(x_*).
struct Antisymmetrized {
  FieldRef inner;
};
/// inner(x) outside B_radius(center), 0 inside.
struct ExteriorRestriction {
  FieldRef inner;
  double radius = 1.0;
  Point center;
};
struct LinearCombination {
  std::vector<std::pair<double, FieldRef>> terms;
};
}  // namespace family

using Family = std::variant<family::Zero, family::Constant, family::MonomialX1, family::GaussianBump,
                            family::AntisymGaussianBump, family::MirrorBumpSum, family::CutoffZeta1,
                            family::CutoffZeta2, family::OddCubicBump, family::OddStep,
                            family::HalfSpaceRestriction, family::Antisymmetrized, family::ExteriorRestriction,
                            family::LinearCombination>;

/// Immutable closed-form test function on R^n with declared metadata.
class FieldSpec {
 public:
  FieldSpec(int dim, Family fam);

  int dim() const noexcept { return dim_; }
  const Family& family() const noexcept { return family_; }
  const FieldMeta& meta() const noexcept { return meta_; }
  std::string family_name() const;

 private:
  int dim_;
  Family family_;
  FieldMeta meta_;
};

double evaluate(const FieldSpec& f, const Point& x);

/// 2u(x) - u(x+z) - u(x-z), using closed forms where direct subtraction would cancel.
double second_difference(const FieldSpec& f, const Point& x, const Point& z);

/// Field evaluating to f(x) - f(x_*).
FieldSpec antisymmetrize(const FieldSpec& f);

/// MirrorBumpSum with `count` bumps: centres in {x1 >= 0.2} within B_box, widths in
/// [0.1,1] capped at c1/2, amplitudes in [0.5,2]. Nonnegative on the half-space.
FieldSpec random_nonneg_antisym(std::uint64_t seed, int count, const Params& p, double box = 5.0);

namespace make {
FieldSpec zero(int n);
FieldSpec constant(int n, double value);
FieldSpec monomial_x1(int n);
FieldSpec gaussian(const Point& center, double width, double amplitude = 1.0);
FieldSpec antisym_gaussian(const Point& center, double width, double amplitude = 1.0);
FieldSpec zeta1(int n, double transition = 1.0);
FieldSpec zeta2(int n, double transition = 0.5);
FieldSpec odd_cubic_bump(int n, double width = 1.0, double amplitude = 1.0);
FieldSpec odd_step(int n);
FieldSpec halfspace_restriction(const FieldSpec& inner);
FieldSpec exterior_restriction(const FieldSpec& inner, double radius, const Point& center);
FieldSpec exterior_restriction(const FieldSpec& inner, double radius);
FieldSpec linear_combination(const std::vector<std::pair<double, FieldSpec>>& terms);
FieldSpec scaled(const FieldSpec& f, double factor);
}  // namespace make

/// Quintic smoothstep clamped to [0,1]: t^3 (10 - 15 t + 6 t^2).
double smoothstep(double t);

nlohmann::json to_json(const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j);

}  // namespace antisym
