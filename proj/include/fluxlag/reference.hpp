#pragma once

#include <span>
#include <string>
#include <vector>

#include "fluxlag/transform.hpp"

namespace fluxlag {

// Closed-form comparison solutions. All unit-mass profiles are probability
// densities in x at every t > 0.

/// (1 + 2t)^{-1} on [-1/2 - t, 1/2 + t]: the homogeneous (nu -> inf) limit
/// for indicator data.
double u_hom(double x, double t);

/// Heat kernel exp(-x^2 / 4t) / sqrt(4 pi t). Throws for t <= 0.
double selfsim_heat(double x, double t);

/// The constant C~_m in
///   U_m(x, t) = t^{-1/(m+1)} (C~_m - (m-1)/(2m(m+1)) x^2 t^{-2/(m+1)})_+^{1/(m-1)}
/// fixed by unit mass. Found by bracketing root search on a quadrature of
/// the profile; cached per m.
double barenblatt_constant(double m);
double barenblatt(double x, double t, double m);
/// Free-boundary position of U_m at time t.
double barenblatt_radius(double t, double m);

/// Stationary profiles of the rescaled problem.
double stationary_gaussian(double y);
/// C_m in V_m(y) = (C_m - (m-1)/2 y^2)_+^{1/(m-1)}, unit mass.
double stationary_barenblatt_constant(double m);
double stationary_barenblatt(double y, double m);

/// Length scale of the self-similar profiles at time t,
/// (m (m+1) t)^{1/(m+1)}; U_m(x, t) = V_m(x / L) / L with L this scale.
double similarity_scale(double t, double m);

struct SimilaritySample {
  double t = 0.0;
  double scale = 1.0;
  std::vector<double> y;
  std::vector<double> v;
};

/// Map a physical-time sample into similarity variables y = x / L,
/// v = L u, L = similarity_scale(t, m). Mass is preserved exactly.
SimilaritySample selfsim_rescale(const DensitySample& sample, double m);

/// U(t, x) = A(t) (R(t)^2 - x^2)^alpha with A(t) = a0 + a_rate t and
/// R(t) = r0 + t; a supersolution of the m = 1 equation when a_rate >= 0.
struct PowerSupersolution {
  double alpha = 1.0;
  double a0 = 1.0;
  double a_rate = 0.0;
  double r0 = 1.0;

  void validate() const;
  double radius(double t) const { return r0 + t; }
  double amplitude(double t) const { return a0 + a_rate * t; }
  double value(double t, double x) const;
  /// Flux U U_x / sqrt(U^2 + U_x^2), closed form.
  double flux(double t, double x) const;
  /// U_t - (flux)_x with exact derivatives; requires |x| < R(t).
  double residual(double t, double x) const;
};

/// Residual on the tensor grid times x positions, row-major (one row per
/// time). Throws std::invalid_argument if a point lies outside (-R(t), R(t)).
std::vector<double> supersolution_residual(const PowerSupersolution& u, std::span<const double> times,
                                           std::span<const double> positions);

/// Named comparison profile used by metrics and scenario configs.
class ReferenceProfile {
 public:
  enum class Kind { homogeneous_rhe, selfsim_heat, barenblatt };

  static ReferenceProfile homogeneous() { return ReferenceProfile(Kind::homogeneous_rhe, 1.0); }
  static ReferenceProfile heat() { return ReferenceProfile(Kind::selfsim_heat, 1.0); }
  static ReferenceProfile barenblatt(double m);
  /// "u_hom", "selfsim_heat" or "barenblatt" (which uses the given m).
  static ReferenceProfile from_name(const std::string& name, double m);

  Kind kind() const noexcept { return kind_; }
  double m() const noexcept { return m_; }
  std::string name() const;

  double operator()(double x, double t) const;
  /// Integral of the profile over [a, b] at time t.
  double mass_between(double a, double b, double t) const;

 private:
  ReferenceProfile(Kind kind, double m) : kind_(kind), m_(m) {}

  Kind kind_;
  double m_;
};

}  // namespace fluxlag
