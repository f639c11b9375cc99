#include "fluxlag/reference.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fluxlag {

namespace {

// Integral of (c - k y^2)_+^{1/(m-1)} over [a, b].
double power_profile_integral(double c, double k, double m, double a, double b) {
  const double radius = std::sqrt(c / k);
  a = std::max(a, -radius);
  b = std::min(b, radius);
  if (!(b > a)) return 0.0;
  const double p = 1.0 / (m - 1.0);
  auto f = [&](double y) {
    const double base = c - k * y * y;
    return base > 0.0 ? std::pow(base, p) : 0.0;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-14);
}

// Unit-mass constant for (c - k y^2)_+^{1/(m-1)}.
double unit_mass_constant(double k, double m) {
  auto excess = [&](double c) {
    const double r = std::sqrt(c / k);
    return power_profile_integral(c, k, m, -r, r) - 1.0;
  };
  double lo = 1e-3;
  double hi = 1.0;
  while (excess(lo) > 0.0) lo *= 0.5;
  while (excess(hi) < 0.0) hi *= 2.0;
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(excess, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                         max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

double cached_constant(std::map<double, double>& cache, double k, double m) {
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, unit_mass_constant(k, m)).first;
  return it->second;
}

void require_porous(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) throw std::invalid_argument("Barenblatt profiles need m > 1");
}

void require_positive_time(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("self-similar profiles need t > 0");
}

double barenblatt_coefficient(double m) { return (m - 1.0) / (2.0 * m * (m + 1.0)); }

}  // namespace

double u_hom(double x, double t) {
  if (t < 0.0) throw std::invalid_argument("u_hom needs t >= 0");
  const double half = 0.5 + t;
  return std::abs(x) <= half ? 1.0 / (1.0 + 2.0 * t) : 0.0;
}

double selfsim_heat(double x, double t) {
  require_positive_time(t);
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

double barenblatt_constant(double m) {
  require_porous(m);
  static std::map<double, double> cache;
  return cached_constant(cache, barenblatt_coefficient(m), m);
}

double barenblatt(double x, double t, double m) {
  require_porous(m);
  require_positive_time(t);
  const double k = 1.0 / (m + 1.0);
  const double base = barenblatt_constant(m) - barenblatt_coefficient(m) * x * x * std::pow(t, -2.0 * k);
  return base > 0.0 ? std::pow(t, -k) * std::pow(base, 1.0 / (m - 1.0)) : 0.0;
}

double barenblatt_radius(double t, double m) {
  require_porous(m);
  require_positive_time(t);
  return std::sqrt(barenblatt_constant(m) / barenblatt_coefficient(m)) * std::pow(t, 1.0 / (m + 1.0));
}

double stationary_gaussian(double y) { return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi); }

double stationary_barenblatt_constant(double m) {
  require_porous(m);
  static std::map<double, double> cache;
  return cached_constant(cache, 0.5 * (m - 1.0), m);
}

double stationary_barenblatt(double y, double m) {
  const double base = stationary_barenblatt_constant(m) - 0.5 * (m - 1.0) * y * y;
  return base > 0.0 ? std::pow(base, 1.0 / (m - 1.0)) : 0.0;
}

double similarity_scale(double t, double m) {
  require_positive_time(t);
  if (!(m >= 1.0)) throw std::invalid_argument("similarity scale needs m >= 1");
  return std::pow(m * (m + 1.0) * t, 1.0 / (m + 1.0));
}

SimilaritySample selfsim_rescale(const DensitySample& sample, double m) {
  SimilaritySample out;
  out.t = sample.t;
  out.scale = similarity_scale(sample.t, m);
  out.y.resize(sample.size());
  out.v.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out.y[i] = sample.x[i] / out.scale;
    out.v[i] = sample.u[i] * out.scale;
  }
  return out;
}

void PowerSupersolution::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("power supersolution needs alpha > 0");
  if (!(a_rate >= 0.0)) throw std::invalid_argument("power supersolution needs a nondecreasing amplitude (A' >= 0)");
  if (!(a0 > 0.0)) throw std::invalid_argument("power supersolution needs A(0) > 0");
  if (!(r0 > 0.0)) throw std::invalid_argument("power supersolution needs R0 > 0");
}

double PowerSupersolution::value(double t, double x) const {
  const double r = radius(t);
  const double p = r * r - x * x;
  return p > 0.0 ? amplitude(t) * std::pow(p, alpha) : 0.0;
}

double PowerSupersolution::flux(double t, double x) const {
  const double r = radius(t);
  const double p = r * r - x * x;
  const double q = std::sqrt(p * p + 4.0 * alpha * alpha * x * x);
  return -2.0 * amplitude(t) * alpha * x * std::pow(p, alpha) / q;
}

double PowerSupersolution::residual(double t, double x) const {
  const double r = radius(t);
  if (!(std::abs(x) < r)) throw std::invalid_argument("supersolution residual evaluated outside (-R(t), R(t))");
  const double a = amplitude(t);
  const double p = r * r - x * x;
  const double p_a = std::pow(p, alpha);
  const double p_a1 = std::pow(p, alpha - 1.0);
  const double q = std::sqrt(p * p + 4.0 * alpha * alpha * x * x);
  const double q_x = (-2.0 * x * p + 4.0 * alpha * alpha * x) / q;

  const double u_t = a_rate * p_a + 2.0 * a * alpha * r * p_a1;
  // d/dx [ -2 A alpha x P^alpha / Q ]
  const double flux_x = -2.0 * a * alpha * (p_a / q - 2.0 * alpha * x * x * p_a1 / q - x * p_a * q_x / (q * q));
  return u_t - flux_x;
}

std::vector<double> supersolution_residual(const PowerSupersolution& u, std::span<const double> times,
                                           std::span<const double> positions) {
  u.validate();
  std::vector<double> out;
  out.reserve(times.size() * positions.size());
  for (double t : times) {
    for (double x : positions) out.push_back(u.residual(t, x));
  }
  return out;
}

ReferenceProfile ReferenceProfile::barenblatt(double m) {
  require_porous(m);
  return ReferenceProfile(Kind::barenblatt, m);
}

ReferenceProfile ReferenceProfile::from_name(const std::string& name, double m) {
  if (name == "u_hom") return homogeneous();
  if (name == "selfsim_heat") return heat();
  if (name == "barenblatt") return barenblatt(m);
  throw std::invalid_argument("unknown reference profile '" + name + "'");
}

std::string ReferenceProfile::name() const {
  switch (kind_) {
    case Kind::homogeneous_rhe: return "u_hom";
    case Kind::selfsim_heat: return "selfsim_heat";
    case Kind::barenblatt: return "barenblatt";
  }
  return "unknown";
}

double ReferenceProfile::operator()(double x, double t) const {
  switch (kind_) {
    case Kind::homogeneous_rhe: return u_hom(x, t);
    case Kind::selfsim_heat: return selfsim_heat(x, t);
    case Kind::barenblatt: return fluxlag::barenblatt(x, t, m_);
  }
  return 0.0;
}

double ReferenceProfile::mass_between(double a, double b, double t) const {
  if (!(b > a)) return 0.0;
  switch (kind_) {
    case Kind::homogeneous_rhe: {
      const double half = 0.5 + t;
      const double overlap = std::min(b, half) - std::max(a, -half);
      return overlap > 0.0 ? overlap / (1.0 + 2.0 * t) : 0.0;
    }
    case Kind::selfsim_heat: {
      require_positive_time(t);
      const double s = 2.0 * std::sqrt(t);
      return 0.5 * (std::erf(b / s) - std::erf(a / s));
    }
    case Kind::barenblatt: {
      require_positive_time(t);
      // U_m(x, t) = t^{-k} f(x t^{-k}); integrate f in the scaled variable.
      const double scale = std::pow(t, 1.0 / (m_ + 1.0));
      return power_profile_integral(barenblatt_constant(m_), barenblatt_coefficient(m_), m_, a / scale, b / scale);
    }
  }
  return 0.0;
}

}  // namespace fluxlag
