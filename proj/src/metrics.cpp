#include "fluxlag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxlag {

double l1_error_paper(const DensitySample& sample, const ReferenceProfile& ref, double t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) sum += std::abs(sample.u[i] - ref(sample.x[i], t));
  return sum / static_cast<double>(sample.size());
}

double l1_error_quadrature(const DensitySample& sample, const ReferenceProfile& ref, double t) {
  const std::size_t n = sample.size();
  std::vector<double> err(n);
  for (std::size_t i = 0; i < n; ++i) err[i] = std::abs(sample.u[i] - ref(sample.x[i], t));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) sum += 0.5 * (sample.x[i + 1] - sample.x[i]) * (err[i] + err[i + 1]);
  const double lo = sample.x.front();
  const double hi = sample.x.back();
  const double far = std::max({1.0, std::abs(lo), std::abs(hi)}) * 1e3;
  sum += ref.mass_between(-far, lo, t) + ref.mass_between(hi, far, t);
  return sum;
}

RateFit rate_fit(std::span<const std::pair<double, double>> series, double t_lo, double t_hi) {
  if (!(t_hi > t_lo)) throw std::invalid_argument("rate_fit: empty window");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (const auto& [t, e] : series) {
    if (t < t_lo || t > t_hi || !(t > 0.0) || !(e > 0.0)) continue;
    const double lx = std::log(t);
    const double ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 3) throw std::invalid_argument("rate_fit: fewer than three usable points in the window");
  const double nf = static_cast<double>(count);
  const double denom = nf * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw std::invalid_argument("rate_fit: degenerate window (all times equal)");
  RateFit fit;
  fit.slope = (nf * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / nf;
  fit.points = count;
  return fit;
}

Liftoff liftoff_indicator(const PseudoInverseState& state, const SchemeParams& params) {
  LagrangianField field;
  compute_field(state.phi, *state.mesh, state.argmax, field);
  const std::size_t n = state.size();
  const auto& psi = field.psi;
  const double e = params.m + 1.0;
  const MassMesh& mesh = *state.mesh;
  Liftoff out;
  out.left = (std::pow(psi[2], e) - std::pow(psi[1], e)) / mesh.spacing(1);
  out.right = (std::pow(psi[n - 3], e) - std::pow(psi[n - 2], e)) / mesh.spacing(n - 3);
  return out;
}

SlopePeak interior_slope_peak(const DensitySample& sample) {
  SlopePeak peak;
  peak.t = sample.t;
  const std::size_t n = sample.size();
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double v = std::abs(sample.psi_eta[i]);
    if (v > peak.value) {
      peak.value = v;
      peak.node = i;
    }
  }
  if (peak.node != 0) {
    peak.x = sample.x[peak.node];
    peak.eta = sample.eta[peak.node];
  }
  return peak;
}

std::vector<SlopePeak> discontinuity_indicator(const Trajectory& trajectory) {
  std::vector<SlopePeak> out;
  out.reserve(trajectory.snapshots.size());
  for (const auto& s : trajectory.snapshots) out.push_back(interior_slope_peak(reconstruct(s)));
  return out;
}

bool jump_forming(std::span<const SlopePeak> series, double threshold) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].value <= threshold) continue;
    bool growing = i > 0;
    for (std::size_t j = 1; j <= i; ++j) growing = growing && series[j].value >= series[j - 1].value;
    if (growing) return true;
  }
  return false;
}

VerticalContact vertical_contact(const DensitySample& sample, double threshold) {
  const std::size_t n = sample.size();
  VerticalContact vc;
  vc.left_slope = (sample.u[2] - sample.u[1]) / (sample.eta[2] - sample.eta[1]);
  vc.right_slope = (sample.u[n - 3] - sample.u[n - 2]) / (sample.eta[n - 2] - sample.eta[n - 3]);
  vc.left = vc.left_slope > threshold;
  vc.right = vc.right_slope > threshold;
  return vc;
}

MetricsRecord compute_metrics(const PseudoInverseState& state, const SchemeParams& params,
                              const ReferenceProfile* reference) {
  const DensitySample sample = reconstruct(state);
  MetricsRecord rec;
  rec.t = state.t;
  const bool needs_positive_time = reference && reference->kind() != ReferenceProfile::Kind::homogeneous_rhe;
  if (reference && (state.t > 0.0 || !needs_positive_time)) {
    rec.l1_paper = l1_error_paper(sample, *reference, state.t);
    rec.l1_quadrature = l1_error_quadrature(sample, *reference, state.t);
  }
  rec.support_left = sample.support_left;
  rec.support_right = sample.support_right;
  rec.u_max = sample.u_max;
  rec.max_interior_abs_psi_eta = interior_slope_peak(sample).value;
  const Liftoff lift = liftoff_indicator(state, params);
  rec.liftoff_left = lift.left;
  rec.liftoff_right = lift.right;
  for (std::size_t i = 2; i + 2 < sample.size(); ++i) rec.w_max = std::max(rec.w_max, std::abs(sample.w[i]));
  return rec;
}

}  // namespace fluxlag
