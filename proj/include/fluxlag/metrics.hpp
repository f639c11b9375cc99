#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fluxlag/dynamics.hpp"
#include "fluxlag/reference.hpp"
#include "fluxlag/transform.hpp"

namespace fluxlag {

/// Per-snapshot diagnostics. Field order is the NDJSON key order.
struct MetricsRecord {
  double t = 0.0;
  std::optional<double> l1_paper;
  std::optional<double> l1_quadrature;
  double support_left = 0.0;
  double support_right = 0.0;
  double u_max = 0.0;
  double max_interior_abs_psi_eta = 0.0;
  double liftoff_left = 0.0;
  double liftoff_right = 0.0;
  double w_max = 0.0;
};

/// (1/N) sum_i |u_i - ref(x_i, t)| over all N nodes.
double l1_error_paper(const DensitySample& sample, const ReferenceProfile& ref, double t);

/// Trapezoid rule for |u - ref| over the particle positions plus the
/// reference mass outside [x_1, x_N].
double l1_error_quadrature(const DensitySample& sample, const ReferenceProfile& ref, double t);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through (log t, log err) for the samples with
/// t in [t_lo, t_hi]. Needs at least three usable points.
RateFit rate_fit(std::span<const std::pair<double, double>> series, double t_lo, double t_hi);

/// One-sided differences of psi^{m+1} over the first and last interior
/// segments, signed so that a density growing away from the boundary is
/// positive on both sides.
struct Liftoff {
  double left = 0.0;
  double right = 0.0;
};
Liftoff liftoff_indicator(const PseudoInverseState& state, const SchemeParams& params);

/// Largest |psi_eta| over the nodes that do not touch the imposed boundary
/// values (zero-based 2 .. N-3), with its location.
struct SlopePeak {
  double t = 0.0;
  double value = 0.0;
  double x = 0.0;
  double eta = 0.0;
  std::size_t node = 0;
};
SlopePeak interior_slope_peak(const DensitySample& sample);

/// interior_slope_peak for every snapshot of a run.
std::vector<SlopePeak> discontinuity_indicator(const Trajectory& trajectory);

/// True once the indicator has exceeded `threshold` and grown monotonically
/// over the preceding snapshots.
bool jump_forming(std::span<const SlopePeak> series, double threshold = 1e3);

/// Slope of psi over the first/last interior segments (sign-normalized,
/// positive toward the interior) and whether it exceeds `threshold`.
struct VerticalContact {
  double left_slope = 0.0;
  double right_slope = 0.0;
  bool left = false;
  bool right = false;
};
VerticalContact vertical_contact(const DensitySample& sample, double threshold = 1e2);

MetricsRecord compute_metrics(const PseudoInverseState& state, const SchemeParams& params,
                              const ReferenceProfile* reference);

}  // namespace fluxlag
