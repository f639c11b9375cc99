#include "fluxlag/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fluxlag/errors.hpp"

namespace fluxlag {

namespace {

constexpr double kTieTol = 1e-12;
constexpr int kBisectionIters = 200;

void check_monotone(std::span<const double> phi) {
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    if (!(phi[i + 1] > phi[i])) {
      throw SolverError("particle positions lost strict monotonicity between nodes " + std::to_string(i) +
                            " and " + std::to_string(i + 1),
                        i);
    }
  }
}

}  // namespace

PseudoInverseState init_pseudo_inverse(const InitialDensity& density, std::shared_ptr<const MassMesh> mesh) {
  if (!mesh) throw std::invalid_argument("init_pseudo_inverse: null mesh");
  const std::size_t n = mesh->size();
  const double a = density.support_left();
  const double b = density.support_right();
  PseudoInverseState state;
  state.mesh = mesh;
  state.phi.resize(n);
  state.phi.front() = a;
  state.phi.back() = b;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = mesh->node(i) + 0.5;
    double lo = a;
    double hi = b;
    for (int it = 0; it < kBisectionIters && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (density.cdf(mid) < target) lo = mid; else hi = mid;
    }
    state.phi[i] = 0.5 * (lo + hi);
  }
  check_monotone(state.phi);
  state.argmax = locate_max_density(state.phi, *mesh, n / 2 - 1);
  return state;
}

std::size_t locate_max_density(std::span<const double> phi, const MassMesh& mesh, std::size_t previous) {
  const std::size_t segments = phi.size() - 1;
  const auto spacing = mesh.spacings();
  std::size_t best = 0;
  double best_rho = -1.0;
  double rho_prev = -1.0;
  for (std::size_t j = 0; j < segments; ++j) {
    const double width = phi[j + 1] - phi[j];
    if (!(width > 0.0)) check_monotone(phi);
    const double rho = spacing[j] / width;
    if (rho > best_rho * (1.0 + kTieTol)) {
      best_rho = rho;
      best = j;
    }
    if (j == previous) rho_prev = rho;
  }
  if (previous < segments && rho_prev >= best_rho * (1.0 - kTieTol)) return previous;
  return best;
}

void compute_field(std::span<const double> phi, const MassMesh& mesh, std::size_t argmax, LagrangianField& field) {
  const std::size_t n = phi.size();
  field.psi.resize(n);
  field.psi_eta.resize(n);
  auto& psi = field.psi;
  auto& dpsi = field.psi_eta;
  const auto spacing = mesh.spacings();

  psi[0] = 0.0;
  psi[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t seg = i <= argmax ? i : i - 1;
    const double width = phi[seg + 1] - phi[seg];
    if (!(width > 0.0)) {
      throw SolverError("non-positive particle spacing at segment " + std::to_string(seg), seg);
    }
    psi[i] = spacing[seg] / width;
  }
  dpsi[0] = 0.0;
  dpsi[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    dpsi[i] = i <= argmax ? (psi[i] - psi[i - 1]) / spacing[i - 1] : (psi[i + 1] - psi[i]) / spacing[i];
  }
  field.trace_left = psi[1];
  field.trace_right = psi[n - 2];
}

DensitySample reconstruct(const PseudoInverseState& state) {
  if (!state.mesh || state.mesh->size() != state.phi.size()) {
    throw std::invalid_argument("reconstruct: state and mesh sizes differ");
  }
  check_monotone(state.phi);
  LagrangianField field;
  compute_field(state.phi, *state.mesh, state.argmax, field);

  DensitySample s;
  const std::size_t n = state.size();
  s.t = state.t;
  s.eta.assign(state.mesh->nodes().begin(), state.mesh->nodes().end());
  s.x = state.phi;
  s.u = field.psi;
  s.psi_eta = field.psi_eta;
  s.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.w[i] = s.u[i] * s.psi_eta[i];
  s.support_left = state.phi.front();
  s.support_right = state.phi.back();
  s.trace_left = field.trace_left;
  s.trace_right = field.trace_right;
  s.argmax = state.argmax;
  const std::size_t k = std::min(state.argmax, n - 2);
  s.u_max = state.mesh->spacing(k) / (state.phi[k + 1] - state.phi[k]);
  s.x_at_max = 0.5 * (state.phi[k] + state.phi[k + 1]);
  return s;
}

double trapezoid_mass(const DensitySample& sample) {
  // The end segments are left out: the end particles travel at the limiting
  // speed and the outermost segment can be far wider than its mass suggests.
  double mass = 0.0;
  for (std::size_t i = 1; i + 2 < sample.size(); ++i) {
    mass += 0.5 * (sample.x[i + 1] - sample.x[i]) * (sample.u[i] + sample.u[i + 1]);
  }
  return mass;
}

}  // namespace fluxlag
