#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fluxlag/density.hpp"
#include "fluxlag/mesh.hpp"

namespace fluxlag {

/// Particle positions phi(t, eta_i) of the pseudo-inverse distribution.
///
/// `argmax` is the zero-based index of the mass segment [eta_k, eta_{k+1}]
/// carrying the largest density; nodes at or left of it take forward
/// differences, nodes right of it backward differences.
struct PseudoInverseState {
  double t = 0.0;
  std::vector<double> phi;
  std::shared_ptr<const MassMesh> mesh;
  std::size_t argmax = 0;

  std::size_t size() const noexcept { return phi.size(); }
  double support_left() const { return phi.front(); }
  double support_right() const { return phi.back(); }
};

/// psi = 1/phi_eta and psi_eta at the nodes for a given argmax.
/// The end entries of psi are zero (no density at the particle images of
/// eta = ±1/2); `trace_left/right` are the adjacent interior values.
struct LagrangianField {
  std::vector<double> psi;
  std::vector<double> psi_eta;
  double trace_left = 0.0;
  double trace_right = 0.0;
};

/// Reconstructed density samples at the particle positions.
struct DensitySample {
  double t = 0.0;
  std::vector<double> eta;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> psi_eta;
  std::vector<double> w;  // psi * psi_eta == u_x at the particle
  double support_left = 0.0;
  double support_right = 0.0;
  double trace_left = 0.0;
  double trace_right = 0.0;
  double u_max = 0.0;
  double x_at_max = 0.0;
  std::size_t argmax = 0;

  std::size_t size() const noexcept { return x.size(); }
};

/// Solve cdf(phi_i) = eta_i + 1/2 at every interior node by bisection; the
/// end nodes sit on the support endpoints.
PseudoInverseState init_pseudo_inverse(const InitialDensity& density, std::shared_ptr<const MassMesh> mesh);

/// Index of the densest segment. Ties (within a relative 1e-12) keep
/// `previous` when it is among them, otherwise the smallest index wins.
/// Throws SolverError if phi is not strictly increasing.
std::size_t locate_max_density(std::span<const double> phi, const MassMesh& mesh, std::size_t previous);

/// Fill `field` from positions; `field` buffers are reused across calls.
void compute_field(std::span<const double> phi, const MassMesh& mesh, std::size_t argmax,
                   LagrangianField& field);

DensitySample reconstruct(const PseudoInverseState& state);

/// Trapezoidal integral of (x_i, u_i) over the interior nodes 1 .. N-2.
double trapezoid_mass(const DensitySample& sample);

}  // namespace fluxlag
