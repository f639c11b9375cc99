#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fluxlag/errors.hpp"
#include "fluxlag/transform.hpp"
#include "oracles.hpp"

using namespace fluxlag;

namespace {

std::shared_ptr<const MassMesh> uniform(std::size_t n) { return std::make_shared<const MassMesh>(MassMesh::uniform(n)); }

double slope_vs_n(const std::vector<std::size_t>& ns, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double x = std::log(static_cast<double>(ns[k]));
    const double y = std::log(errs[k]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = static_cast<double>(ns.size());
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(Transform, TriangleInverseMatchesClosedForm) {
  // For (1 - |x|)_+ the distribution function inverts to
  //   phi(eta) = -1 + sqrt(2 (eta + 1/2))  (eta <= 0), mirrored for eta > 0.
  auto mesh = uniform(200);
  const PseudoInverseState s = init_pseudo_inverse(InitialDensity::triangle(), mesh);
  for (std::size_t i = 0; i < mesh->size(); ++i) {
    const double eta = mesh->node(i);
    const double expected = eta <= 0 ? -1.0 + std::sqrt(2.0 * (eta + 0.5)) : 1.0 - std::sqrt(2.0 * (0.5 - eta));
    EXPECT_NEAR(s.phi[i], expected, 1e-12) << i;
  }
}

TEST(Transform, IndicatorIsAffineAndSeedsCentralArgmax) {
  auto mesh = uniform(100);
  const PseudoInverseState s = init_pseudo_inverse(InitialDensity::indicator(), mesh);
  for (std::size_t i = 0; i < mesh->size(); ++i) EXPECT_NEAR(s.phi[i], mesh->node(i), 1e-12);
  EXPECT_EQ(s.argmax, 49u);  // all segments tie: the central one is kept
  EXPECT_EQ(s.support_left(), -0.5);
  EXPECT_EQ(s.support_right(), 0.5);
}

TEST(Transform, ArgmaxTieBreaking) {
  auto mesh = uniform(6);
  // Segment densities: 1/5 / widths. Widths 0.1 at segments 1 and 3 tie for the max.
  const std::vector<double> phi{0.0, 0.3, 0.4, 0.7, 0.8, 1.1};
  EXPECT_EQ(locate_max_density(phi, *mesh, 3), 3u);   // previous is among the ties
  EXPECT_EQ(locate_max_density(phi, *mesh, 0), 1u);   // otherwise the smallest index
  EXPECT_EQ(locate_max_density(phi, *mesh, 99), 1u);  // out-of-range previous is ignored
}

TEST(Transform, NonMonotonePositionsAreRejected) {
  auto mesh = uniform(6);
  const std::vector<double> phi{0.0, 0.3, 0.3, 0.7, 0.8, 1.1};
  EXPECT_THROW(locate_max_density(phi, *mesh, 0), SolverError);
  PseudoInverseState s;
  s.mesh = mesh;
  s.phi = phi;
  EXPECT_THROW(reconstruct(s), SolverError);
}

TEST(Transform, DirectionalDifferencesFollowArgmax) {
  auto mesh = uniform(6);  // spacing 0.2
  const std::vector<double> phi{0.0, 0.4, 0.6, 0.7, 0.9, 1.3};
  // Segment densities 0.5, 1, 2, 1, 0.5 -> argmax 2.
  LagrangianField f;
  compute_field(phi, *mesh, 2, f);
  const std::vector<double> psi{0.0, 1.0, 2.0, 2.0, 1.0, 0.0};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(f.psi[i], psi[i], 1e-14) << i;
  // Backward differences up to the argmax, forward beyond it.
  EXPECT_NEAR(f.psi_eta[1], (1.0 - 0.0) / 0.2, 1e-12);
  EXPECT_NEAR(f.psi_eta[2], (2.0 - 1.0) / 0.2, 1e-12);
  EXPECT_NEAR(f.psi_eta[3], (1.0 - 2.0) / 0.2, 1e-12);
  EXPECT_NEAR(f.psi_eta[4], (0.0 - 1.0) / 0.2, 1e-12);
  EXPECT_NEAR(f.trace_left, 1.0, 1e-14);
  EXPECT_NEAR(f.trace_right, 1.0, 1e-14);
}

TEST(Transform, ReconstructFields) {
  auto mesh = uniform(100);
  const DensitySample s = reconstruct(init_pseudo_inverse(InitialDensity::triangle(), mesh));
  ASSERT_EQ(s.size(), 100u);
  EXPECT_EQ(s.u.front(), 0.0);
  EXPECT_EQ(s.u.back(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_DOUBLE_EQ(s.w[i], s.u[i] * s.psi_eta[i]);
  EXPECT_NEAR(s.u_max, 1.0, 0.02);
  EXPECT_NEAR(s.x_at_max, 0.0, 0.02);
  EXPECT_EQ(s.support_left, -1.0);
  EXPECT_EQ(s.trace_left, s.u[1]);
}

TEST(Transform, MassIdentityWithinFiveOverN) {
  for (std::size_t n : {100u, 200u, 400u}) {
    for (const auto& d : {InitialDensity::indicator(), InitialDensity::triangle(), InitialDensity::composite_sqrt(),
                          InitialDensity::composite_step()}) {
      const double mass = trapezoid_mass(reconstruct(init_pseudo_inverse(d, uniform(n))));
      EXPECT_NEAR(mass, 1.0, 5.0 / static_cast<double>(n)) << d.preset() << " N=" << n;
    }
  }
}

TEST(Transform, TrapezoidMassSkipsEndSegments) {
  DensitySample s;
  s.x = {0.0, 1.0, 2.0, 3.0, 10.0};
  s.u = {0.0, 1.0, 1.0, 0.5, 0.0};
  EXPECT_DOUBLE_EQ(trapezoid_mass(s), 1.0 + 0.75);
}

TEST(Transform, RoundTripIsFirstOrderAwayFromSingularPoints) {
  // Away from the edges (where u vanishes like a square root in mass) and
  // from eta = +-3/8 (the mass image of the kinks and vertical tangents at
  // x = +-1/2), the reconstructed density converges at first order.
  const std::vector<std::size_t> ns{100, 200, 400, 800};
  for (const auto& d : {InitialDensity::triangle(), InitialDensity::composite_sqrt()}) {
    std::vector<double> errs;
    for (std::size_t n : ns) errs.push_back(oracle::round_trip_error(d, n, 0.4, {-0.375, 0.375}, 0.05));
    const double order = slope_vs_n(ns, errs);
    EXPECT_GE(order, 0.8) << d.preset();
    EXPECT_LE(order, 1.2) << d.preset();
  }
  // Piecewise-constant data are reproduced exactly away from the jumps.
  for (const auto& d : {InitialDensity::indicator(), InitialDensity::composite_step()}) {
    for (std::size_t n : ns) EXPECT_LT(oracle::round_trip_error(d, n, 0.4, {-0.375, 0.375}, 0.05), 1e-11);
  }
}
