#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fluxlag/transform.hpp"

namespace fluxlag {

/// How the CFL step picks its mass spacing.
///  global: (min spacing)^2 / (alpha nu max psi^m).
///  local:  min over interior nodes of h_{i-1} h_i / (alpha nu psi_i^m);
///          identical to `global` on uniform meshes, much larger on graded
///          meshes whose fine cells sit where the density is small.
enum class CflRule { global, local };
std::string to_string(CflRule rule);

/// Physical and numerical parameters of the Lagrangian scheme for
///     u_t = ( nu u^m u_x / sqrt(u^2 + nu^2 u_x^2) )_x      (c = 1).
struct SchemeParams {
  double m = 1.0;          ///< nonlinearity exponent, m >= 1 (m = 1: relativistic heat equation)
  double nu = 1.0;         ///< kinematic viscosity, > 0
  double alpha_cfl = 8.0;  ///< CFL divisor, > 2
  CflRule cfl_rule = CflRule::global;
  std::optional<double> dt_max;
  double psi_eta_cap = 1e12;

  /// Throws std::invalid_argument on m < 1, nu <= 0, alpha_cfl <= 2, dt_max <= 0.
  void validate() const;

  bool operator==(const SchemeParams&) const = default;
};

/// phi_t at every node. Interior: -nu psi^{m-1} psi_eta / sqrt(1 + nu^2 psi_eta^2);
/// end nodes move with the boundary law -/+ (trace)^{m-1}.
std::vector<double> rhs(const PseudoInverseState& state, const SchemeParams& params);

/// CFL step for params.cfl_rule, capped by dt_max and by the distance to
/// `next_stop` when given.
double cfl_dt(const PseudoInverseState& state, const SchemeParams& params,
              std::optional<double> next_stop = std::nullopt);

/// Re-locate the density maximum, keeping state.argmax on ties.
std::size_t track_argmax(const PseudoInverseState& state);

/// One explicit Euler step with the CFL time step.
PseudoInverseState step(const PseudoInverseState& state, const SchemeParams& params);

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;   ///< time after the step
  double dt = 0.0;
  double u_max = 0.0;
  double support_left = 0.0;
  double support_right = 0.0;
  double trace_left = 0.0;  ///< psi at the first interior node after the step
  double trace_right = 0.0;
  double max_speed = 0.0;   ///< max |phi_t| used by the step
};

/// Reusable stepping workspace for one mesh size. Not thread-safe; use one
/// per run.
class Integrator {
 public:
  explicit Integrator(SchemeParams params);

  const SchemeParams& params() const noexcept { return params_; }

  /// Evaluate psi, psi_eta and phi_t for the given state into the workspace.
  void evaluate(const PseudoInverseState& state);
  const LagrangianField& field() const noexcept { return field_; }
  const std::vector<double>& velocity() const noexcept { return velocity_; }
  double max_psi() const noexcept { return max_psi_; }

  /// CFL step size for the last evaluated state.
  double stable_dt(const MassMesh& mesh) const;

  /// Advance in place by one CFL step, never passing `stop`.
  StepRecord advance(PseudoInverseState& state, double stop);

 private:
  enum class PowerKind { one, sqrt, sqrt3, integer, general };

  double power(double base) const;
  void bind_mesh(const MassMesh& mesh);
  // rho_ holds the segment densities of `state`; fills field_ and velocity_.
  void evaluate_segments(const PseudoInverseState& state);

  SchemeParams params_;
  PowerKind power_kind_ = PowerKind::general;
  int power_int_ = 0;
  LagrangianField field_;
  std::vector<double> velocity_;
  std::vector<double> rho_;
  std::vector<double> inv_h_;
  std::vector<double> inv_hh_;
  const MassMesh* bound_mesh_ = nullptr;
  const PseudoInverseState* rho_owner_ = nullptr;
  double rho_time_ = 0.0;
  double max_psi_ = 0.0;
  double local_ratio_ = 0.0;  // max over interior nodes of psi_i^m / (h_{i-1} h_i)
  std::size_t steps_ = 0;
};

struct Schedule {
  std::vector<double> snapshot_times;
  double t_end = 0.0;
};

enum class Termination { completed, solver_error, step_limit };
std::string to_string(Termination reason);

struct RunOptions {
  std::size_t log_every = 0;  ///< keep every k-th step record (0: none)
  std::size_t max_steps = 0;  ///< 0: unlimited
  std::function<void(const StepRecord&, const PseudoInverseState&)> on_step;
};

struct Trajectory {
  std::vector<PseudoInverseState> snapshots;
  std::vector<StepRecord> log;
  Termination termination = Termination::completed;
  std::string message;
  std::size_t steps = 0;
};

/// Step from state.t to schedule.t_end, landing exactly on every snapshot
/// time. The initial state is always the first snapshot. Solver errors stop
/// the run and are reported through `termination`/`message`.
Trajectory run(PseudoInverseState state, const SchemeParams& params, const Schedule& schedule,
               const RunOptions& options = {});

}  // namespace fluxlag
