#include "fluxlag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fluxlag/errors.hpp"

namespace fluxlag {

void SchemeParams::validate() const {
  if (!(m >= 1.0) || !std::isfinite(m)) throw std::invalid_argument("m must be >= 1");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be > 0");
  if (!(alpha_cfl > 2.0) || !std::isfinite(alpha_cfl)) throw std::invalid_argument("alpha_cfl must be > 2");
  if (dt_max && !(*dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
  if (!(psi_eta_cap > 0.0)) throw std::invalid_argument("psi_eta_cap must be > 0");
}

Integrator::Integrator(SchemeParams params) : params_(params) {
  params_.validate();
  const double e = params_.m - 1.0;
  if (e == 0.5) {
    power_kind_ = PowerKind::sqrt;
  } else if (e == 1.5) {
    power_kind_ = PowerKind::sqrt3;
  } else if (e == std::floor(e) && e <= 16.0) {
    power_kind_ = e == 0.0 ? PowerKind::one : PowerKind::integer;
    power_int_ = static_cast<int>(e);
  }
}

// base^(m-1)
double Integrator::power(double base) const {
  switch (power_kind_) {
    case PowerKind::one: return 1.0;
    case PowerKind::sqrt: return std::sqrt(base);
    case PowerKind::sqrt3: return base * std::sqrt(base);
    case PowerKind::integer: {
      double r = base;
      for (int k = 1; k < power_int_; ++k) r *= base;
      return r;
    }
    case PowerKind::general: break;
  }
  return std::pow(base, params_.m - 1.0);
}

void Integrator::bind_mesh(const MassMesh& mesh) {
  if (bound_mesh_ == &mesh) return;
  const auto h = mesh.spacings();
  inv_h_.resize(h.size());
  inv_hh_.assign(mesh.size(), 0.0);
  for (std::size_t j = 0; j < h.size(); ++j) inv_h_[j] = 1.0 / h[j];
  for (std::size_t i = 1; i + 1 < mesh.size(); ++i) inv_hh_[i] = inv_h_[i - 1] * inv_h_[i];
  bound_mesh_ = &mesh;
  rho_owner_ = nullptr;
}

void Integrator::evaluate(const PseudoInverseState& state) {
  if (!state.mesh || state.mesh->size() != state.size()) {
    throw std::invalid_argument("state and mesh sizes differ");
  }
  bind_mesh(*state.mesh);
  const std::size_t n = state.size();
  const auto h = state.mesh->spacings();
  rho_.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double width = state.phi[j + 1] - state.phi[j];
    if (!(width > 0.0)) throw SolverError("non-positive particle spacing at segment " + std::to_string(j), j);
    rho_[j] = h[j] / width;
  }
  evaluate_segments(state);
}

void Integrator::evaluate_segments(const PseudoInverseState& state) {
  const std::size_t n = state.size();
  const std::size_t k = state.argmax;
  field_.psi.resize(n);
  field_.psi_eta.resize(n);
  velocity_.resize(n);
  auto& psi = field_.psi;
  auto& dpsi = field_.psi_eta;
  psi[0] = 0.0;
  psi[n - 1] = 0.0;
  for (std::size_t i = 1; i <= k; ++i) psi[i] = rho_[i];
  for (std::size_t i = k + 1; i + 1 < n; ++i) psi[i] = rho_[i - 1];
  dpsi[0] = 0.0;
  dpsi[n - 1] = 0.0;
  for (std::size_t i = 1; i <= k; ++i) dpsi[i] = (psi[i] - psi[i - 1]) * inv_h_[i - 1];
  for (std::size_t i = k + 1; i + 1 < n; ++i) dpsi[i] = (psi[i + 1] - psi[i]) * inv_h_[i];
  field_.trace_left = psi[1];
  field_.trace_right = psi[n - 2];

  const double nu = params_.nu;
  const double nu2 = nu * nu;
  const double cap = params_.psi_eta_cap;
  double max_psi = 0.0;
  double local_ratio = 0.0;
  bool finite = true;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double g = std::clamp(dpsi[i], -cap, cap);
    const double lead = power(psi[i]);
    const double v = -lead * nu * g / std::sqrt(1.0 + nu2 * g * g);
    velocity_[i] = v;
    finite = finite && std::isfinite(v);
    max_psi = std::max(max_psi, psi[i]);
    local_ratio = std::max(local_ratio, lead * psi[i] * inv_hh_[i]);
  }
  velocity_[0] = -power(field_.trace_left);
  velocity_[n - 1] = power(field_.trace_right);
  max_psi_ = max_psi;
  local_ratio_ = local_ratio;
  if (!finite || !std::isfinite(velocity_[0]) || !std::isfinite(velocity_[n - 1])) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(velocity_[i])) throw SolverError("non-finite velocity at node " + std::to_string(i), i);
    }
  }
}

double Integrator::stable_dt(const MassMesh& mesh) const {
  if (!(max_psi_ > 0.0)) throw SolverError("degenerate state: maximum density is zero");
  double dt = 0.0;
  if (params_.cfl_rule == CflRule::local) {
    dt = 1.0 / (params_.alpha_cfl * params_.nu * local_ratio_);
  } else {
    const double h = mesh.min_spacing();
    dt = h * h / (params_.alpha_cfl * params_.nu * power(max_psi_) * max_psi_);
  }
  if (params_.dt_max) dt = std::min(dt, *params_.dt_max);
  return dt;
}

StepRecord Integrator::advance(PseudoInverseState& state, double stop) {
  if (rho_owner_ == &state && rho_time_ == state.t && bound_mesh_ == state.mesh.get()) {
    evaluate_segments(state);
  } else {
    evaluate(state);
  }
  const MassMesh& mesh = *state.mesh;
  double dt = stable_dt(mesh);
  const double remaining = stop - state.t;
  bool lands = false;
  if (dt >= remaining) {
    dt = remaining;
    lands = true;
  }
  StepRecord rec;
  if (!(dt > 0.0)) {
    rec.t = state.t;
    return rec;
  }
  if (!lands && state.t + dt == state.t) {
    throw SolverError("time step underflow at t = " + std::to_string(state.t));
  }
  const std::size_t n = state.size();
  double max_speed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.phi[i] += dt * velocity_[i];
    max_speed = std::max(max_speed, std::abs(velocity_[i]));
  }

  // New segment densities; also the argmax search and the monotonicity and
  // finiteness checks.
  const auto h = mesh.spacings();
  std::size_t best = 0;
  double best_rho = -1.0;
  bool ok = true;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double width = state.phi[j + 1] - state.phi[j];
    ok = ok && width > 0.0 && width < std::numeric_limits<double>::infinity();
    const double rho = h[j] / width;
    rho_[j] = rho;
    if (rho > best_rho * (1.0 + 1e-12)) {
      best_rho = rho;
      best = j;
    }
  }
  if (!ok) {
    rho_owner_ = nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(state.phi[i])) throw SolverError("non-finite position at node " + std::to_string(i), i);
    }
    locate_max_density(state.phi, mesh, state.argmax);  // throws with the offending pair
  }
  if (!(rho_[state.argmax] >= best_rho * (1.0 - 1e-12))) state.argmax = best;
  state.t = lands ? stop : state.t + dt;
  rho_owner_ = &state;
  rho_time_ = state.t;

  ++steps_;
  rec.step = steps_;
  rec.t = state.t;
  rec.dt = dt;
  rec.max_speed = max_speed;
  rec.support_left = state.phi.front();
  rec.support_right = state.phi.back();
  const std::size_t k = state.argmax;
  rec.u_max = rho_[k];
  rec.trace_left = 1 <= k ? rho_[1] : rho_[0];
  rec.trace_right = n - 2 <= k ? rho_[n - 2] : rho_[n - 3];
  return rec;
}

std::vector<double> rhs(const PseudoInverseState& state, const SchemeParams& params) {
  Integrator integrator(params);
  integrator.evaluate(state);
  return integrator.velocity();
}

double cfl_dt(const PseudoInverseState& state, const SchemeParams& params, std::optional<double> next_stop) {
  Integrator integrator(params);
  integrator.evaluate(state);
  double dt = integrator.stable_dt(*state.mesh);
  if (next_stop) dt = std::min(dt, *next_stop - state.t);
  return dt;
}

std::size_t track_argmax(const PseudoInverseState& state) {
  return locate_max_density(state.phi, *state.mesh, state.argmax);
}

PseudoInverseState step(const PseudoInverseState& state, const SchemeParams& params) {
  PseudoInverseState next = state;
  Integrator integrator(params);
  integrator.advance(next, std::numeric_limits<double>::infinity());
  return next;
}

std::string to_string(CflRule rule) {
  return rule == CflRule::local ? "local" : "global";
}

std::string to_string(Termination reason) {
  switch (reason) {
    case Termination::completed: return "completed";
    case Termination::solver_error: return "solver_error";
    case Termination::step_limit: return "step_limit";
  }
  return "unknown";
}

Trajectory run(PseudoInverseState state, const SchemeParams& params, const Schedule& schedule,
               const RunOptions& options) {
  if (schedule.t_end < state.t) throw std::invalid_argument("t_end precedes the initial time");
  if (!std::is_sorted(schedule.snapshot_times.begin(), schedule.snapshot_times.end())) {
    throw std::invalid_argument("snapshot times must be nondecreasing");
  }
  for (double ts : schedule.snapshot_times) {
    if (ts < state.t || ts > schedule.t_end) {
      throw std::invalid_argument("snapshot time " + std::to_string(ts) + " outside [t_start, t_end]");
    }
  }

  std::vector<double> stops;
  for (double ts : schedule.snapshot_times) {
    if (ts > state.t && (stops.empty() || ts > stops.back())) stops.push_back(ts);
  }
  if (stops.empty() || stops.back() < schedule.t_end) stops.push_back(schedule.t_end);
  const auto is_snapshot = [&](double ts) {
    return std::binary_search(schedule.snapshot_times.begin(), schedule.snapshot_times.end(), ts);
  };

  Trajectory traj;
  traj.snapshots.push_back(state);
  Integrator integrator(params);
  try {
    for (double stop : stops) {
      while (state.t < stop) {
        if (options.max_steps != 0 && traj.steps >= options.max_steps) {
          traj.termination = Termination::step_limit;
          traj.message = "step limit reached at t = " + std::to_string(state.t);
          return traj;
        }
        const StepRecord rec = integrator.advance(state, stop);
        ++traj.steps;
        if (options.log_every != 0 && traj.steps % options.log_every == 0) traj.log.push_back(rec);
        if (options.on_step) options.on_step(rec, state);
      }
      if (is_snapshot(stop)) traj.snapshots.push_back(state);
    }
  } catch (const SolverError& e) {
    traj.termination = Termination::solver_error;
    traj.message = e.what();
  }
  return traj;
}

}  // namespace fluxlag
