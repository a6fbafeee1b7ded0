#pragma once

#include <optional>

#include "dads/grid_function.hpp"
#include "dads/scenario.hpp"

namespace dads {

/// Plant state plus the dynamic gain z at time t.
struct AugmentedState {
  double t = 0.0;
  Vec y;
  Vec w;
  double z = 0.0;
};

using AugmentedRhs = std::function<AugmentedState(const AugmentedState&)>;

/// One classical RK4 step of size dt on flat state x.
/// Rhs: void(double t, std::span<const double> x, std::span<double> dxdt).
class Rk4Stepper {
 public:
  explicit Rk4Stepper(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), stage_(dim) {}

  template <class Rhs>
  void step(Rhs&& rhs, double t, std::span<double> x, double dt) {
    const std::size_t n = x.size();
    rhs(t, std::span<const double>(x), std::span<double>(k1_));
    check(k1_, t);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + 0.5 * dt * k1_[i];
    rhs(t + 0.5 * dt, std::span<const double>(stage_), std::span<double>(k2_));
    check(k2_, t + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + 0.5 * dt * k2_[i];
    rhs(t + 0.5 * dt, std::span<const double>(stage_), std::span<double>(k3_));
    check(k3_, t + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + dt * k3_[i];
    rhs(t + dt, std::span<const double>(stage_), std::span<double>(k4_));
    check(k4_, t + dt);
    for (std::size_t i = 0; i < n; ++i) x[i] += dt / 6.0 * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
  }

 private:
  static void check(const Vec& k, double t);

  Vec k1_, k2_, k3_, k4_, stage_;
};

AugmentedState step_rk4(const AugmentedRhs& rhs, const AugmentedState& state, double dt);

/// Largest negative-real-axis step for which classical RK4 stays stable, times |lambda|.
inline constexpr double kRk4StabilityInterval = 2.785;

struct Sample {
  double t = 0.0;
  Vec y;
  Vec w;  // ODE plants only
  double norm_w = 0.0;
  double z = 0.0;
  double u = 0.0;
  double V = 0.0;
  double Phi = 0.0;
  double U = 0.0;
  bool deadzone_active = false;  // V(y) <= epsilon: adaptation frozen
  double energy_bound = 0.0;        // pde law only
};

struct Trajectory {
  ControlLaw law = ControlLaw::general;
  int n = 1;
  double dt = 0.0;           // outer step
  double dx2 = 0.0;          // grid spacing squared, 0 for ODE plants
  std::vector<Sample> samples;
  bool aborted = false;
  std::optional<GuardKind> abort_kind;
  std::string abort_reason;
  std::size_t substeps_total = 0;
};

/// Runs the closed loop. Guard trips end the run early with aborted = true and the
/// samples recorded so far; configuration problems throw ConfigError.
Trajectory simulate(const Scenario& scenario);

/// Energy-decay bound e^{-kappa t}(|w0|^2 + y0^2) + 2a(|d|^2 + |theta|^8 + 2/p^2)/(b kappa)
/// + |theta|^4/(2 p^2 pi^4 kappa) for the reaction-diffusion loop.
double energy_bound(const Scenario& scenario, double t, double initial_energy);

}  // namespace dads
