#include "dads/integrator.hpp"

#include <algorithm>

namespace dads {

void Rk4Stepper::check(const Vec& k, double t) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) {
      throw GuardAbort(GuardKind::non_finite,
                       "non-finite derivative in component " + std::to_string(i) + " at t = " + format_g17(t));
    }
  }
}

AugmentedState step_rk4(const AugmentedRhs& rhs, const AugmentedState& state, double dt) {
  if (!(dt > 0.0)) throw DomainError("step_rk4: dt must be > 0");
  const std::size_t ny = state.y.size(), nw = state.w.size();
  auto pack = [&](const AugmentedState& s) {
    Vec x(s.y);
    x.insert(x.end(), s.w.begin(), s.w.end());
    x.push_back(s.z);
    return x;
  };
  auto unpack = [&](double t, std::span<const double> x) {
    AugmentedState s;
    s.t = t;
    s.y.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ny));
    s.w.assign(x.begin() + static_cast<std::ptrdiff_t>(ny), x.begin() + static_cast<std::ptrdiff_t>(ny + nw));
    s.z = x[ny + nw];
    return s;
  };
  Vec x = pack(state);
  Rk4Stepper stepper(x.size());
  stepper.step(
      [&](double t, std::span<const double> xs, std::span<double> out) {
        const Vec d = pack(rhs(unpack(t, xs)));
        if (d.size() != out.size()) throw ConfigError("step_rk4: derivative has the wrong shape");
        std::copy(d.begin(), d.end(), out.begin());
      },
      state.t, x, dt);
  return unpack(state.t + dt, x);
}

namespace {

// Evaluates a signal, reusing the value for time-invariant specs.
class SignalSource {
 public:
  explicit SignalSource(const SignalSpec& spec)
      : spec_(spec), invariant_(is_time_invariant(spec)), cached_(eval_signal(spec, 0.0)) {}
  const Vec& at(double t) {
    if (!invariant_) cached_ = eval_signal(spec_, t);
    return cached_;
  }

 private:
  const SignalSpec& spec_;
  bool invariant_;
  Vec cached_;
};

class GeneralLoop {
 public:
  explicit GeneralLoop(const Scenario& s)
      : s_(s), plant_{*s.plant.bundle}, B_(plant_.bundle), P_(s.controller.params), d_(s.d), theta_(s.theta),
        delta_(s.delta), n_(static_cast<std::size_t>(B_.n)), l_(static_cast<std::size_t>(B_.l)) {
    P_.r = B_.r;
  }

  Vec initial_state() const {
    Vec x(s_.plant.y0);
    x.insert(x.end(), s_.plant.w0.begin(), s_.plant.w0.end());
    x.push_back(s_.controller.z0);
    return x;
  }

  void operator()(double t, std::span<const double> x, std::span<double> out) {
    const Vec y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_));
    const Vec w(x.begin() + static_cast<std::ptrdiff_t>(n_), x.begin() + static_cast<std::ptrdiff_t>(n_ + l_));
    const double z = x[n_ + l_];
    const double u = dads_control(B_, P_, y, z, s_.controller.z_max);
    const auto der = ode_plant_rhs(plant_, y, w, u, d_.at(t), theta_.at(t), delta_.at(t));
    std::copy(der.y_dot.begin(), der.y_dot.end(), out.begin());
    std::copy(der.w_dot.begin(), der.w_dot.end(), out.begin() + static_cast<std::ptrdiff_t>(n_));
    out[n_ + l_] = deadzone_rate(P_, B_.V(y), z);
  }

  // Gershgorin bound on a forward-difference Jacobian.
  double stiffness(double t, std::span<const double> x) {
    const std::size_t dim = x.size();
    Vec base(dim), bumped(dim), probe(x.begin(), x.end());
    (*this)(t, x, base);
    Vec row_sums(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      probe[j] = x[j] + h;
      (*this)(t, probe, bumped);
      probe[j] = x[j];
      for (std::size_t i = 0; i < dim; ++i) row_sums[i] += std::abs(bumped[i] - base[i]) / h;
    }
    return *std::max_element(row_sums.begin(), row_sums.end());
  }

  double state_norm(std::span<const double> x) const { return norm2(x.first(n_ + l_)); }

  Sample record(double t, std::span<const double> x) {
    Sample smp;
    smp.t = t;
    smp.y.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_));
    smp.w.assign(x.begin() + static_cast<std::ptrdiff_t>(n_), x.begin() + static_cast<std::ptrdiff_t>(n_ + l_));
    smp.z = x[n_ + l_];
    smp.norm_w = norm2(smp.w);
    smp.u = dads_control(B_, P_, smp.y, smp.z, s_.controller.z_max);
    smp.V = B_.V(smp.y);
    smp.Phi = B_.Phi(smp.w);
    smp.U = smp.V + 0.5 * B_.r * smp.Phi;
    smp.deadzone_active = smp.V <= P_.epsilon;
    return smp;
  }

  double dx2() const { return 0.0; }

 private:
  const Scenario& s_;
  OdePlant plant_;
  const CertificateBundle& B_;
  DadsParams P_;
  SignalSource d_, theta_, delta_;
  std::size_t n_, l_;
};

class ReactionDiffusionLoop {
 public:
  explicit ReactionDiffusionLoop(const Scenario& s)
      : s_(s), pde_(s.plant.type == PlantType::pde), P_(s.controller.params), d_(s.d), theta_(s.theta),
        nw_(pde_ ? static_cast<std::size_t>(s.plant.pde.n_interior) : 1),
        theta_sup_(signal_sup_norm(s.theta)) {}

  Vec initial_state() const {
    Vec x{s_.plant.y0[0]};
    if (pde_) {
      const double scale = s_.plant.w0_scale;
      auto profile = [&](double xi) {
        switch (s_.plant.w0_profile) {
          case InitialProfile::zero: return 0.0;
          case InitialProfile::sine: return scale * std::sin(kPi * xi);
          case InitialProfile::parabola: return scale * xi * (xi - 1.0);
        }
        return 0.0;
      };
      const auto w = GridFunction::sample(s_.plant.pde.n_interior, profile);
      x.insert(x.end(), w.values().begin(), w.values().end());
    } else {
      x.push_back(s_.plant.w0[0]);
    }
    x.push_back(s_.controller.z0);
    return x;
  }

  double control(double y, double z) const {
    const auto& ctl = s_.controller;
    return pde_dads_control(ctl.c, ctl.params.a, ctl.params.b, y, z, ctl.z_max);
  }

  void operator()(double t, std::span<const double> x, std::span<double> out) {
    const double y = x[0];
    const double z = x[nw_ + 1];
    const double u = control(y, z);
    const double d = d_.at(t)[0];
    const Vec& theta = theta_.at(t);
    if (pde_) {
      out[0] = pde_rhs(s_.plant.pde, x.subspan(1, nw_), y, u, d, theta, out.subspan(1, nw_));
    } else {
      const auto r = finite_dim_analog_rhs(s_.plant.pde.p, y, x[1], u, d, theta);
      out[0] = r.y_dot;
      out[1] = r.w_dot;
    }
    out[nw_ + 1] = deadzone_rate(P_, 0.5 * y * y, z);
  }

  // Gershgorin rows of the diffusion block and of the y equation.
  double stiffness(double, std::span<const double> x) const {
    const auto& ctl = s_.controller;
    const double u_slope = std::abs(pde_dads_control_slope(ctl.c, ctl.params.a, ctl.params.b, x[0], x[nw_ + 1]));
    const double p = s_.plant.pde.p;
    if (!pde_) return std::max(p * kPi * kPi + theta_sup_, u_slope + theta_sup_);
    const double dx = s_.plant.pde.dx();
    const double diffusion = 4.0 * p / (dx * dx) + theta_sup_ * s_.plant.pde.kernel_slope_bound();
    return std::max(diffusion, u_slope + theta_sup_);
  }

  double norm_w(std::span<const double> x) const {
    return pde_ ? l2_norm(x.subspan(1, nw_)) : std::abs(x[1]);
  }

  double state_norm(std::span<const double> x) const {
    const double nw = norm_w(x);
    return std::sqrt(x[0] * x[0] + nw * nw);
  }

  Sample record(double t, std::span<const double> x) {
    Sample smp;
    smp.t = t;
    smp.y = {x[0]};
    smp.z = x[nw_ + 1];
    smp.norm_w = norm_w(x);
    if (!pde_) smp.w = {x[1]};
    smp.u = control(x[0], smp.z);
    smp.V = 0.5 * x[0] * x[0];
    smp.Phi = 0.5 * smp.norm_w * smp.norm_w;
    smp.U = smp.V + smp.Phi;
    smp.deadzone_active = smp.V <= P_.epsilon;
    return smp;
  }

  double dx2() const { return pde_ ? s_.plant.pde.dx() * s_.plant.pde.dx() : 0.0; }

 private:
  const Scenario& s_;
  bool pde_;
  DadsParams P_;
  SignalSource d_, theta_;
  std::size_t nw_;
  double theta_sup_;
};

constexpr std::size_t kMaxSubsteps = 1'000'000;

template <class Loop>
Trajectory run(const Scenario& s, Loop& loop) {
  Trajectory traj;
  traj.law = s.controller.law;
  traj.n = static_cast<int>(s.plant.y0.size());
  traj.dt = effective_dt(s);
  traj.dx2 = loop.dx2();

  Vec x = loop.initial_state();
  Rk4Stepper stepper(x.size());
  const double dt = traj.dt;
  const double t_end = s.integrator.t_end;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
  const std::size_t every = static_cast<std::size_t>(s.integrator.sample_every);
  const double stable_span = s.integrator.stiffness_safety * kRk4StabilityInterval;

  double initial_energy = 0.0;
  auto push = [&](double t) {
    Sample smp = loop.record(t, x);
    if (traj.samples.empty()) initial_energy = smp.norm_w * smp.norm_w + smp.y[0] * smp.y[0];
    if (traj.law == ControlLaw::pde) smp.energy_bound = energy_bound(s, t, initial_energy);
    traj.samples.push_back(std::move(smp));
  };

  try {
    push(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
      const double t0 = static_cast<double>(k) * dt;
      const double h = k + 1 == steps ? t_end - t0 : dt;
      const double rho = loop.stiffness(t0, x);
      const double ratio = std::isfinite(rho) ? std::ceil(h * rho / stable_span) : 0.0;
      if (!(ratio < static_cast<double>(kMaxSubsteps))) {
        throw GuardAbort(GuardKind::blowup, "stiffness estimate " + format_g17(rho) + " at t = " + format_g17(t0) +
                                                " needs too many substeps; finite escape suspected");
      }
      const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(ratio));
      const double hs = h / static_cast<double>(m);
      for (std::size_t j = 0; j < m; ++j) stepper.step(loop, t0 + static_cast<double>(j) * hs, x, hs);
      traj.substeps_total += m;

      const double t1 = k + 1 == steps ? t_end : static_cast<double>(k + 1) * dt;
      const double size = loop.state_norm(x);
      if (!std::isfinite(size)) {
        throw GuardAbort(GuardKind::non_finite, "non-finite state at t = " + format_g17(t1));
      }
      if (size > s.integrator.blowup_guard) {
        throw GuardAbort(GuardKind::blowup, "state norm " + format_g17(size) + " exceeds the blowup guard at t = " +
                                                format_g17(t1) + "; finite escape suspected");
      }
      if ((k + 1) % every == 0 || k + 1 == steps) push(t1);
    }
  } catch (const GuardAbort& e) {
    traj.aborted = true;
    traj.abort_kind = e.kind();
    traj.abort_reason = e.what();
  }
  return traj;
}

}  // namespace

double energy_bound(const Scenario& s, double t, double initial_energy) {
  const auto& ctl = s.controller;
  const double p = s.plant.pde.p;
  const auto& P = ctl.params;
  const auto k = reaction_diffusion_constants(p, ctl.c, P.a, P.b, P.epsilon, P.Gamma);
  const double dsup = signal_sup_norm(s.d);
  const double th = signal_sup_norm(s.theta);
  const double th4 = th * th * th * th;
  const double pi4 = kPi * kPi * kPi * kPi;
  return std::exp(-k.kappa * t) * initial_energy +
         2.0 * P.a * (dsup * dsup + th4 * th4 + 2.0 / (p * p)) / (P.b * k.kappa) +
         th4 / (2.0 * p * p * pi4 * k.kappa);
}

Trajectory simulate(const Scenario& scenario) {
  validate_scenario(scenario);
  if (scenario.controller.law == ControlLaw::general) {
    GeneralLoop loop(scenario);
    return run(scenario, loop);
  }
  ReactionDiffusionLoop loop(scenario);
  return run(scenario, loop);
}

}  // namespace dads
