#include "dads/scenario.hpp"

namespace dads {

const char* to_string(PlantType t) {
  switch (t) {
    case PlantType::worked_example: return "worked-example";
    case PlantType::polynomial: return "polynomial";
    case PlantType::finite_dim_analog: return "finite-dim-analog";
    case PlantType::pde: return "pde";
  }
  return "unknown";
}

const char* to_string(ControlLaw l) { return l == ControlLaw::general ? "general" : "pde"; }

const char* to_string(InitialProfile p) {
  switch (p) {
    case InitialProfile::zero: return "zero";
    case InitialProfile::sine: return "sine";
    case InitialProfile::parabola: return "parabola";
  }
  return "unknown";
}

double effective_dt(const Scenario& s) {
  if (s.integrator.dt_auto && s.plant.type == PlantType::pde) return s.plant.pde.cfl_limit(s.integrator.cfl_safety);
  return s.integrator.dt;
}

double tail_abs_tol(const Scenario& s) {
  if (s.verify.tail_abs_tol) return *s.verify.tail_abs_tol;
  return s.controller.law == ControlLaw::pde ? 0.05 : s.verify.abs_tol;
}

namespace {

void require_dim(const SignalSpec& sig, int want, const char* name) {
  if (sig.dim != want) {
    throw ConfigError(std::string("signal ") + name + " has dim " + std::to_string(sig.dim) + ", the plant expects " +
                      std::to_string(want));
  }
}

void require_size(const Vec& v, int want, const char* name) {
  if (static_cast<int>(v.size()) != want) {
    throw ConfigError(std::string("plant.") + name + " has " + std::to_string(v.size()) + " entries, expected " +
                      std::to_string(want));
  }
}

}  // namespace

void validate_scenario(const Scenario& s) {
  const bool general_plant = s.plant.type == PlantType::worked_example || s.plant.type == PlantType::polynomial;
  const auto& ctl = s.controller;
  if (general_plant != (ctl.law == ControlLaw::general)) {
    throw ConfigError(std::string("controller.law = ") + to_string(ctl.law) + " is incompatible with plant.type = " +
                      to_string(s.plant.type));
  }
  validate(s.d);
  validate(s.theta);
  validate(s.delta);
  if (!std::isfinite(ctl.z0)) throw ConfigError("controller.z0 must be finite");
  if (!(ctl.z0 < ctl.z_max)) throw ConfigError("controller.z0 must be below z_max");

  if (general_plant) {
    if (!s.plant.bundle) throw ConfigError("plant bundle missing");
    const auto& B = *s.plant.bundle;
    DadsParams p = ctl.params;
    p.r = B.r;
    const auto gate = check_params(p);
    if (!gate.ok()) throw ConfigError("controller parameters violate: " + gate.summary());
    const auto bundle_check = check_bundle(B);
    if (!bundle_check.ok()) throw ConfigError("certificate bundle violates: " + bundle_check.summary());
    require_dim(s.d, B.m, "d");
    require_dim(s.theta, B.p_dim, "theta");
    require_dim(s.delta, B.q, "delta");
    require_size(s.plant.y0, B.n, "y0");
    require_size(s.plant.w0, B.l, "w0");
  } else {
    try {
      reaction_diffusion_constants(s.plant.pde.p, ctl.c, ctl.params.a, ctl.params.b, ctl.params.epsilon,
                                   ctl.params.Gamma);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    require_dim(s.d, 1, "d");
    require_dim(s.theta, 2, "theta");
    if (s.verify.estimates && s.theta.kind == SignalKind::piecewise_constant) {
      throw ConfigError("theta must be continuous for the reaction-diffusion estimates (piecewise-constant given)");
    }
    require_size(s.plant.y0, 1, "y0");
    if (s.plant.type == PlantType::finite_dim_analog) {
      require_size(s.plant.w0, 1, "w0");
      if (!(s.plant.pde.p > 0.0)) throw ConfigError("plant.p must be > 0");
    } else {
      validate(s.plant.pde);
    }
  }

  const auto& in = s.integrator;
  if (!(in.t_end > 0.0)) throw ConfigError("integrator.t_end must be > 0");
  if (in.sample_every < 1) throw ConfigError("integrator.sample_every must be >= 1");
  if (!(in.cfl_safety > 0.0 && in.cfl_safety <= 1.0)) throw ConfigError("integrator.cfl_safety must be in (0,1]");
  if (!(in.blowup_guard > 0.0)) throw ConfigError("integrator.blowup_guard must be > 0");
  if (!(in.stiffness_safety > 0.0 && in.stiffness_safety <= 1.0)) {
    throw ConfigError("integrator.stiffness_safety must be in (0,1]");
  }
  if (in.dt_auto && s.plant.type != PlantType::pde) throw ConfigError("integrator.dt = auto needs a pde plant");
  if (!in.dt_auto && !(in.dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
  if (s.plant.type == PlantType::pde && !in.dt_auto) {
    const double limit = s.plant.pde.cfl_limit(in.cfl_safety);
    if (in.dt > limit) {
      throw ConfigError("integrator.dt = " + format_g17(in.dt) + " exceeds the diffusion stability limit; use dt <= " +
                        format_g17(limit));
    }
  }
}

}  // namespace dads
