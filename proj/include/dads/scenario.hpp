#pragma once

#include <optional>
#include <string>

#include "dads/certificates.hpp"
#include "dads/controller.hpp"
#include "dads/plants.hpp"
#include "dads/signals.hpp"

namespace dads {

enum class PlantType { worked_example, polynomial, finite_dim_analog, pde };
enum class ControlLaw { general, pde };
enum class InitialProfile { zero, sine, parabola };

const char* to_string(PlantType t);
const char* to_string(ControlLaw l);
const char* to_string(InitialProfile p);

struct PlantConfig {
  PlantType type = PlantType::worked_example;
  std::optional<CertificateBundle> bundle;  // worked_example / polynomial
  PdePlant pde;                             // pde (p is shared with finite_dim_analog)
  Vec y0{0.0};
  Vec w0{0.0};                              // ODE plants
  InitialProfile w0_profile = InitialProfile::zero;  // pde plant
  double w0_scale = 1.0;
};

struct ControllerConfig {
  DadsParams params;
  double c = 1.0;
  double z0 = 0.0;
  ControlLaw law = ControlLaw::general;
  double z_max = kDefaultZMax;
};

struct IntegratorConfig {
  double dt = 1e-3;
  bool dt_auto = false;  // use the CFL limit for PDE plants
  double t_end = 10.0;
  int sample_every = 1;
  double cfl_safety = 0.5;
  double blowup_guard = 1e12;
  /// Fraction of the RK4 real-axis stability interval used when splitting a
  /// step into substeps for stiff closed loops.
  double stiffness_safety = 0.5;
};

struct VerifyConfig {
  bool regulation = true;   // general-law asymptotic checks
  bool estimates = true;    // reaction-diffusion quantitative estimates
  bool monitors = true;     // dissipation monitors (pde law)
  double disc_tol = 0.05;
  double abs_tol = 1e-8;
  std::optional<double> tail_abs_tol;  // default: abs_tol (general), 0.05 (pde law)
  double ln_slack = 0.1;
  double settle_tol = 1e-3;
  double converge_tol = 1e-3;
  double tail_fraction = 0.2;
  double monitor_factor = 10.0;
  double max_sample_spacing = 0.01;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  PlantConfig plant;
  ControllerConfig controller;
  SignalSpec d = SignalSpec::zero(1);
  SignalSpec theta = SignalSpec::zero(1);
  SignalSpec delta = SignalSpec::zero(1);
  IntegratorConfig integrator;
  VerifyConfig verify;
};

/// Effective outer step: the CFL limit when dt_auto is set on a PDE plant.
double effective_dt(const Scenario& s);

/// Refuses scenarios that break a structural or stability hypothesis; throws
/// ConfigError naming the violated condition.
void validate_scenario(const Scenario& s);

double tail_abs_tol(const Scenario& s);

}  // namespace dads
