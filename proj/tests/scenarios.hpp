#pragma once

#include "dads/plants.hpp"
#include "dads/scenario.hpp"

namespace dads::testing {

inline Scenario worked_example_scenario() {
  Scenario s;
  s.name = "worked_example";
  s.plant.type = PlantType::worked_example;
  s.plant.bundle = worked_example_bundle();
  s.plant.y0 = {2.0};
  s.plant.w0 = {2.0};
  s.controller.law = ControlLaw::general;
  s.controller.params = DadsParams{0.1, 1.0, 1.0, 0.25, 1.0, 1.0, 1.0};
  s.controller.z0 = 0.0;
  s.theta = SignalSpec::constant({5.0});
  s.integrator.dt = 1e-3;
  s.integrator.t_end = 50.0;
  s.integrator.sample_every = 10;
  return s;
}

inline Scenario pde_default_scenario(int n_interior = 64, int sample_every = 16) {
  Scenario s;
  s.name = "pde_default";
  s.plant.type = PlantType::pde;
  s.plant.pde.p = 1.0;
  s.plant.pde.n_interior = n_interior;
  s.plant.w0_profile = InitialProfile::sine;
  s.plant.y0 = {1.0};
  s.controller.law = ControlLaw::pde;
  s.controller.c = 1.0;
  s.controller.params.a = 1.0;
  s.controller.params.b = 1.0;
  s.controller.params.epsilon = 0.05;
  s.controller.params.Gamma = 1.0;
  s.controller.params.beta = 1.0;
  s.theta = SignalSpec::constant({2.0, 2.0});
  s.d = SignalSpec::sinusoid(0.5, 1.0);
  s.integrator.dt_auto = true;
  s.integrator.t_end = 30.0;
  s.integrator.sample_every = sample_every;
  return s;
}

}  // namespace dads::testing
