#pragma once

#include "dads/certificates.hpp"

namespace dads {

/// Default ceiling on the dynamic gain z; e^z beyond this is treated as a
/// mis-configured scenario (the gain is provably bounded when the gates pass).
inline constexpr double kDefaultZMax = 50.0;

struct ControllerState {
  double z = 0.0;
  DadsParams params;
};

/// Nonlinear-damping law for the matched class:
///   u = k(y) - C mu^2 G (gradV.g)^3 - C (|A(y,0)|^2 + |phi(y,0)|^2 + mu + 1) G (gradV.g),
/// with G = (b + e^z)^3 / (a^3 beta^2).
double dads_control(const CertificateBundle& bundle, const DadsParams& params, const Vec& y, double z,
                    double z_max = kDefaultZMax);

/// Deadzone update: Gamma e^{-z} (V - eps)^+; exactly zero inside {V <= eps}.
double deadzone_rate(const DadsParams& params, double V_of_y, double z);

/// Law for the reaction-diffusion plant: -c (1 + (b + e^z)^7 / (4 a^6)) (y^7 + y^3 + y).
double pde_dads_control(double c, double a, double b, double y, double z, double z_max = kDefaultZMax);

/// d/dy of pde_dads_control, used for the integrator's stiffness estimate.
double pde_dads_control_slope(double c, double a, double b, double y, double z);

}  // namespace dads
