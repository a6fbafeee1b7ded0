#include "dads/controller.hpp"

namespace dads {

namespace {

void guard_gain(double z, double z_max) {
  if (!std::isfinite(z) || z > z_max) {
    throw GuardAbort(GuardKind::gain_overflow,
                     "dynamic gain z = " + format_g17(z) + " exceeds z_max = " + format_g17(z_max) +
                         "; the gain is bounded for admissible parameters, check the 2a*beta < b*r gate");
  }
}

}  // namespace

double dads_control(const CertificateBundle& B, const DadsParams& P, const Vec& y, double z, double z_max) {
  guard_gain(z, z_max);
  const double growth = P.b + std::exp(z);
  const double gain = growth * growth * growth / (P.a * P.a * P.a * P.beta * P.beta);
  const double gv = dot(B.gradV(y), B.g(y));
  const double mu = B.mu(y);
  const Vec A0 = B.A0(y);
  const Vec phi0 = B.phi0(y);
  const double weight = dot(A0, A0) + dot(phi0, phi0) + mu + 1.0;
  return B.k(y) - P.C * mu * mu * gain * gv * gv * gv - P.C * weight * gain * gv;
}

double deadzone_rate(const DadsParams& P, double V_of_y, double z) {
  return P.Gamma * std::exp(-z) * positive_part(V_of_y - P.epsilon);
}

double pde_dads_control(double c, double a, double b, double y, double z, double z_max) {
  guard_gain(z, z_max);
  const double growth = b + std::exp(z);
  const double a3 = a * a * a;
  const double g7 = std::pow(growth, 7);
  const double y2 = y * y;
  const double y3 = y2 * y;
  return -c * (1.0 + g7 / (4.0 * a3 * a3)) * (y3 * y3 * y + y3 + y);
}

double pde_dads_control_slope(double c, double a, double b, double y, double z) {
  const double growth = b + std::exp(z);
  const double a3 = a * a * a;
  const double y2 = y * y;
  return -c * (1.0 + std::pow(growth, 7) / (4.0 * a3 * a3)) * (7.0 * y2 * y2 * y2 + 3.0 * y2 + 1.0);
}

}  // namespace dads
