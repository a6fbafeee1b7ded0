#pragma once

#include <map>
#include <string>

#include "dads/certificates.hpp"
#include "dads/grid_function.hpp"
#include "dads/polynomial.hpp"

namespace dads {

/// ODE plant of the matched class, described entirely by its certificate bundle.
struct OdePlant {
  CertificateBundle bundle;
};

struct PlantDerivative {
  Vec y_dot;
  Vec w_dot;
};

PlantDerivative ode_plant_rhs(const OdePlant& plant, const Vec& y, const Vec& w, double u, const Vec& d,
                              const Vec& theta, const Vec& delta);

/// y' = u + theta w^2, w' = -(w^2 - 1 - y^2) w with
/// k = -y - y^3, V = y^2/2, Q = y^2 + y^4, r = 1, Lambda = 0, mu = 2, Phi = w^2/2,
/// R = w^4/2, gamma = 1. The d and delta channels are present but inert.
CertificateBundle worked_example_bundle();

/// Scalar bundle built from polynomials in (y, w, delta). Required keys:
/// V k mu Q Phi R f g phi A h; gradients are differentiated symbolically.
CertificateBundle polynomial_bundle(const std::map<std::string, Polynomial>& parts,
                                    const ScalarClassFunction& gamma, double r, double Lambda);

/// Two-state analogue of the reaction-diffusion loop:
/// w' = -p pi^2 w + theta_1 y,  y' = u + theta_2 w + d.
struct ScalarPair {
  double y_dot;
  double w_dot;
};
ScalarPair finite_dim_analog_rhs(double p, double y, double w, double u, double d, const Vec& theta);

enum class KernelChoice { unstable_quadratic, linear_saturating, zero };
enum class FunctionalChoice { negative_integral, norm_bounded_projection, zero };

KernelChoice parse_kernel_choice(std::string_view text);
FunctionalChoice parse_functional_choice(std::string_view text);
const char* to_string(KernelChoice c);
const char* to_string(FunctionalChoice c);

/// w_t = p w_xx + theta_1 K(x, y), w(0) = w(1) = 0,  y' = u + theta_2 L(w) + d,
/// semi-discretised with central differences on n_interior nodes.
struct PdePlant {
  double p = 1.0;
  KernelChoice K_choice = KernelChoice::unstable_quadratic;
  FunctionalChoice L_choice = FunctionalChoice::negative_integral;
  int n_interior = 64;
  double K_scale = 1.0;  // linear_saturating only; |K| <= |y| needs K_scale <= 1
  /// Test fixture: -1 flips the sign of the diffusion term.
  double diffusion_sign = 1.0;

  double dx() const { return 1.0 / (n_interior + 1); }
  double kernel(double x, double y) const;
  /// |dK/dy| bound over x, for stiffness estimates.
  double kernel_slope_bound() const;
  double functional(std::span<const double> w) const;
  /// Largest stable explicit step cfl_safety * dx^2 / (2p).
  double cfl_limit(double cfl_safety) const;
};

void validate(const PdePlant& plant);

/// Fills w_dot (size n_interior) and returns y_dot.
double pde_rhs(const PdePlant& plant, std::span<const double> w, double y, double u, double d, const Vec& theta,
               std::span<double> w_dot);

struct PdeState {
  double y;
  GridFunction w;
};

/// Closed-form open-loop solution for the unstable quadratic kernel and the integral
/// functional with theta_1 theta_2 = 6(1 + 2p), d = 0:
/// y = (theta_2/6) e^t, w(t, x) = e^t x (x - 1).
PdeState explicit_unstable_solution(double t, double p, double theta2, int n_interior);

/// theta_1 paired with theta_2 in the closed-form solution.
double explicit_solution_theta1(double p, double theta2);

}  // namespace dads
