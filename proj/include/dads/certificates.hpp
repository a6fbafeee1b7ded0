#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dads/common.hpp"
#include "dads/scalar_function.hpp"

namespace dads {

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using CoupledScalar = std::function<double(const Vec& y, const Vec& w)>;
using CoupledVector = std::function<Vec(const Vec& y, const Vec& w)>;
using InternalDynamics = std::function<Vec(const Vec& y, const Vec& w, const Vec& delta)>;

/// Certificate data for a plant of the matched class
///   y' = f(y) + g(y) (u + phi(y,w)^T theta + A(y,w)^T d),   w' = h(y, w, delta)
/// together with the functions V, Q, Phi, R, mu, k, gamma and constants r, Lambda
/// that make the four dissipation inequalities hold.
struct CertificateBundle {
  std::string name;
  int n = 1;      // dim y
  int l = 1;      // dim w
  int m = 1;      // dim d
  int p_dim = 1;  // dim theta
  int q = 1;      // dim delta

  ScalarField V;
  VectorField gradV;
  ScalarField k;
  ScalarField mu;
  ScalarField Q;
  ScalarField Phi;
  VectorField gradPhi;
  ScalarField R;
  ScalarClassFunction gamma = ScalarClassFunction::constant(0.0);
  double r = 1.0;
  double Lambda = 0.0;

  VectorField f;
  VectorField g;
  CoupledVector phi_full;
  CoupledVector A_full;
  InternalDynamics h;

  Vec phi0(const Vec& y) const { return phi_full(y, Vec(static_cast<std::size_t>(l), 0.0)); }
  Vec A0(const Vec& y) const { return A_full(y, Vec(static_cast<std::size_t>(l), 0.0)); }
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Origin identities, gradient consistency by central differences at seeded
/// random points, and positivity of mu.
ValidationResult check_bundle(const CertificateBundle& bundle, std::uint64_t seed = 7, int samples = 64);

struct DadsParams {
  double epsilon = 0.1;
  double Gamma = 1.0;
  double a = 1.0;
  double beta = 0.25;
  double b = 1.0;
  double C = 1.0;
  double r = 1.0;
};

ValidationResult check_params(const DadsParams& params);

/// Gain function chi(s1, s2, s3, s4) bounding the residual set of the general closed loop.
double chi(double s1, double s2, double s3, double s4, const DadsParams& params,
           const ScalarClassFunction& gamma, double Lambda);

/// Positive non-increasing rate c_eps(tau) with c_eps(tau) (tau - eps/2)^+ <= rho(tau).
/// The infimum is taken on a 2048-point log grid plus a golden-section refinement,
/// then scaled by (1 - 1e-6) so the result never exceeds the exact value.
double c_epsilon(const ScalarClassFunction& rho, double epsilon, double tau);

/// min(s, s exp(-c_eps(s)(t - t0)) + eps/2 + alpha(t0)/c_eps(s)) for solutions of
/// V' <= -rho(V) + alpha(t) with alpha non-increasing and s = V(0) + rho^{-1}(alpha(0)).
double decay_lemma_bound(double s, double t, double t0, double alpha_t0, double epsilon,
                         const ScalarClassFunction& rho);

struct ReactionDiffusionConstants {
  double kappa;
  double Kbar;
  double Bbar;
  double p, c, a, b, epsilon, Gamma;
};

/// Decay rate and gain constants for the reaction-diffusion closed loop.
/// Requires p > 0, c >= 1, b >= 1 >= a > 0, epsilon > 0, Gamma > 0.
ReactionDiffusionConstants reaction_diffusion_constants(double p, double c, double a, double b, double epsilon,
                                                        double Gamma);

struct AssumptionGrid {
  double lo = -3.0;
  double hi = 3.0;
  int points_per_axis = 21;
  int max_points = 10000;
};

struct InequalitySlack {
  std::string name;
  double min_slack = 0.0;
  Vec argmin_y, argmin_w, argmin_delta;
  std::size_t points = 0;
  bool passed = true;
  std::optional<std::string> error;
};

struct AssumptionReport {
  std::vector<InequalitySlack> rows;  // four rows, in the order listed by the bundle check
  bool passed() const;
};

inline constexpr double kAssumptionSlackTolerance = 1e-9;

/// Samples the four certificate inequalities (closed-loop decrease of V under k,
/// dissipation of Phi, w-sensitivity of phi and A, growth bound on phi(y,0)) on a
/// box grid and reports the minimum slack RHS - LHS of each.
AssumptionReport check_assumption_a(const CertificateBundle& bundle, const AssumptionGrid& grid = {});

/// Box grid used by check_assumption_a for a `dim`-dimensional block: a uniform
/// tensor grid (odd point count per axis, so it contains 0) capped at max_points,
/// plus the axis points of the full resolution.
std::vector<Vec> box_grid(int dim, const AssumptionGrid& grid, int max_points);

}  // namespace dads
