#include "dads/plants.hpp"

namespace dads {

PlantDerivative ode_plant_rhs(const OdePlant& plant, const Vec& y, const Vec& w, double u, const Vec& d,
                              const Vec& theta, const Vec& delta) {
  const auto& B = plant.bundle;
  auto check = [](std::size_t got, int want, const char* what) {
    if (got != static_cast<std::size_t>(want)) {
      throw ConfigError(std::string("ode_plant_rhs: ") + what + " has dimension " + std::to_string(got) +
                        ", expected " + std::to_string(want));
    }
  };
  check(y.size(), B.n, "y");
  check(w.size(), B.l, "w");
  check(d.size(), B.m, "d");
  check(theta.size(), B.p_dim, "theta");
  check(delta.size(), B.q, "delta");

  const double channel = u + dot(B.phi_full(y, w), theta) + dot(B.A_full(y, w), d);
  PlantDerivative out{B.f(y), B.h(y, w, delta)};
  const Vec g = B.g(y);
  for (std::size_t i = 0; i < out.y_dot.size(); ++i) out.y_dot[i] += g[i] * channel;
  return out;
}

CertificateBundle worked_example_bundle() {
  CertificateBundle b;
  b.name = "worked-example";
  b.n = b.l = b.m = b.p_dim = b.q = 1;
  b.V = [](const Vec& y) { return 0.5 * y[0] * y[0]; };
  b.gradV = [](const Vec& y) { return Vec{y[0]}; };
  b.k = [](const Vec& y) { return -y[0] - y[0] * y[0] * y[0]; };
  b.mu = [](const Vec&) { return 2.0; };
  b.Q = [](const Vec& y) {
    const double y2 = y[0] * y[0];
    return y2 + y2 * y2;
  };
  b.Phi = [](const Vec& w) { return 0.5 * w[0] * w[0]; };
  b.gradPhi = [](const Vec& w) { return Vec{w[0]}; };
  b.R = [](const Vec& w) {
    const double w2 = w[0] * w[0];
    return 0.5 * w2 * w2;
  };
  b.gamma = ScalarClassFunction::constant(1.0);
  b.r = 1.0;
  b.Lambda = 0.0;
  b.f = [](const Vec&) { return Vec{0.0}; };
  b.g = [](const Vec&) { return Vec{1.0}; };
  b.phi_full = [](const Vec&, const Vec& w) { return Vec{w[0] * w[0]}; };
  b.A_full = [](const Vec&, const Vec&) { return Vec{0.0}; };
  b.h = [](const Vec& y, const Vec& w, const Vec&) {
    return Vec{-(w[0] * w[0] - 1.0 - y[0] * y[0]) * w[0]};
  };
  return b;
}

CertificateBundle polynomial_bundle(const std::map<std::string, Polynomial>& parts, const ScalarClassFunction& gamma,
                                    double r, double Lambda) {
  auto get = [&](const std::string& key) -> const Polynomial& {
    auto it = parts.find(key);
    if (it == parts.end()) throw ConfigError("polynomial bundle: missing '" + key + "'");
    return it->second;
  };
  const Polynomial V = get("V"), k = get("k"), mu = get("mu"), Q = get("Q"), Phi = get("Phi"), R = get("R");
  const Polynomial f = get("f"), g = get("g"), phi = get("phi"), A = get("A"), h = get("h");
  using Named = std::pair<const Polynomial*, const char*>;
  auto only = [](const Polynomial& poly, const char* key, int allowed) {
    for (int v = 0; v < 3; ++v) {
      if (v != allowed && poly.depends_on(v)) {
        throw ConfigError(std::string("polynomial bundle: ") + key + " may only use " + (allowed == 0 ? "y" : "w"));
      }
    }
  };
  for (const auto& [poly, key] : {Named{&V, "V"}, Named{&k, "k"}, Named{&mu, "mu"}, Named{&Q, "Q"}, Named{&f, "f"},
                                  Named{&g, "g"}}) {
    only(*poly, key, 0);
  }
  only(Phi, "Phi", 1);
  only(R, "R", 1);
  if (phi.depends_on(2) || A.depends_on(2)) throw ConfigError("polynomial bundle: phi and A may not use delta");
  if (!(r > 0.0)) throw ConfigError("polynomial bundle: r must be > 0");
  if (!(Lambda >= 0.0)) throw ConfigError("polynomial bundle: Lambda must be >= 0");

  CertificateBundle b;
  b.name = "polynomial";
  b.n = b.l = b.m = b.p_dim = b.q = 1;
  const Polynomial dV = V.derivative(0), dPhi = Phi.derivative(1);
  b.V = [V](const Vec& y) { return V(y[0]); };
  b.gradV = [dV](const Vec& y) { return Vec{dV(y[0])}; };
  b.k = [k](const Vec& y) { return k(y[0]); };
  b.mu = [mu](const Vec& y) { return mu(y[0]); };
  b.Q = [Q](const Vec& y) { return Q(y[0]); };
  b.Phi = [Phi](const Vec& w) { return Phi(0.0, w[0]); };
  b.gradPhi = [dPhi](const Vec& w) { return Vec{dPhi(0.0, w[0])}; };
  b.R = [R](const Vec& w) { return R(0.0, w[0]); };
  b.gamma = gamma;
  b.r = r;
  b.Lambda = Lambda;
  b.f = [f](const Vec& y) { return Vec{f(y[0])}; };
  b.g = [g](const Vec& y) { return Vec{g(y[0])}; };
  b.phi_full = [phi](const Vec& y, const Vec& w) { return Vec{phi(y[0], w[0])}; };
  b.A_full = [A](const Vec& y, const Vec& w) { return Vec{A(y[0], w[0])}; };
  b.h = [h](const Vec& y, const Vec& w, const Vec& d) { return Vec{h(y[0], w[0], d[0])}; };
  return b;
}

ScalarPair finite_dim_analog_rhs(double p, double y, double w, double u, double d, const Vec& theta) {
  if (!(p > 0.0)) throw DomainError("finite_dim_analog_rhs: p must be > 0");
  if (theta.size() != 2) throw ConfigError("finite_dim_analog_rhs: theta must have 2 components");
  return {u + theta[1] * w + d, -p * kPi * kPi * w + theta[0] * y};
}

KernelChoice parse_kernel_choice(std::string_view text) {
  for (auto c : {KernelChoice::unstable_quadratic, KernelChoice::linear_saturating, KernelChoice::zero}) {
    if (text == to_string(c)) return c;
  }
  throw ConfigError("unknown K_choice '" + std::string(text) + "'");
}

FunctionalChoice parse_functional_choice(std::string_view text) {
  for (auto c :
       {FunctionalChoice::negative_integral, FunctionalChoice::norm_bounded_projection, FunctionalChoice::zero}) {
    if (text == to_string(c)) return c;
  }
  throw ConfigError("unknown L_choice '" + std::string(text) + "'");
}

const char* to_string(KernelChoice c) {
  switch (c) {
    case KernelChoice::unstable_quadratic: return "unstable-quadratic";
    case KernelChoice::linear_saturating: return "linear-saturating";
    case KernelChoice::zero: return "zero";
  }
  return "unknown";
}

const char* to_string(FunctionalChoice c) {
  switch (c) {
    case FunctionalChoice::negative_integral: return "negative-integral";
    case FunctionalChoice::norm_bounded_projection: return "norm-bounded-projection";
    case FunctionalChoice::zero: return "zero";
  }
  return "unknown";
}

double PdePlant::kernel(double x, double y) const {
  switch (K_choice) {
    case KernelChoice::unstable_quadratic: return (x * x - x - 2.0 * p) / (1.0 + 2.0 * p) * y;
    case KernelChoice::linear_saturating: return K_scale * x * y / (1.0 + y * y);
    case KernelChoice::zero: return 0.0;
  }
  return 0.0;
}

double PdePlant::kernel_slope_bound() const {
  switch (K_choice) {
    case KernelChoice::unstable_quadratic: return (2.0 * p + 0.25) / (1.0 + 2.0 * p);
    case KernelChoice::linear_saturating: return std::abs(K_scale);
    case KernelChoice::zero: return 0.0;
  }
  return 0.0;
}

double PdePlant::functional(std::span<const double> w) const {
  const double h = 1.0 / static_cast<double>(w.size() + 1);
  switch (L_choice) {
    case FunctionalChoice::negative_integral: {
      double s = 0.0;
      for (double v : w) s += v;
      return -h * s;
    }
    case FunctionalChoice::norm_bounded_projection: {
      // psi = sin(pi x) normalised to unit discrete norm.
      double proj = 0.0, psi_sq = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double psi = std::sin(kPi * static_cast<double>(i + 1) * h);
        proj += psi * w[i];
        psi_sq += psi * psi;
      }
      return proj * std::sqrt(h / psi_sq);
    }
    case FunctionalChoice::zero:
      return 0.0;
  }
  return 0.0;
}

double PdePlant::cfl_limit(double cfl_safety) const { return cfl_safety * dx() * dx() / (2.0 * p); }

void validate(const PdePlant& plant) {
  if (!(plant.p > 0.0)) throw ConfigError("pde plant: p must be > 0");
  if (plant.n_interior < 2) throw ConfigError("pde plant: n_interior must be >= 2");
  if (plant.K_choice == KernelChoice::linear_saturating && !(std::abs(plant.K_scale) <= 1.0)) {
    throw ConfigError("pde plant: |K_scale| <= 1 is needed for |K(x,y)| <= |y|");
  }
}

double pde_rhs(const PdePlant& plant, std::span<const double> w, double y, double u, double d, const Vec& theta,
               std::span<double> w_dot) {
  const int n = static_cast<int>(w.size());
  if (n != plant.n_interior || w_dot.size() != w.size()) throw ConfigError("pde_rhs: grid size mismatch");
  if (theta.size() != 2) throw ConfigError("pde_rhs: theta must have 2 components");
  const double dx = plant.dx();
  const double diff = plant.diffusion_sign * plant.p / (dx * dx);
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? w[i - 1] : 0.0;
    const double right = i + 1 < n ? w[i + 1] : 0.0;
    w_dot[i] = diff * (left - 2.0 * w[i] + right) + theta[0] * plant.kernel((i + 1) * dx, y);
  }
  return u + theta[1] * plant.functional(w) + d;
}

double explicit_solution_theta1(double p, double theta2) {
  if (theta2 == 0.0) throw DomainError("explicit_unstable_solution: theta2 must be non-zero");
  return 6.0 * (1.0 + 2.0 * p) / theta2;
}

PdeState explicit_unstable_solution(double t, double p, double theta2, int n_interior) {
  if (theta2 == 0.0) throw DomainError("explicit_unstable_solution: theta2 must be non-zero");
  if (!(p > 0.0)) throw DomainError("explicit_unstable_solution: p must be > 0");
  const double growth = std::exp(t);
  return {theta2 / 6.0 * growth,
          GridFunction::sample(n_interior, [growth](double x) { return growth * x * (x - 1.0); })};
}

}  // namespace dads
