#include "dads/certificates.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dads/signals.hpp"

namespace dads {

std::string ValidationResult::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationResult check_params(const DadsParams& p) {
  ValidationResult res;
  auto require = [&](bool cond, const char* what) {
    if (!cond) res.violations.emplace_back(what);
  };
  require(p.epsilon > 0.0, "epsilon > 0");
  require(p.Gamma > 0.0, "Gamma > 0");
  require(p.a > 0.0 && p.a <= 1.0, "a in (0,1]");
  require(p.beta > 0.0 && p.beta <= 1.0, "beta in (0,1]");
  require(p.b >= 1.0, "b >= 1");
  require(p.C >= 1.0, "C >= 1");
  require(p.r > 0.0, "r > 0");
  require(2.0 * p.a * p.beta < p.b * p.r, "2a*beta < b*r");
  return res;
}

double chi(double s1, double s2, double s3, double s4, const DadsParams& p,
           const ScalarClassFunction& gamma, double Lambda) {
  if (!(s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0 && s4 >= 0.0)) throw DomainError("chi: arguments must be >= 0");
  if (!(Lambda >= 0.0)) throw DomainError("chi: Lambda must be >= 0");
  const double excess = positive_part(s3 - p.b - s4);
  const double e2 = excess * excess;
  const double s1sq = s1 * s1;
  const double numerator = s1sq + s1sq * s1sq + e2 + e2 * e2 + 2.0 * p.beta * Lambda;
  return 0.5 * p.r * gamma(s2) + p.a * numerator / (p.b + s4);
}

double c_epsilon(const ScalarClassFunction& rho, double epsilon, double tau) {
  if (!rho.flags().is_Kinfinity) throw ContractError("c_epsilon requires a K-infinity rho: " + rho.describe());
  if (!(epsilon > 0.0)) throw DomainError("c_epsilon: epsilon must be > 0");
  if (!(tau >= 0.0)) throw DomainError("c_epsilon: tau must be >= 0");
  const double half = 0.5 * epsilon;
  if (tau <= half) return 1.0;

  auto ratio = [&](double l) { return 2.0 * rho(l) / (2.0 * l - epsilon); };
  constexpr int kGrid = 2048;
  const double span = tau - half;
  Vec ls(kGrid);
  for (int k = 0; k < kGrid; ++k) {
    ls[k] = half + span * std::pow(10.0, -8.0 * (1.0 - static_cast<double>(k) / (kGrid - 1)));
  }
  ls.back() = tau;

  int best_k = 0;
  double best = ratio(ls[0]);
  for (int k = 1; k < kGrid; ++k) {
    const double v = ratio(ls[k]);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }

  // Golden-section refinement on the bracket around the grid argmin.
  double lo = ls[std::max(best_k - 1, 0)];
  double hi = ls[std::min(best_k + 1, kGrid - 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = ratio(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = ratio(x2);
    }
    best = std::min({best, f1, f2});
  }
  return std::min(1.0, best * (1.0 - 1e-6));
}

double decay_lemma_bound(double s, double t, double t0, double alpha_t0, double epsilon,
                         const ScalarClassFunction& rho) {
  if (!(t0 >= 0.0)) throw DomainError("decay_lemma_bound: t0 must be >= 0");
  if (!(t >= t0)) throw DomainError("decay_lemma_bound: t must be >= t0");
  if (!(s >= 0.0)) throw DomainError("decay_lemma_bound: s must be >= 0");
  if (!(alpha_t0 >= 0.0)) throw DomainError("decay_lemma_bound: alpha(t0) must be >= 0");
  const double c = c_epsilon(rho, epsilon, s);
  return std::min(s, s * std::exp(-c * (t - t0)) + 0.5 * epsilon + alpha_t0 / c);
}

ReactionDiffusionConstants reaction_diffusion_constants(double p, double c, double a, double b, double epsilon,
                                                        double Gamma) {
  if (!(p > 0.0)) throw DomainError("reaction_diffusion_constants: hypothesis p > 0 violated");
  if (!(c >= 1.0)) throw DomainError("reaction_diffusion_constants: hypothesis c >= 1 violated");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("reaction_diffusion_constants: hypothesis 1 >= a > 0 violated");
  if (!(b >= 1.0)) throw DomainError("reaction_diffusion_constants: hypothesis b >= 1 violated");
  if (!(epsilon > 0.0)) throw DomainError("reaction_diffusion_constants: hypothesis epsilon > 0 violated");
  if (!(Gamma > 0.0)) throw DomainError("reaction_diffusion_constants: hypothesis Gamma > 0 violated");
  const double pi2 = kPi * kPi;
  const double kappa = std::min(p * pi2 / 2.0, 2.0 * c);
  const double Kbar = (4.0 * p * pi2 * (b * kappa + a * p * pi2) + 2.0 * b * kappa * p * p * pi2 * pi2 + b) /
                      (4.0 * p * pi2 * b * kappa);
  const double Bbar = (a * Kbar * (epsilon * Gamma + 2.0 * c) + epsilon * c * Gamma) / (4.0 * c * c * epsilon);
  return {kappa, Kbar, Bbar, p, c, a, b, epsilon, Gamma};
}

ValidationResult check_bundle(const CertificateBundle& B, std::uint64_t seed, int samples) {
  ValidationResult res;
  const Vec y0(static_cast<std::size_t>(B.n), 0.0);
  const Vec w0(static_cast<std::size_t>(B.l), 0.0);
  const Vec d0(static_cast<std::size_t>(B.q), 0.0);
  auto near_zero = [](double v) { return std::abs(v) <= 1e-12; };
  auto zero_vec = [&](const Vec& v) { return norm2(v) <= 1e-12; };
  if (!near_zero(B.V(y0))) res.violations.emplace_back("V(0) = 0");
  if (!near_zero(B.Q(y0))) res.violations.emplace_back("Q(0) = 0");
  if (!near_zero(B.Phi(w0))) res.violations.emplace_back("Phi(0) = 0");
  if (!near_zero(B.R(w0))) res.violations.emplace_back("R(0) = 0");
  if (!near_zero(B.k(y0))) res.violations.emplace_back("k(0) = 0");
  if (!zero_vec(B.f(y0))) res.violations.emplace_back("f(0) = 0");
  if (!zero_vec(B.phi_full(y0, w0))) res.violations.emplace_back("phi(0,0) = 0");
  if (!zero_vec(B.h(y0, w0, d0))) res.violations.emplace_back("h(0,0,0) = 0");
  if (static_cast<int>(B.gradV(y0).size()) != B.n) res.violations.emplace_back("gradV has dimension n");
  if (static_cast<int>(B.g(y0).size()) != B.n) res.violations.emplace_back("g has dimension n");
  if (static_cast<int>(B.phi_full(y0, w0).size()) != B.p_dim) res.violations.emplace_back("phi has dimension p");
  if (static_cast<int>(B.A_full(y0, w0).size()) != B.m) res.violations.emplace_back("A has dimension m");
  if (static_cast<int>(B.h(y0, w0, d0).size()) != B.l) res.violations.emplace_back("h has dimension l");
  if (!res.ok()) return res;

  SplitMix64 rng(seed);
  auto gradient_matches = [&](const ScalarField& fn, const VectorField& grad, const Vec& x) {
    const Vec analytic = grad(x);
    Vec probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      probe[i] = x[i] + h;
      const double up = fn(probe);
      probe[i] = x[i] - h;
      const double down = fn(probe);
      probe[i] = x[i];
      const double fd = (up - down) / (2.0 * h);
      if (std::abs(fd - analytic[i]) > 1e-5 * std::max(1.0, std::abs(analytic[i]))) return false;
    }
    return true;
  };
  bool grad_v_ok = true, grad_phi_ok = true, mu_ok = true;
  for (int s = 0; s < samples; ++s) {
    Vec y(static_cast<std::size_t>(B.n)), w(static_cast<std::size_t>(B.l));
    for (auto& v : y) v = rng.uniform(-3.0, 3.0);
    for (auto& v : w) v = rng.uniform(-3.0, 3.0);
    grad_v_ok = grad_v_ok && gradient_matches(B.V, B.gradV, y);
    grad_phi_ok = grad_phi_ok && gradient_matches(B.Phi, B.gradPhi, w);
    mu_ok = mu_ok && B.mu(y) > 0.0;
  }
  if (!grad_v_ok) res.violations.emplace_back("gradV matches V by central differences");
  if (!grad_phi_ok) res.violations.emplace_back("gradPhi matches Phi by central differences");
  if (!mu_ok) res.violations.emplace_back("mu(y) > 0");
  return res;
}

std::vector<Vec> box_grid(int dim, const AssumptionGrid& grid, int max_points) {
  int per_axis = grid.points_per_axis | 1;
  auto total = [&](int k) {
    double t = 1.0;
    for (int i = 0; i < dim; ++i) t *= k;
    return t;
  };
  while (per_axis > 1 && total(per_axis) > max_points) per_axis -= 2;

  auto axis_values = [&](int count) {
    Vec v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      v[i] = count == 1 ? 0.0 : grid.lo + (grid.hi - grid.lo) * i / (count - 1);
    }
    // Snap the midpoint so the origin is hit exactly on symmetric boxes.
    if (count % 2 == 1 && grid.lo == -grid.hi) v[count / 2] = 0.0;
    return v;
  };

  std::vector<Vec> points;
  const Vec coarse = axis_values(per_axis);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  const std::size_t count = static_cast<std::size_t>(total(per_axis));
  for (std::size_t c = 0; c < count; ++c) {
    Vec pt(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) pt[i] = coarse[idx[i]];
    points.push_back(std::move(pt));
    for (int i = 0; i < dim; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  points.emplace_back(static_cast<std::size_t>(dim), 0.0);
  if (per_axis < (grid.points_per_axis | 1) || dim > 1) {
    const Vec fine = axis_values(grid.points_per_axis | 1);
    for (int i = 0; i < dim; ++i) {
      for (double v : fine) {
        if (v == 0.0) continue;
        Vec pt(static_cast<std::size_t>(dim), 0.0);
        pt[i] = v;
        points.push_back(std::move(pt));
      }
    }
  }
  return points;
}

bool AssumptionReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const InequalitySlack& r) { return r.passed; });
}

namespace {

Vec slice(const Vec& v, std::size_t from, int count) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

double sq_distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Evaluates slack(y, w, delta) over `points` (concatenated blocks) and keeps the
// first minimiser.
template <class SlackFn>
InequalitySlack scan(const std::string& name, const std::vector<Vec>& points, int n, int l, int q, SlackFn&& slack) {
  InequalitySlack row;
  row.name = name;
  row.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    const Vec y = slice(pt, 0, n);
    const Vec w = slice(pt, static_cast<std::size_t>(n), l);
    const Vec d = slice(pt, static_cast<std::size_t>(n + l), q);
    double s = 0.0;
    try {
      s = slack(y, w, d);
    } catch (const std::exception& e) {
      row.error = e.what();
      row.argmin_y = y;
      row.argmin_w = w;
      row.argmin_delta = d;
      row.passed = false;
      return row;
    }
    ++row.points;
    if (!(s >= row.min_slack)) {
      row.min_slack = s;
      row.argmin_y = y;
      row.argmin_w = w;
      row.argmin_delta = d;
    }
  }
  row.passed = row.min_slack >= -kAssumptionSlackTolerance;
  return row;
}

}  // namespace

AssumptionReport check_assumption_a(const CertificateBundle& B, const AssumptionGrid& grid) {
  AssumptionReport report;
  const auto y_pts = box_grid(B.n, grid, grid.max_points);
  const auto yw_pts = box_grid(B.n + B.l, grid, grid.max_points);
  const auto ywd_pts = box_grid(B.n + B.l + B.q, grid, grid.max_points);

  report.rows.push_back(scan("closed-loop-decrease", y_pts, B.n, 0, 0, [&](const Vec& y, const Vec&, const Vec&) {
    Vec drift = B.f(y);
    const Vec g = B.g(y);
    const double u = B.k(y);
    for (std::size_t i = 0; i < drift.size(); ++i) drift[i] += g[i] * u;
    return -B.r * B.Q(y) - dot(B.gradV(y), drift);
  }));

  report.rows.push_back(
      scan("internal-dissipation", ywd_pts, B.n, B.l, B.q, [&](const Vec& y, const Vec& w, const Vec& d) {
        const double lhs = dot(B.gradPhi(w), B.h(y, w, d));
        return -B.R(w) + B.gamma(norm2(d)) + B.Q(y) - lhs;
      }));

  const Vec w_zero(static_cast<std::size_t>(B.l), 0.0);
  report.rows.push_back(
      scan("coupling-sensitivity", yw_pts, B.n, B.l, 0, [&](const Vec& y, const Vec& w, const Vec&) {
        const double lhs = sq_distance(B.phi_full(y, w), B.phi_full(y, w_zero)) +
                           sq_distance(B.A_full(y, w), B.A_full(y, w_zero));
        return B.mu(y) * (B.R(w) + B.Lambda) - lhs;
      }));

  report.rows.push_back(scan("coupling-growth", y_pts, B.n, 0, 0, [&](const Vec& y, const Vec&, const Vec&) {
    const Vec phi0 = B.phi0(y);
    const double gv = dot(B.gradV(y), B.g(y));
    return B.mu(y) * (B.Q(y) + B.Lambda + gv * gv) - dot(phi0, phi0);
  }));
  return report;
}

}  // namespace dads
