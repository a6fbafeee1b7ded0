#pragma once

#include <functional>

#include "dads/common.hpp"

namespace dads {

/// Samples of w on the interior nodes x_i = i dx, i = 1..N, dx = 1/(N+1), of [0,1].
/// The Dirichlet values w(0) = w(1) = 0 are implied and never stored.
class GridFunction {
 public:
  explicit GridFunction(int n_interior);
  GridFunction(int n_interior, Vec values);

  static GridFunction sample(int n_interior, const std::function<double(double)>& fn);

  int size() const { return static_cast<int>(values_.size()); }
  double dx() const { return 1.0 / (size() + 1); }
  double x(int i) const { return (i + 1) * dx(); }  // 0-based interior index

  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  Vec values_;
};

/// Composite-trapezoid L2(0,1) norm including the zero boundary samples.
double l2_norm(std::span<const double> interior);
inline double l2_norm(const GridFunction& w) { return l2_norm(w.values()); }

/// Trapezoid inner product on the same grid.
double l2_inner(std::span<const double> a, std::span<const double> b);

/// Discrete ||w_x||^2: sum of squared forward differences times dx, including
/// the two boundary gaps.
double dirichlet_energy(std::span<const double> interior);
inline double dirichlet_energy(const GridFunction& w) { return dirichlet_energy(w.values()); }

/// Smallest eigenvalue (2/dx^2)(1 - cos(pi dx)) of the discrete Dirichlet Laplacian.
double discrete_first_eigenvalue(int n_interior);

}  // namespace dads
