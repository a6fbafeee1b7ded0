#include "dads/grid_function.hpp"

namespace dads {

GridFunction::GridFunction(int n_interior) {
  if (n_interior < 2) throw ConfigError("GridFunction needs at least 2 interior points");
  values_.assign(static_cast<std::size_t>(n_interior), 0.0);
}

GridFunction::GridFunction(int n_interior, Vec values) : GridFunction(n_interior) {
  if (values.size() != values_.size()) throw ConfigError("GridFunction: value count does not match grid");
  values_ = std::move(values);
}

GridFunction GridFunction::sample(int n_interior, const std::function<double(double)>& fn) {
  GridFunction w(n_interior);
  for (int i = 0; i < n_interior; ++i) w[i] = fn(w.x(i));
  return w;
}

double l2_inner(std::span<const double> a, std::span<const double> b) {
  const double dx = 1.0 / static_cast<double>(a.size() + 1);
  return dx * dot(a, b);
}

double l2_norm(std::span<const double> w) { return std::sqrt(l2_inner(w, w)); }

double dirichlet_energy(std::span<const double> w) {
  const std::size_t n = w.size();
  const double dx = 1.0 / static_cast<double>(n + 1);
  double prev = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double next = i < n ? w[i] : 0.0;
    sum += (next - prev) * (next - prev);
    prev = next;
  }
  return sum / dx;
}

double discrete_first_eigenvalue(int n_interior) {
  const double dx = 1.0 / (n_interior + 1);
  return 2.0 / (dx * dx) * (1.0 - std::cos(kPi * dx));
}

}  // namespace dads
