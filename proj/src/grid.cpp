#include "acsweep/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace acsweep {

Grid::Grid(int dim_, int points_, double length_)
    : dim(dim_), points(points_), length(length_) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
  if (points < 1) throw std::invalid_argument("Grid: points per axis must be positive");
  if (!(length > 0)) throw std::invalid_argument("Grid: length must be positive");
  spacing = length / points;
}

std::int64_t Grid::size() const {
  std::int64_t n = points;
  return dim == 2 ? n * n : n;
}

Field::Field(const Grid& g, double fill)
    : grid(g), data(static_cast<std::size_t>(g.size()), fill) {}

static void require_same_grid(const Field& v, const Field& w) {
  if (!(v.grid == w.grid)) throw std::invalid_argument("fields live on different grids");
}

double inner_product(const Field& v, const Field& w) {
  require_same_grid(v, w);
  double s = 0.0;
  const std::size_t n = v.data.size();
  for (std::size_t k = 0; k < n; ++k) s += v.data[k] * w.data[k];
  double hd = v.grid.spacing;
  if (v.grid.dim == 2) hd *= v.grid.spacing;
  return hd * s;
}

double l2_norm(const Field& v) { return std::sqrt(inner_product(v, v)); }

double sup_norm(const Field& v) {
  double m = 0.0;
  for (double x : v.data) m = std::max(m, std::abs(x));
  return m;
}

GradientField forward_gradient(const Field& v) {
  const int M = v.grid.points;
  const double inv_h = 1.0 / v.grid.spacing;
  GradientField g;
  g.grid = v.grid;
  g.components.resize(v.grid.dim);
  for (auto& c : g.components) c.resize(v.data.size());

  if (v.grid.dim == 1) {
    for (int i = 0; i < M; ++i)
      g.components[0][i] = (v(wrap(i + 1, M)) - v(i)) * inv_h;
    return g;
  }
  for (int i = 0; i < M; ++i) {
    const int ip = wrap(i + 1, M);
    for (int j = 0; j < M; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * M + j;
      g.components[0][id] = (v(ip, j) - v(i, j)) * inv_h;
      g.components[1][id] = (v(i, wrap(j + 1, M)) - v(i, j)) * inv_h;
    }
  }
  return g;
}

double gradient_norm_sq(const Field& v) {
  const GradientField g = forward_gradient(v);
  double s = 0.0;
  for (const auto& c : g.components)
    for (double x : c) s += x * x;
  double hd = v.grid.spacing;
  if (v.grid.dim == 2) hd *= v.grid.spacing;
  return hd * s;
}

Field laplacian(const Field& v) {
  const int M = v.grid.points;
  const double inv_h2 = 1.0 / (v.grid.spacing * v.grid.spacing);
  Field out(v.grid);
  if (v.grid.dim == 1) {
    for (int i = 0; i < M; ++i)
      out(i) = (v(wrap(i + 1, M)) + v(wrap(i - 1, M)) - 2.0 * v(i)) * inv_h2;
    return out;
  }
  for (int i = 0; i < M; ++i) {
    const int ip = wrap(i + 1, M), im = wrap(i - 1, M);
    for (int j = 0; j < M; ++j) {
      const int jp = wrap(j + 1, M), jm = wrap(j - 1, M);
      out(i, j) = (v(ip, j) + v(im, j) + v(i, jp) + v(i, jm) - 4.0 * v(i, j)) * inv_h2;
    }
  }
  return out;
}

// One axis of the split. Part A rows: -v_i + v_{i+1}, plus v_{M-1} in row 0.
// Part B rows: -v_i + v_{i-1}, plus v_0 in row M-1.
static double split_axis_term(const Field& v, SplitPart part, int i, int other, int axis) {
  const int M = v.grid.points;
  auto at = [&](int k) { return axis == 0 ? v(k, other) : v(other, k); };
  double s = -at(i);
  if (part == SplitPart::A) {
    if (i + 1 < M) s += at(i + 1);
    if (i == 0) s += at(M - 1);
  } else {
    if (i - 1 >= 0) s += at(i - 1);
    if (i == M - 1) s += at(0);
  }
  return s;
}

Field laplacian_split(const Field& v, SplitPart part) {
  const int M = v.grid.points;
  const double inv_h2 = 1.0 / (v.grid.spacing * v.grid.spacing);
  Field out(v.grid);
  if (v.grid.dim == 1) {
    for (int i = 0; i < M; ++i) {
      double s = -v(i);
      if (part == SplitPart::A) {
        if (i + 1 < M) s += v(i + 1);
        if (i == 0) s += v(M - 1);
      } else {
        if (i - 1 >= 0) s += v(i - 1);
        if (i == M - 1) s += v(0);
      }
      out(i) = s * inv_h2;
    }
    return out;
  }
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      out(i, j) = (split_axis_term(v, part, i, j, 0) + split_axis_term(v, part, j, i, 1)) * inv_h2;
  return out;
}

Field operator-(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
  Field out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] -= b.data[k];
  return out;
}

} // namespace acsweep
