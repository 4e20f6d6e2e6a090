#pragma once

#include <cstdint>
#include <vector>

namespace acsweep {

// Uniform periodic lattice on [0,L)^dim with M points per axis, h = L/M.
// Only square, equal-resolution axes are supported.
struct Grid {
  int dim = 2;       // 1 or 2
  int points = 0;    // M, points per axis
  double length = 0; // L, physical length per axis
  double spacing = 0; // h = L/M

  Grid() = default;
  Grid(int dim_, int points_, double length_);

  std::int64_t size() const; // M^dim
  double node(int i) const { return spacing * i; }

  bool operator==(const Grid&) const = default;
};

// Periodic index wrap: mathematical (non-negative) modulus.
inline int wrap(int i, int M) {
  int r = i % M;
  return r < 0 ? r + M : r;
}

// Grid samples, row-major: (i,j) -> i*M + j in 2D.
struct Field {
  Grid grid;
  std::vector<double> data;

  Field() = default;
  explicit Field(const Grid& g, double fill = 0.0);

  double& operator()(int i) { return data[static_cast<std::size_t>(i)]; }
  double operator()(int i) const { return data[static_cast<std::size_t>(i)]; }
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * grid.points + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * grid.points + j]; }
};

// Forward-difference gradient samples, one component array per axis.
struct GradientField {
  Grid grid;
  std::vector<std::vector<double>> components;
};

enum class SplitPart { A, B }; // A: upper-triangular part, B: lower-triangular part

double inner_product(const Field& v, const Field& w); // h^dim * sum v*w
double l2_norm(const Field& v);
double sup_norm(const Field& v);

GradientField forward_gradient(const Field& v);

// squared norm of the discrete gradient, h^dim * sum over components
double gradient_norm_sq(const Field& v);

// Periodic central-difference Laplacian (3-point in 1D, 5-point in 2D).
Field laplacian(const Field& v);

// The triangular Saul'yev split of the Laplacian. Part A holds the
// superdiagonal neighbors (i+1, j+1) plus the wrap entry in row 0; part B the
// subdiagonal neighbors plus the wrap entries in the last row. A + B equals
// the full Laplacian.
Field laplacian_split(const Field& v, SplitPart part);

Field operator-(const Field& a, const Field& b);

} // namespace acsweep
