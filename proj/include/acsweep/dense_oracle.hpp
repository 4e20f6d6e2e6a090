#pragma once

#include <vector>

#include "acsweep/grid.hpp"
#include "acsweep/potential.hpp"
#include "acsweep/scheme.hpp"

namespace acsweep {

enum class OraclePart { ESS1, ESS1_ADJOINT };

// Dense N x N (row-major, N = M^dim) matrix of the vectorized triangular
// Laplacian split under lexicographic ordering: Delta_a for part A (upper
// triangular), Delta_b for part B (lower triangular). Built directly from the
// split matrices D_a, D_b (Kronecker sums), independent of the stencil code.
std::vector<double> dense_split_matrix(const Grid& grid, SplitPart part);

// Reference solve of one scheme step through the dense vectorized system:
// forward substitution of the lower-triangular linear system for ESS1, and
// per-point bisection in decreasing order for ESS1-adjoint. Independent of
// the sweep kernels and of newton_scalar; intended as a test oracle.
// Requires M^dim <= 4096.
Field dense_triangular_oracle(const Field& u, const SchemeConfig& cfg, const Potential& p,
                              OraclePart part);

} // namespace acsweep
