#pragma once

// Small dense linear-algebra helpers shared by the core modules.

#include <vector>

#include "holoalg/algebra.hpp"

namespace holoalg::detail {

// Number of singular values above rel_tol * max(largest, floor).
Eigen::Index numerical_rank(const Matrix& m, double rel_tol, double floor = 0.0);

// Orthonormal basis of the column space (rank decided as in numerical_rank).
Matrix column_space(const Matrix& m, double rel_tol, double floor = 0.0);

// Orthonormal basis of the kernel and of its orthogonal complement.
struct KernelSplit {
  Matrix kernel;
  Matrix complement;
};
KernelSplit kernel_split(const Matrix& m, double rel_tol, double floor = 0.0);

// Ratio smallest / largest singular value (0 for a zero matrix).
double singular_ratio(const Matrix& m);

double operator_norm(const Matrix& m);

// Single-linkage clusters of points in the complex plane; returns cluster
// labels per input point and the cluster count.
std::vector<int> cluster_points(const std::vector<cd>& points, double radius, int* count);

// Coordinates of vectors in the span of `basis` (full column rank).
Matrix pseudo_inverse(const Matrix& basis);

}  // namespace holoalg::detail
