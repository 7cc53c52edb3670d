#include "linalg.hpp"

#include <algorithm>
#include <numeric>

namespace holoalg::detail {

namespace {

double threshold(const Eigen::VectorXd& sv, double rel_tol, double floor) {
  const double largest = sv.size() > 0 ? sv.maxCoeff() : 0.0;
  return rel_tol * std::max(largest, floor);
}

}  // namespace

Eigen::Index numerical_rank(const Matrix& m, double rel_tol, double floor) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = threshold(sv, rel_tol, floor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cut) ++rank;
  }
  return rank;
}

Matrix column_space(const Matrix& m, double rel_tol, double floor) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = threshold(sv, rel_tol, floor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cut) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

KernelSplit kernel_split(const Matrix& m, double rel_tol, double floor) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = threshold(sv, rel_tol, floor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cut) ++rank;
  }
  const Matrix& v = svd.matrixV();
  return {v.rightCols(v.cols() - rank), v.leftCols(rank)};
}

double singular_ratio(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0.0;
  return sv[sv.size() - 1] / sv[0];
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

std::vector<int> cluster_points(const std::vector<cd>& points, double radius, int* count) {
  const std::size_t n = points.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::abs(points[a] - points[b]) <= radius) parent[find(int(a))] = find(int(b));
    }
  }
  std::vector<int> label(n, -1), root_label(n, -1);
  int next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const int r = find(int(a));
    if (root_label[r] < 0) root_label[r] = next++;
    label[a] = root_label[r];
  }
  if (count) *count = next;
  return label;
}

Matrix pseudo_inverse(const Matrix& basis) {
  return basis.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace holoalg::detail
