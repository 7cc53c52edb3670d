#include "holoalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "linalg.hpp"

namespace holoalg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kAlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::kNotCommutative: return "NotCommutative";
    case ErrorKind::kNotAssociative: return "NotAssociative";
    case ErrorKind::kNoUnit: return "NoUnit";
    case ErrorKind::kNotAUnit: return "NotAUnit";
    case ErrorKind::kDecompositionRequired: return "DecompositionRequired";
    case ErrorKind::kClusteringAmbiguous: return "ClusteringAmbiguous";
    case ErrorKind::kNotMultiplicative: return "NotMultiplicative";
    case ErrorKind::kNotUnital: return "NotUnital";
    case ErrorKind::kNotDetermined: return "NotDetermined";
    case ErrorKind::kNonSquare: return "NonSquare";
    case ErrorKind::kSamplerFailure: return "SamplerFailure";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kInvalidRecovered: return "InvalidRecovered";
    case ErrorKind::kSingularDerivative: return "SingularDerivative";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNotLocalPair: return "NotLocalPair";
    case ErrorKind::kNotNilpotent: return "NotNilpotent";
    case ErrorKind::kOutsideScalarDomain: return "OutsideScalarDomain";
    case ErrorKind::kNotSmooth: return "NotSmooth";
    case ErrorKind::kQuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorKind::kNotAdmissible: return "NotAdmissible";
    case ErrorKind::kWindingUnresolved: return "WindingUnresolved";
    case ErrorKind::kIndexNotInvertible: return "IndexNotInvertible";
    case ErrorKind::kSeriesTruncation: return "SeriesTruncation";
  }
  return "Unknown";
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kFrobenius: return "frobenius";
    case NormKind::kOperator: return "operator";
    case NormKind::kDirectSum: return "direct-sum";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// StructureTensor

StructureTensor::StructureTensor(std::size_t dim, std::vector<std::string> labels)
    : dim_(dim), data_(dim * dim * dim, cd{0.0, 0.0}), labels_(std::move(labels)) {
  if (dim == 0) throw Error(ErrorKind::kInvalidArgument, "structure tensor dimension must be positive");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back("a" + std::to_string(i + 1));
  }
  if (labels_.size() != dim) throw Error(ErrorKind::kInvalidArgument, "basis label count does not match dimension");
}

Matrix StructureTensor::left_matrix(std::size_t j) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Matrix m(n, n);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) m(Eigen::Index(i), Eigen::Index(k)) = (*this)(j, k, i);
  return m;
}

StructureTensor StructureTensor::rebased(const Matrix& change, std::vector<std::string> labels) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (change.rows() != n || change.cols() != n)
    throw Error(ErrorKind::kInvalidArgument, "change of basis must be square of the algebra dimension");
  Eigen::PartialPivLU<Matrix> lu(change);
  if (detail::singular_ratio(change) < 1e-12) throw Error(ErrorKind::kInvalidArgument, "change of basis is singular");
  StructureTensor out(dim_, labels.empty() ? labels_ : std::move(labels));
  std::vector<Matrix> lambdas;
  for (std::size_t j = 0; j < dim_; ++j) lambdas.push_back(left_matrix(j));
  for (std::size_t p = 0; p < dim_; ++p) {
    Matrix lp = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) lp += change(j, Eigen::Index(p)) * lambdas[std::size_t(j)];
    for (std::size_t q = 0; q < dim_; ++q) {
      const Vector product = lp * change.col(Eigen::Index(q));
      const Vector coords = lu.solve(product);
      for (std::size_t r = 0; r < dim_; ++r) out(p, q, r) = coords[Eigen::Index(r)];
    }
  }
  return out;
}

double StructureTensor::max_abs_difference(const StructureTensor& other) const {
  if (other.dim_ != dim_) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t t = 0; t < data_.size(); ++t) worst = std::max(worst, std::abs(data_[t] - other.data_[t]));
  return worst;
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

void check_commutative(const StructureTensor& t, double tol) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (std::abs(t(j, k, i) - t(k, j, i)) > tol) {
          std::ostringstream os;
          os << "alpha^i_{jk} != alpha^i_{kj} at (i=" << i + 1 << ", j=" << j + 1 << ", k=" << k + 1 << ")";
          throw Error(ErrorKind::kNotCommutative, os.str());
        }
}

void check_associative(const StructureTensor& t, double tol) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cd lhs = 0.0, rhs = 0.0;
          for (std::size_t r = 0; r < n; ++r) {
            lhs += t(j, k, r) * t(r, l, i);
            rhs += t(k, l, r) * t(j, r, i);
          }
          if (std::abs(lhs - rhs) > tol) {
            std::ostringstream os;
            os << "sum_r alpha^r_{jk} alpha^i_{rl} != sum_r alpha^r_{kl} alpha^i_{jr} at (i=" << i + 1
               << ", j=" << j + 1 << ", k=" << k + 1 << ", l=" << l + 1 << "): " << lhs << " vs " << rhs;
            throw Error(ErrorKind::kNotAssociative, os.str());
          }
        }
}

Vector solve_unit(const StructureTensor& t, double max_residual) {
  const std::size_t n = t.dim();
  const auto rows = static_cast<Eigen::Index>(2 * n * n);
  Matrix system = Matrix::Zero(rows, Eigen::Index(n));
  Vector rhs = Vector::Zero(rows);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t r = 0; r < n; ++r) {
        system(row, Eigen::Index(r)) = t(r, k, i);
        system(row + 1, Eigen::Index(r)) = t(k, r, i);
      }
      rhs[row] = rhs[row + 1] = (i == k) ? 1.0 : 0.0;
      row += 2;
    }
  const Vector unit = system.completeOrthogonalDecomposition().solve(rhs);
  const double residual = (system * unit - rhs).cwiseAbs().maxCoeff();
  if (!(residual <= max_residual)) {
    std::ostringstream os;
    os << "unit law sum_r e^r alpha^i_{rk} = delta^i_k is inconsistent (least-squares residual " << residual << ")";
    throw Error(ErrorKind::kNoUnit, os.str());
  }
  return unit;
}

}  // namespace

AlgebraPtr Algebra::build(StructureTensor tensor, std::string name, ValidationOptions options) {
  if (tensor.dim() == 0) throw Error(ErrorKind::kInvalidArgument, "dimension must be at least 1");
  check_commutative(tensor, options.identity_tolerance);
  check_associative(tensor, options.identity_tolerance);
  Vector unit = solve_unit(tensor, options.unit_residual);
  return AlgebraPtr(new Algebra(std::move(tensor), std::move(name), std::move(unit)));
}

Algebra::Algebra(StructureTensor tensor, std::string name, Vector unit)
    : tensor_(std::move(tensor)), name_(std::move(name)), unit_(std::move(unit)) {
  const auto n = static_cast<Eigen::Index>(tensor_.dim());
  for (std::size_t j = 0; j < tensor_.dim(); ++j) basis_matrices_.push_back(tensor_.left_matrix(j));
  // Nilradical = kernel of the trace form tr(lambda(a_j) lambda(a_k)).
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = (basis_matrices_[std::size_t(j)] * basis_matrices_[std::size_t(k)]).trace();
  detail::KernelSplit split = detail::kernel_split(g, 1e-9, 1.0);
  nilradical_ = std::move(split.kernel);
  radical_complement_ = std::move(split.complement);
}

Matrix Algebra::regular(const Vector& a) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a[j] != cd{0.0, 0.0}) m += a[j] * basis_matrices_[std::size_t(j)];
  }
  return m;
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const { return regular(a) * b; }

Element Algebra::one() const { return {shared_from_this(), unit_}; }
Element Algebra::zero() const { return {shared_from_this(), Vector::Zero(Eigen::Index(dim()))}; }
Element Algebra::basis(std::size_t j) const {
  Vector v = Vector::Zero(Eigen::Index(dim()));
  v[Eigen::Index(j)] = 1.0;
  return {shared_from_this(), v};
}
Element Algebra::element(Vector coords) const { return {shared_from_this(), std::move(coords)}; }

std::size_t Algebra::unit_pivot() const {
  Eigen::Index best = 0;
  unit_.cwiseAbs().maxCoeff(&best);
  return std::size_t(best);
}

// ---------------------------------------------------------------------------
// Element

Element::Element(AlgebraPtr algebra, Vector coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw Error(ErrorKind::kInvalidArgument, "element without algebra");
  if (std::size_t(coords_.size()) != algebra_->dim())
    throw Error(ErrorKind::kInvalidArgument, "coordinate count does not match algebra dimension");
}

void require_same_algebra(const Element& a, const Element& b) {
  if (a.algebra() != b.algebra()) {
    throw Error(ErrorKind::kAlgebraMismatch,
                "elements of '" + a.algebra()->name() + "' and '" + b.algebra()->name() + "'");
  }
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(*this, other);
  coords_ += other.coords_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(*this, other);
  coords_ -= other.coords_;
  return *this;
}

Element& Element::operator*=(const Element& other) {
  require_same_algebra(*this, other);
  coords_ = algebra_->multiply(coords_, other.coords_);
  return *this;
}

Element& Element::operator*=(cd scalar) {
  coords_ *= scalar;
  return *this;
}

Element Element::plus_scalar(cd z) const { return {algebra_, coords_ + z * algebra_->unit_coords()}; }

Element mul(const Element& a, const Element& b) { return a * b; }

Element power(const Element& a, unsigned exponent) {
  Element result = a.algebra()->one();
  Element base = a;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

Matrix regular_representation(const Element& a) { return a.algebra()->regular(a.coords()); }

namespace {

// Singular-value ratio of z acting on the semisimple quotient A / N. Nilpotent
// parts inflate the largest singular value of lambda(z) without affecting
// invertibility, so the ratio is taken after quotienting them out.
double unit_ratio(const Element& z) {
  const Matrix& c = z.algebra()->radical_complement();
  return detail::singular_ratio(c.adjoint() * regular_representation(z) * c);
}

}  // namespace

bool is_unit(const Element& z) { return unit_ratio(z) >= 1e-12; }

Element invert(const Element& z) {
  const double ratio = unit_ratio(z);
  if (ratio < 1e-12) {
    std::ostringstream os;
    os << "element is singular on the semisimple quotient (singular value ratio " << ratio << ")";
    throw Error(ErrorKind::kNotAUnit, os.str());
  }
  return {z.algebra(), regular_representation(z).fullPivLu().solve(z.algebra()->unit_coords())};
}

double spectral_radius(const Element& z) {
  // A / N is semisimple, so z acts on it diagonalisably with eigenvalues
  // sigma_k(z); the eigenproblem there is well conditioned.
  const Matrix& c = z.algebra()->radical_complement();
  const Matrix q = c.adjoint() * regular_representation(z) * c;
  Eigen::ComplexEigenSolver<Matrix> solver(q, false);
  double rho = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) rho = std::max(rho, std::abs(solver.eigenvalues()[i]));
  return rho;
}

double norm(const Element& z, NormKind kind) {
  switch (kind) {
    case NormKind::kFrobenius: return regular_representation(z).norm();
    case NormKind::kOperator: return detail::operator_norm(regular_representation(z));
    case NormKind::kDirectSum:
      throw Error(ErrorKind::kDecompositionRequired, "direct-sum norm needs an Artin decomposition");
  }
  return 0.0;
}

double coord_norm(const Element& z) { return z.coords().cwiseAbs().maxCoeff(); }

}  // namespace holoalg
