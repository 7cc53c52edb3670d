#pragma once

// Finite-dimensional commutative associative unital C-algebras given by
// structure constants, and arithmetic on their elements.
//
// Conventions: an algebra of dimension n has basis a_1..a_n (0-based in code)
// and structure constants alpha(j, k, i) with a_j * a_k = sum_i alpha(j, k, i) a_i.
// The regular representation of a basis vector is the n x n matrix
// lambda(a_j)(i, k) = alpha(j, k, i).

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holoalg/error.hpp"

namespace holoalg {

using cd = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }

  // alpha^i_{jk}: coefficient of a_i in a_j * a_k.
  cd& operator()(std::size_t j, std::size_t k, std::size_t i) { return data_[(j * dim_ + k) * dim_ + i]; }
  const cd& operator()(std::size_t j, std::size_t k, std::size_t i) const {
    return data_[(j * dim_ + k) * dim_ + i];
  }

  const std::vector<std::string>& labels() const { return labels_; }

  // lambda(a_j) as a matrix.
  Matrix left_matrix(std::size_t j) const;

  // Re-expresses the tensor in the basis whose vectors are the columns of
  // `change` (given in the current coordinates). `change` must be invertible.
  StructureTensor rebased(const Matrix& change, std::vector<std::string> labels = {}) const;

  double max_abs_difference(const StructureTensor& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cd> data_;
  std::vector<std::string> labels_;
};

enum class NormKind { kFrobenius, kOperator, kDirectSum };

std::string_view to_string(NormKind kind);

struct ValidationOptions {
  // Absolute tolerance on the commutativity and associativity identities.
  double identity_tolerance = 1e-12;
  // Maximal residual of the least-squares unit system.
  double unit_residual = 1e-10;
};

class Element;
class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  // Validates commutativity, associativity and solves for the unit. Throws
  // Error{kNotCommutative | kNotAssociative | kNoUnit} naming the first
  // violated identity.
  static AlgebraPtr build(StructureTensor tensor, std::string name = {}, ValidationOptions options = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return tensor_.dim(); }
  const StructureTensor& tensor() const { return tensor_; }
  const Vector& unit_coords() const { return unit_; }

  // lambda(a_j), precomputed.
  const Matrix& basis_matrix(std::size_t j) const { return basis_matrices_[j]; }

  Matrix regular(const Vector& a) const;
  Vector multiply(const Vector& a, const Vector& b) const;

  Element one() const;
  Element zero() const;
  Element basis(std::size_t j) const;
  Element element(Vector coords) const;

  // Index of the basis vector that may be swapped for the unit while keeping a
  // basis (the one with the largest unit coordinate).
  std::size_t unit_pivot() const;

  // Orthonormal bases of the nilradical and of its orthogonal complement.
  const Matrix& nilradical() const { return nilradical_; }
  const Matrix& radical_complement() const { return radical_complement_; }

 private:
  Algebra(StructureTensor tensor, std::string name, Vector unit);

  StructureTensor tensor_;
  std::string name_;
  Vector unit_;
  std::vector<Matrix> basis_matrices_;
  Matrix nilradical_;
  Matrix radical_complement_;
};

class Element {
 public:
  Element(AlgebraPtr algebra, Vector coords);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Vector& coords() const { return coords_; }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }
  cd operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

  Element operator-() const { return {algebra_, -coords_}; }
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Element& other);
  Element& operator*=(cd scalar);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator*(cd s, Element a) { return a *= s; }
  friend Element operator*(Element a, cd s) { return a *= s; }

  // z * 1 + this
  Element plus_scalar(cd z) const;

 private:
  AlgebraPtr algebra_;
  Vector coords_;
};

void require_same_algebra(const Element& a, const Element& b);

Element mul(const Element& a, const Element& b);
Element power(const Element& a, unsigned exponent);
Matrix regular_representation(const Element& a);

// True when the smallest singular value of z acting on A / nil(A) exceeds
// 1e-12 times the largest one.
bool is_unit(const Element& z);

// Solves lambda(z) w = 1. Throws Error{kNotAUnit}.
Element invert(const Element& z);

// Largest eigenvalue modulus of lambda(z). Eigenvalues of a commutative
// algebra element come in clusters (one per local factor); each cluster is
// replaced by its mean before taking moduli.
double spectral_radius(const Element& z);

// Frobenius and operator kinds; the direct-sum kind requires a decomposition
// (see decomposition.hpp) and throws Error{kDecompositionRequired} here.
double norm(const Element& z, NormKind kind);

// Infinity norm of the coordinate vector.
double coord_norm(const Element& z);

}  // namespace holoalg
