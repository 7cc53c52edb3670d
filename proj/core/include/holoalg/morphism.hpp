#pragma once

// Algebra morphisms phi: A -> B stored as matrices, their structure constants
// gamma and the canonical factorization over the local factors.

#include <cstdint>
#include <vector>

#include "holoalg/algebra.hpp"
#include "holoalg/decomposition.hpp"

namespace holoalg {

class Morphism {
 public:
  // `matrix` is m x n, column j = coordinates of phi(a_j) in B. Throws
  // Error{kNotMultiplicative | kNotUnital} naming the worst basis pair.
  static Morphism build(AlgebraPtr source, AlgebraPtr target, Matrix matrix, double tolerance = 1e-12);
  static Morphism identity(const AlgebraPtr& algebra);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  // Gamma_j = lambda_B(phi(a_j)); entry (i, k) is gamma^i_{jk}.
  const Matrix& gamma_matrix(std::size_t j) const { return gamma_[j]; }
  cd gamma(std::size_t j, std::size_t k, std::size_t i) const {
    return gamma_[j](Eigen::Index(i), Eigen::Index(k));
  }

  Element operator()(const Element& a) const;

  bool is_identity() const;

 private:
  Morphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix);

  AlgebraPtr source_;
  AlgebraPtr target_;
  Matrix matrix_;
  std::vector<Matrix> gamma_;
};

// psi o phi.
Morphism compose(const Morphism& phi, const Morphism& psi);

// Largest violation of sum_r gamma^i_{rl} alpha^r_{jk} = sum_s gamma^i_{js} gamma^s_{kl}.
double gamma_identity_defect(const Morphism& phi);
// Largest violation of sum_r beta^i_{rl} gamma^r_{jk} = sum_r gamma^i_{jr} beta^r_{kl}.
double gamma_beta_defect(const Morphism& phi);

struct Factorization {
  AlgebraPtr target_algebra;
  // tau[l] = index of the source component matched with target component l.
  std::vector<std::size_t> tau;
  std::vector<ComponentAlgebra> source_components;
  std::vector<ComponentAlgebra> target_components;
  // phi restricted to A_{tau(l)} -> B_l, on the filtering bases.
  std::vector<Morphism> local_parts;
};

// Throws Error{kNotDetermined} when some phi(I_k) I'_l is neither ~0 nor ~I'_l.
Factorization factor(const Morphism& phi, const Decomposition& source, const Decomposition& target);

// (+)_l phi_l(pr_{tau(l)}(z)) assembled in B.
Element reconstruct(const Factorization& f, const Element& z);

// A morphism together with the decompositions and factorization that most
// analytic operations need.
struct Setting {
  Morphism phi;
  Decomposition source;
  Decomposition target;
  Profile source_profile;
  Profile target_profile;
  Factorization factorization;

  // h(phi) per target component: min(h(A_tau(l)), h(B_l)).
  std::vector<std::size_t> heights() const;
  // Source components that appear in the image of tau.
  std::vector<std::size_t> active_components() const;
};

Setting make_setting(const Morphism& phi, std::uint64_t seed = 0);

}  // namespace holoalg
