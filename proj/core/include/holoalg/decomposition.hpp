#pragma once

// Artin decomposition of an algebra into local factors: nilradical,
// orthogonal idempotents, spectral projections, heights and widths.

#include <cstdint>
#include <vector>

#include "holoalg/algebra.hpp"

namespace holoalg {

// Orthonormal basis (columns) of the nilradical. Computed as the kernel of the
// trace form G_jk = tr(lambda(a_j a_k)); every basis vector is checked to be
// nilpotent.
Matrix nilradical(const AlgebraPtr& algebra);

struct DecompositionOptions {
  std::uint64_t seed = 0;
  int retries = 3;
  // Minimal distance between quotient eigenvalues of the generic element.
  double separation = 1e-8;
};

struct Decomposition {
  AlgebraPtr algebra;
  Matrix nilradical;                          // n x (n - M)
  std::vector<Element> idempotents;           // I_1..I_M
  std::vector<Matrix> component_bases;        // orthonormal basis of A I_k
  std::vector<Matrix> maximal_ideal_bases;    // orthonormal basis of m_k
  Matrix spectral_rows;                       // M x n, row k is sigma_k

  std::size_t count() const { return idempotents.size(); }
  std::size_t component_dim(std::size_t k) const { return std::size_t(component_bases[k].cols()); }
};

// Throws Error{kClusteringAmbiguous} if no generic element separates the
// quotient eigenvalues after `retries` attempts.
Decomposition artin_decompose(const AlgebraPtr& algebra, DecompositionOptions options = {});

// sigma_k(z).
cd spectral_value(const Decomposition& d, std::size_t k, const Element& z);
std::vector<cd> spectrum(const Element& z, const Decomposition& d);

// max_k || (lambda(z) - sigma_k(z))^{n_k} lambda(I_k) ||, scaled by
// max(1, ||lambda(z)||)^{n_k}: zero when sigma_k(z) is the eigenvalue of z on
// the k-th generalized eigenspace with multiplicity n_k.
double spectrum_residual(const Element& z, const Decomposition& d);

// pr_k(z) = z I_k.
Element project(const Decomposition& d, std::size_t k, const Element& z);

// max_k |sigma_k(z)|.
double spectral_radius(const Element& z, const Decomposition& d);

// Adds the direct-sum kind: max_k of the operator norm of lambda(z) restricted
// to A I_k.
double norm(const Element& z, NormKind kind, const Decomposition& d);

// Inverse by the terminating geometric series per local factor:
// z^{-1} = sum_k s_k^{-1} sum_{j < n_k} (-X_k / s_k)^j with s_k = sigma_k(z).
Element invert_by_components(const Element& z, const Decomposition& d);

// U(A) ~ prod_k C^x x (m_k, +): per component the scalar part s_k and
// log(1 + X_k / s_k) in m_k.
struct UnitCoordinates {
  std::vector<cd> scalars;
  std::vector<Element> logarithms;
};
UnitCoordinates unit_group_coords(const Element& u, const Decomposition& d);
Element unit_group_exp(const UnitCoordinates& coords, const Decomposition& d);

struct ComponentProfile {
  std::size_t height = 1;           // smallest nu with m^nu = 0
  std::vector<std::size_t> widths;  // d_p = dim m^p / m^{p+1}, p = 1..nu-1
  // Columns: I_k, then bases of m \ m^2, m^2 \ m^3, ...
  Matrix filtering_basis;
};

struct Profile {
  std::vector<ComponentProfile> components;
};

Profile profile(const Decomposition& d);

// A local factor A_k as an algebra in its own right, on the filtering basis.
struct ComponentAlgebra {
  AlgebraPtr local;
  Matrix embedding;    // n x n_k: local coordinates -> ambient coordinates
  Matrix coordinates;  // n_k x n: ambient vectors in A_k -> local coordinates
  std::size_t height = 1;
};

ComponentAlgebra component_algebra(const Decomposition& d, const Profile& p, std::size_t k);

}  // namespace holoalg
