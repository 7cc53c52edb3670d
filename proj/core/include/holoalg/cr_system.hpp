#pragma once

// Generalized Cauchy-Riemann systems of a morphism and finite-difference
// tests of phi-holomorphy for sampled functions.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holoalg/algebra.hpp"
#include "holoalg/morphism.hpp"
#include "holoalg/series.hpp"

namespace holoalg {

// f: A -> B, deterministic. Exceptions other than holoalg::Error and
// non-finite outputs are reported as Error{kSamplerFailure}.
class FunctionSampler {
 public:
  using Fn = std::function<Element(const Element&)>;

  explicit FunctionSampler(Fn fn, std::string region = {});

  Element operator()(const Element& z) const;
  const std::string& region() const { return region_; }

 private:
  Fn fn_;
  std::string region_;
};

enum class PDEForm { kGCRU, kGUCR, kGCRS };
std::string_view to_string(PDEForm form);

// coefficient * d f^component / d z^direction (0-based indices).
struct PDETerm {
  cd coefficient;
  std::size_t component;
  std::size_t direction;
};

struct PDEEquation {
  std::vector<PDETerm> lhs;
  std::vector<PDETerm> rhs;
};

struct PDESystem {
  PDEForm form = PDEForm::kGCRU;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<std::string> source_labels;
  // Columns: the source basis the equations refer to, in user coordinates.
  Matrix change_of_basis;
  bool rebased = false;
  // Gamma_j = (gamma^i_{jk})_{i,k} for every source basis vector.
  std::vector<Matrix> gammas;
  std::vector<PDEEquation> equations;
};

// d f^i / d z^j = sum_s gamma^i_{js} d f^s / d z^1 for j >= 2. Re-bases the
// source so that the unit comes first when needed.
PDESystem gcru_system(const Morphism& phi);
// d f^i / d z^j = sum_{r,s} eps^r gamma^i_{js} d f^s / d z^r, any basis.
PDESystem gucr_system(const Morphism& phi);
// sum_r alpha^r_{jk} d f^i / d z^r = sum_s gamma^i_{js} d f^s / d z^k.
PDESystem gcrs_system(const Morphism& phi);

std::string render_latex(const PDESystem& system);
std::string render_text(const PDESystem& system);

// The source basis with the unit first: columns in user coordinates.
Matrix unit_first_basis(const AlgebraPtr& algebra);

double default_step(const Element& z);

// Central difference of f along the complex direction `direction`.
Element directional_derivative(const FunctionSampler& f, const Element& z, const Vector& direction, double h);

// max over basis directions of |d f / d conj(z^j)| (Wirtinger, central
// differences); zero for f complex-differentiable in every coordinate.
double antiholomorphic_residual(const FunctionSampler& f, const Element& z, double h);

// max_{j >= 2, i} |d f^i / d z^j - sum_s gamma^i_{js} d f^s / d z^1| in the
// unit-first basis, combined (max) with the antiholomorphic residual.
double gcru_residual(const FunctionSampler& f, const Morphism& phi, const Element& z, double h);

// gcru_residual(h / 2) / gcru_residual(h).
double residual_halving_ratio(const FunctionSampler& f, const Morphism& phi, const Element& z, double h);

// d f / d z^1 along the unit direction.
Element numeric_derivative(const FunctionSampler& f, const Morphism& phi, const Element& z, double h);

// || lambda(f'(Z)) Phi - J f(Z) ||_F together with the antiholomorphic
// Jacobian. Throws kNonSquare unless phi is an endomorphism.
double jacobian_consistency(const FunctionSampler& f, const Morphism& phi, const Element& z, double h);

// max_{i < j} || phi(a_i) d_j f - phi(a_j) d_i f ||, combined with the
// antiholomorphic residual.
double dij_residual(const FunctionSampler& f, const Morphism& phi, const Element& z, double h);

enum class HolomorphyVerdict { kHolomorphic, kNonHolomorphic, kInconclusive };
std::string_view to_string(HolomorphyVerdict verdict);
// Holomorphic below 100 h^2, non-holomorphic above 1e-2.
HolomorphyVerdict verdict(double residual, double h);

// Samples for structure recovery at one point: f'(Z_t) and d f / d z^j (Z_t).
struct RecoverySample {
  Vector derivative;
  std::vector<Vector> partials;
};

using CoordinateMap = std::function<Vector(const Vector&)>;

std::vector<RecoverySample> sample_for_recovery(const CoordinateMap& f, const CoordinateMap& derivative,
                                                const std::vector<Vector>& points, double h);

// alpha^i_{jk} = det(G with row k replaced by (d f^i / d z^j)(Z_t)_t) / det G,
// G = [f'(Z_1) ... f'(Z_n)]. Throws kRankDeficient or kInvalidRecovered.
StructureTensor recover_structure(const std::vector<RecoverySample>& samples, std::vector<std::string> labels = {});

struct NewtonOptions {
  int max_steps = 100;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
};

struct NewtonResult {
  Element solution;
  int steps = 0;
  double residual = 0.0;
  std::vector<std::string> warnings;
};

// Solves P(Z) = W for a polynomial endomorphism series by
// Z <- Z - phi^{-1}(P'(Z)^{-1} (P(Z) - W)). Throws kSingularDerivative or
// kNoConvergence.
NewtonResult newton_invert_map(const PowerSeries& p, const Element& w, const Element& guess, NewtonOptions options = {});

}  // namespace holoalg
