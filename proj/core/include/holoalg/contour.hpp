#pragma once

// Piecewise C^1 paths and cycles in an algebra, algebra-valued line integrals
// int f(Z) phi(dZ), the generalized index and Cauchy integral formulas.

#include <optional>
#include <string>
#include <vector>

#include "holoalg/algebra.hpp"
#include "holoalg/cr_system.hpp"
#include "holoalg/morphism.hpp"
#include "holoalg/quadrature.hpp"
#include "holoalg/series.hpp"

namespace holoalg {

// One parametric piece [0, 1] -> A.
class Segment {
 public:
  enum class Kind { kCircle, kLine, kSamples };

  // center + radius * exp(2 pi i turns t) * direction.
  static Segment circle(const Element& center, double radius, int turns, const Element& direction);
  static Segment line(const Element& from, const Element& to);
  // Cubic Hermite interpolation through the points with central-difference
  // tangents; periodic when the first and last points coincide.
  static Segment samples(std::vector<Element> points, bool smooth);

  Kind kind() const { return kind_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  bool smooth() const { return smooth_; }

  Vector point(double t) const;
  Vector tangent(double t) const;
  Vector start() const { return point(0.0); }
  Vector end() const { return point(1.0); }

  // Parameter breakpoints (0 = t_0 < ... < t_p = 1) between C^infinity pieces.
  std::vector<double> breakpoints() const;

  // Applies v -> m v + shift to every defining point.
  Segment transformed(const AlgebraPtr& algebra, const Matrix& m, const Vector& shift) const;
  Segment reversed() const;

  // Circle data, for the Cauchy inequality check.
  const Vector& center() const { return center_; }
  const Vector& direction() const { return direction_; }
  double radius() const { return radius_; }
  int turns() const { return turns_; }

 private:
  Kind kind_ = Kind::kLine;
  AlgebraPtr algebra_;
  bool smooth_ = true;
  Vector center_, direction_;
  double radius_ = 0.0;
  int turns_ = 1;
  std::vector<Vector> points_;
  std::vector<Vector> tangents_;
};

class Path {
 public:
  // Consecutive segments must share endpoints to 1e-12.
  explicit Path(std::vector<Segment> segments);

  static Path circle(const Element& center, double radius, int turns = 1);
  static Path circle(const Element& center, double radius, int turns, const Element& direction);
  // Closes the loop when `close` is set and the last point differs from the first.
  static Path polyline(const std::vector<Element>& points, bool close = false);
  static Path samples(std::vector<Element> points, bool smooth);

  const std::vector<Segment>& segments() const { return segments_; }
  const AlgebraPtr& algebra() const { return segments_.front().algebra(); }
  bool closed() const;

  Path translated(const Element& w) const;
  Path reversed() const;
  // phi o gamma as a path in the target algebra.
  Path mapped(const Morphism& phi) const;

 private:
  std::vector<Segment> segments_;
};

struct CycleTerm {
  int multiplicity = 1;
  Path path;
};

class Cycle {
 public:
  // Throws kInvalidArgument when a path is not closed.
  explicit Cycle(std::vector<CycleTerm> terms);
  explicit Cycle(Path path, int multiplicity = 1);

  const std::vector<CycleTerm>& terms() const { return terms_; }
  const AlgebraPtr& algebra() const { return terms_.front().path.algebra(); }

  Cycle translated(const Element& w) const;
  Cycle mapped(const Morphism& phi) const;

 private:
  std::vector<CycleTerm> terms_;
};

// Integral with the data of the estimate ||int f dZ|| <= ||f||_gamma L(gamma)
// (operator norms; sup over the quadrature nodes).
struct IntegralResult {
  Element value;
  double length = 0.0;
  double sup_norm = 0.0;
  bool estimate_holds = true;
};

double length(const Path& p, const Morphism& phi, NormKind kind, QuadratureOptions options = {});

IntegralResult integrate_with_bound(const FunctionSampler& f, const Path& p, const Morphism& phi,
                                    QuadratureOptions options = {});
Element integrate(const FunctionSampler& f, const Path& p, const Morphism& phi, QuadratureOptions options = {});
Element integrate(const FunctionSampler& f, const Cycle& c, const Morphism& phi, QuadratureOptions options = {});

struct ComponentClearance {
  std::size_t component = 0;  // source component index k
  double clearance = 0.0;     // min_t |sigma_k(Z0) - sigma_k(gamma(t))|
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<ComponentClearance> clearances;
};

// Clearances below this count as lying on the projected cycle.
inline constexpr double kAdmissibilityClearance = 1e-10;

AdmissibilityReport admissibility(const Cycle& c, const Element& z0, const Setting& setting);

// Winding number of a closed scalar curve (given by samples of a map) around
// a point, by angle summation with refinement until every step is < pi/2.
// Throws kWindingUnresolved.
double winding_number(const std::function<cd(double)>& curve, cd point, const std::vector<double>& breakpoints);

// sum_l ind(sigma_tau(l) o Gamma, sigma_tau(l)(Z0)) J_l in B.
// Throws kNotAdmissible or kWindingUnresolved.
Element index_spectral(const Cycle& c, const Element& z0, const Setting& setting);

// (1 / 2 pi i) int_Gamma phi(W - Z0)^{-1} phi(dW) by quadrature.
Element index_quadrature(const Cycle& c, const Element& z0, const Morphism& phi, QuadratureOptions options = {});

struct CifResult {
  Element integral;  // (k! / 2 pi i) int f(W) phi(W - Z0)^{-(k+1)} phi(dW)
  Element index;     // index_spectral
  std::vector<std::string> warnings;
};

// Throws kNotAdmissible. Warns when the sampled f fails the holomorphy
// spot check at three path points.
CifResult cif_value(const FunctionSampler& f, const Cycle& c, const Element& z0, const Setting& setting,
                    QuadratureOptions options = {});
CifResult cif_derivative(const FunctionSampler& f, const Cycle& c, const Element& z0, std::size_t k,
                         const Setting& setting, QuadratureOptions options = {});

// integral * index^{-1}; throws kIndexNotInvertible when some component of
// the index vanishes.
Element solve(const CifResult& r, const Setting& setting);

struct TaylorResult {
  PowerSeries series;
  // Cauchy inequality ||B_k|| <= ||f||_gamma / r^k, checked when the cycle is
  // one scalar circle centered at Z0.
  bool cauchy_checked = false;
  bool cauchy_holds = true;
  std::vector<std::string> warnings;
};

TaylorResult taylor_from_contour(const FunctionSampler& f, const Cycle& c, const Element& z0, std::size_t order,
                                 const Setting& setting, QuadratureOptions options = {});

// || int_{boundary of (a, b, c)} f dZ ||.
double goursat_residual(const FunctionSampler& f, const Element& a, const Element& b, const Element& c,
                        const Morphism& phi, QuadratureOptions options = {});

struct HomologicalReport {
  Element index;
  Element integral;        // (1 / 2 pi i) int f(W) phi(W - Z0)^{-1} phi(dW)
  double cif_residual = 0.0;  // || f(Z0) index - integral ||
  Element plain_integral;  // int f(W) phi(dW)
  bool index_zero = false;
};

HomologicalReport homological_cif_check(const FunctionSampler& f, const Cycle& c, const Element& z0,
                                        const Setting& setting, QuadratureOptions options = {});

}  // namespace holoalg
