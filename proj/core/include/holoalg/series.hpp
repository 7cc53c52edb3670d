#pragma once

// phi-analytic power series sum_k B_k phi(Z - Z0)^k, their radii, evaluation
// on the spectral polycylinder, and canonical forms
// g~(z (+) X) = sum_{k < nu} g^(k)(z) / k! phi(X)^k.

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "holoalg/algebra.hpp"
#include "holoalg/morphism.hpp"

namespace holoalg {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// Coefficients B_0, B_1, ... either as a finite list or as a rule valid up to
// an explicit index bound.
class CoefficientSequence {
 public:
  using Rule = std::function<Element(std::size_t)>;

  static CoefficientSequence finite(std::vector<Element> coefficients);
  static CoefficientSequence rule(Rule rule, std::size_t bound);

  bool is_finite() const { return !rule_; }
  // Number of stored coefficients (finite) or the truncation bound (rule).
  std::size_t bound() const { return is_finite() ? list_.size() : bound_; }
  // Zero beyond the end of a finite list. Throws kSeriesTruncation past the
  // bound of a rule.
  Element at(std::size_t k) const;
  const AlgebraPtr& algebra() const { return algebra_; }

  // (k + 1) B_{k+1}.
  CoefficientSequence derived() const;
  // C(k + m, m) B_{k+m}: coefficients of f^(m)(Z) / m! around the same center.
  CoefficientSequence shifted(std::size_t m) const;

 private:
  CoefficientSequence() = default;

  std::vector<Element> list_;
  Rule rule_;
  std::size_t bound_ = 0;
  AlgebraPtr algebra_;
};

struct RadiusOptions {
  std::size_t window_end = 200;  // N; the tail window is [N/2, N]
};

struct RadiusEstimate {
  double radius = kInfiniteRadius;         // min over target components
  std::vector<double> component_radii;     // R_l, operator norm
  std::vector<double> frobenius_radii;     // cross-check
  std::vector<double> divergence_radii;    // D^sp_l, diagnostic only
  bool norms_agree = true;                 // within 5 %
};

class PowerSeries {
 public:
  PowerSeries(Setting setting, Element center, CoefficientSequence coefficients);

  const Setting& setting() const { return setting_; }
  const Morphism& phi() const { return setting_.phi; }
  const Element& center() const { return center_; }
  const CoefficientSequence& coefficients() const { return coefficients_; }

  // Estimate with the default window, computed on construction.
  const RadiusEstimate& radius() const { return radius_; }

 private:
  Setting setting_;
  Element center_;
  CoefficientSequence coefficients_;
  RadiusEstimate radius_;
};

RadiusEstimate radius(const PowerSeries& s, RadiusOptions options = {});

enum class SeriesStatus { kConverged, kDivergent, kBoundaryIndeterminate };
std::string_view to_string(SeriesStatus status);

struct SeriesValue {
  SeriesStatus status = SeriesStatus::kConverged;
  std::optional<Element> value;
  std::vector<double> spectral_radii;  // |sigma_tau(l)(Z - Z0)| per target component
  std::size_t terms = 0;               // coefficients summed (rule series)
  double tail_bound = 0.0;
};

// Relative tolerance for the boundary |sigma(Z - Z0)| = R_l.
inline constexpr double kBoundaryTolerance = 1e-9;
// Truncation target for rule series, relative to max(1, |value|).
inline constexpr double kTruncationTolerance = 1e-12;

SeriesValue evaluate(const PowerSeries& s, const Element& z);

PowerSeries derive(const PowerSeries& s);

// A single-variable series g(z) = sum_k c_k (z - z0)^k with B-valued
// coefficients.
struct ScalarSeries {
  cd center = 0.0;
  CoefficientSequence coefficients;
};

class CanonicalForm {
 public:
  // Uses the factorization of `setting` component by component.
  CanonicalForm(ScalarSeries g, Setting setting);

  const ScalarSeries& scalar() const { return g_; }
  const Setting& setting() const { return setting_; }
  // nu = h(phi) per target component.
  const std::vector<std::size_t>& heights() const { return heights_; }
  double scalar_radius() const { return radius_; }

  // Throws kOutsideScalarDomain when some |sigma(Z) - z0| >= radius.
  Element operator()(const Element& z) const;

  // The canonical form of g'.
  CanonicalForm derived() const;

 private:
  ScalarSeries g_;
  Setting setting_;
  std::vector<std::size_t> heights_;
  double radius_ = kInfiniteRadius;
};

// Requires source and target of phi to be local; throws kNotLocalPair
// otherwise (use the Setting overload after factorization).
CanonicalForm canonical_form(const ScalarSeries& g, const Morphism& phi);
CanonicalForm canonical_form(const ScalarSeries& g, const Setting& setting);

// f'_(X)(Z) = sum_k f^(k+1)(Z) / (k+1)! phi(X)^k for nilpotent X.
// Throws kNotNilpotent.
Element nilpotent_derivative(const PowerSeries& s, const Element& z, const Element& x);

// Symmetric difference quotient over H = X +- delta 1:
// average of (f(Z + H) - f(Z)) / phi(H).
Element nilpotent_quotient(const PowerSeries& s, const Element& z, const Element& x, double delta);

// Value of the extension to the spectral cylinder; throws
// kOutsideScalarDomain outside the open polycylinder.
Element extend_to_cylinder(const PowerSeries& s, const Element& z);
Element extend_to_cylinder(const CanonicalForm& f, const Element& z);

// Sum_{k} B_k phi(Z - Z0)^k for a finite series, by Horner's rule.
Element evaluate_polynomial(const PowerSeries& s, const Element& z);

}  // namespace holoalg
