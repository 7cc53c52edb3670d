#include "holoalg/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holoalg/error.hpp"
#include "linalg.hpp"

namespace holoalg {

namespace {

constexpr double kNormAgreement = 0.05;

double binomial(std::size_t k, std::size_t j) {
  if (j > k) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= j; ++i) c = c * double(k - j + i) / double(i);
  return c;
}

double root_estimate(double value, std::size_t n) {
  if (value <= 0.0) return 0.0;
  return std::exp(std::log(value) / double(n));
}

double inverse_or_infinite(double limsup) { return limsup > 0.0 ? 1.0 / limsup : kInfiniteRadius; }

// Component norms below this fraction of the full coefficient norm are
// indistinguishable from leakage through the rounded idempotents.
constexpr double kLeakageFloor = 1e-13;

// 1 / max_{n in [M/2, M]} |c_n|^{1/n}, where M is the window end, lowered to
// the last index whose magnitude clears `floor(n)`.
double window_radius(const std::function<double(std::size_t)>& magnitude, std::size_t window_end,
                     const std::function<double(std::size_t)>& floor = {}) {
  std::vector<double> mags(window_end + 1, 0.0);
  std::size_t end = 0;
  for (std::size_t n = 1; n <= window_end; ++n) {
    mags[n] = magnitude(n);
    if (mags[n] > 0.0 && (!floor || mags[n] > floor(n))) end = n;
  }
  if (end == 0) return kInfiniteRadius;
  // A finite-looking tail that stops early (a polynomial given as a rule)
  // keeps the full window and so yields an infinite radius.
  if (!floor) end = window_end;
  double limsup = 0.0;
  for (std::size_t n = std::max<std::size_t>(1, end / 2); n <= end; ++n) {
    limsup = std::max(limsup, root_estimate(mags[n], n));
  }
  return inverse_or_infinite(limsup);
}

std::size_t effective_window(const CoefficientSequence& c, std::size_t requested) {
  return c.is_finite() || c.bound() == 0 ? 0 : std::min(requested, c.bound() - 1);
}

// S_j = sum_k C(k, j) w^(k - j) c_k J for j < nu, summed until the geometric
// majorant of the remainder (weighted by `weights[j]`) drops below the
// truncation target.
struct BinomialSums {
  std::vector<Element> sums;
  std::size_t terms = 0;
  double tail = 0.0;
};

BinomialSums binomial_sums(const CoefficientSequence& c, cd w, const Element& idempotent, std::size_t nu,
                           double radius, const std::vector<double>& weights) {
  const AlgebraPtr& b = idempotent.algebra();
  BinomialSums out;
  out.sums.assign(nu, b->zero());
  const double rho = std::abs(w);
  const double unit_norm = b->unit_coords().norm();

  if (c.is_finite()) {
    std::vector<cd> wpow{1.0};
    for (std::size_t k = 0; k < c.bound(); ++k) {
      const Element bk = c.at(k) * idempotent;
      while (wpow.size() <= k) wpow.push_back(wpow.back() * w);
      for (std::size_t j = 0; j < nu && j <= k; ++j) out.sums[j] += (binomial(k, j) * wpow[k - j]) * bk;
    }
    out.terms = c.bound();
    return out;
  }

  const double shrunk = std::isinf(radius) ? 2.0 * rho + 1.0 : std::max(0.9 * radius, 0.5 * (rho + radius));
  const double q = rho / shrunk;
  std::vector<double> log_scaled;  // log(|c_k J| * shrunk^k)
  std::vector<cd> wpow{1.0};
  const std::size_t first_check = std::max<std::size_t>(2 * nu + 8, 16);
  for (std::size_t k = 0;; ++k) {
    if (k >= c.bound()) {
      std::ostringstream os;
      os << "series did not reach the truncation target within its bound of " << c.bound()
         << " coefficients (tail estimate " << out.tail << ")";
      throw Error(ErrorKind::kSeriesTruncation, os.str());
    }
    const Element bk = c.at(k) * idempotent;
    const double mag = detail::operator_norm(regular_representation(bk));
    log_scaled.push_back(mag > 0.0 ? std::log(mag) + double(k) * std::log(shrunk) : -INFINITY);
    while (wpow.size() <= k) wpow.push_back(wpow.back() * w);
    for (std::size_t j = 0; j < nu && j <= k; ++j) out.sums[j] += (binomial(k, j) * wpow[k - j]) * bk;
    out.terms = k + 1;
    for (std::size_t j = 0; j < nu; ++j) {
      if (!out.sums[j].coords().allFinite()) {
        throw Error(ErrorKind::kSeriesTruncation, "partial sums overflowed before the tail bound was met");
      }
    }
    if (k < first_check || (k % 4) != 0) continue;

    double log_m = -INFINITY;
    for (std::size_t i = k / 2; i <= k; ++i) log_m = std::max(log_m, log_scaled[i]);
    double tail = 0.0;
    bool bounded = true;
    for (std::size_t j = 0; j < nu; ++j) {
      const double ratio = q * double(k + 2) / double(k + 2 - j);
      if (ratio >= 1.0) {
        bounded = false;
        break;
      }
      if (std::isinf(log_m) && log_m < 0) continue;
      const double first = std::log(binomial(k + 1, j)) + double(k + 1 - j) * (q > 0 ? std::log(q) : -INFINITY);
      const double log_tail = log_m - double(j) * std::log(shrunk) + first - std::log1p(-ratio);
      tail += weights[j] * unit_norm * std::exp(log_tail);
    }
    if (!bounded) continue;
    out.tail = tail;
    double scale = 1.0;
    for (std::size_t j = 0; j < nu; ++j) scale = std::max(scale, weights[j] * out.sums[j].coords().norm());
    if (tail < kTruncationTolerance * scale) return out;
  }
}

bool is_local(const AlgebraPtr& a) { return a->radical_complement().cols() == 1; }

}  // namespace

CoefficientSequence CoefficientSequence::finite(std::vector<Element> coefficients) {
  if (coefficients.empty()) throw Error(ErrorKind::kInvalidArgument, "a finite series needs at least one coefficient");
  CoefficientSequence c;
  c.algebra_ = coefficients.front().algebra();
  for (const auto& e : coefficients) {
    if (e.algebra() != c.algebra_) throw Error(ErrorKind::kAlgebraMismatch, "coefficients live in different algebras");
  }
  c.list_ = std::move(coefficients);
  return c;
}

CoefficientSequence CoefficientSequence::rule(Rule rule, std::size_t bound) {
  if (!rule) throw Error(ErrorKind::kInvalidArgument, "empty coefficient rule");
  CoefficientSequence c;
  c.algebra_ = rule(0).algebra();
  c.rule_ = std::move(rule);
  c.bound_ = bound;
  return c;
}

Element CoefficientSequence::at(std::size_t k) const {
  if (is_finite()) return k < list_.size() ? list_[k] : algebra_->zero();
  if (k >= bound_) {
    std::ostringstream os;
    os << "coefficient " << k << " requested beyond the rule bound " << bound_;
    throw Error(ErrorKind::kSeriesTruncation, os.str());
  }
  return rule_(k);
}

CoefficientSequence CoefficientSequence::derived() const { return shifted(1); }

CoefficientSequence CoefficientSequence::shifted(std::size_t m) const {
  if (m == 0) return *this;
  if (is_finite()) {
    std::vector<Element> out;
    for (std::size_t k = m; k < list_.size(); ++k) out.push_back(binomial(k, m) * list_[k]);
    if (out.empty()) out.push_back(algebra_->zero());
    return finite(std::move(out));
  }
  const CoefficientSequence self = *this;
  const std::size_t bound = bound_ > m ? bound_ - m : 0;
  CoefficientSequence c;
  c.algebra_ = algebra_;
  c.rule_ = [self, m](std::size_t k) { return binomial(k + m, m) * self.rule_(k + m); };
  c.bound_ = bound;
  return c;
}

PowerSeries::PowerSeries(Setting setting, Element center, CoefficientSequence coefficients)
    : setting_(std::move(setting)), center_(std::move(center)), coefficients_(std::move(coefficients)) {
  if (center_.algebra() != setting_.phi.source()) {
    throw Error(ErrorKind::kAlgebraMismatch, "series center is not in the morphism's source");
  }
  if (coefficients_.algebra() != setting_.phi.target()) {
    throw Error(ErrorKind::kAlgebraMismatch, "series coefficients are not in the morphism's target");
  }
  radius_ = holoalg::radius(*this);
}

RadiusEstimate radius(const PowerSeries& s, RadiusOptions options) {
  RadiusEstimate est;
  const Decomposition& dt = s.setting().target;
  const CoefficientSequence& c = s.coefficients();
  const std::size_t window = effective_window(c, options.window_end);
  for (std::size_t l = 0; l < dt.count(); ++l) {
    const Element& j = dt.idempotents[l];
    if (c.is_finite()) {
      est.component_radii.push_back(kInfiniteRadius);
      est.frobenius_radii.push_back(kInfiniteRadius);
      est.divergence_radii.push_back(kInfiniteRadius);
      continue;
    }
    std::vector<Element> full, part;
    for (std::size_t n = 0; n <= window; ++n) {
      full.push_back(c.at(n));
      part.push_back(full.back() * j);
    }
    auto op = [&](std::size_t n) { return detail::operator_norm(regular_representation(part[n])); };
    auto fro = [&](std::size_t n) { return regular_representation(part[n]).norm(); };
    auto spec = [&](std::size_t n) { return std::abs(spectral_value(dt, l, part[n])); };
    auto op_floor = [&](std::size_t n) {
      return kLeakageFloor * detail::operator_norm(regular_representation(full[n]));
    };
    auto fro_floor = [&](std::size_t n) { return kLeakageFloor * regular_representation(full[n]).norm(); };
    const double r_op = window_radius(op, window, op_floor);
    const double r_fro = window_radius(fro, window, fro_floor);
    est.component_radii.push_back(r_op);
    est.frobenius_radii.push_back(r_fro);
    est.divergence_radii.push_back(window_radius(spec, window, op_floor));
    if (std::isinf(r_op) != std::isinf(r_fro) ||
        (!std::isinf(r_op) && std::abs(r_op - r_fro) > kNormAgreement * std::max(r_op, r_fro))) {
      est.norms_agree = false;
    }
  }
  for (double r : est.component_radii) est.radius = std::min(est.radius, r);
  return est;
}

std::string_view to_string(SeriesStatus status) {
  switch (status) {
    case SeriesStatus::kConverged: return "converged";
    case SeriesStatus::kDivergent: return "divergent";
    case SeriesStatus::kBoundaryIndeterminate: return "boundary-indeterminate";
  }
  return "?";
}

Element evaluate_polynomial(const PowerSeries& s, const Element& z) {
  const CoefficientSequence& c = s.coefficients();
  if (!c.is_finite()) throw Error(ErrorKind::kInvalidArgument, "Horner evaluation needs a finite series");
  const Element h = s.phi()(z - s.center());
  Element acc = c.at(c.bound() - 1);
  for (std::size_t k = c.bound() - 1; k-- > 0;) acc = acc * h + c.at(k);
  return acc;
}

SeriesValue evaluate(const PowerSeries& s, const Element& z) {
  if (z.algebra() != s.phi().source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in the series' domain");
  const Setting& st = s.setting();
  const Element h = z - s.center();
  SeriesValue out;
  std::vector<cd> scalar;
  for (std::size_t l = 0; l < st.factorization.tau.size(); ++l) {
    scalar.push_back(spectral_value(st.source, st.factorization.tau[l], h));
    out.spectral_radii.push_back(std::abs(scalar.back()));
  }
  if (s.coefficients().is_finite()) {
    out.value = evaluate_polynomial(s, z);
    out.terms = s.coefficients().bound();
    return out;
  }

  const RadiusEstimate& est = s.radius();  // default window
  bool divergent = false, boundary = false;
  for (std::size_t l = 0; l < scalar.size(); ++l) {
    const double r = est.component_radii[l], rho = out.spectral_radii[l];
    if (std::isinf(r)) continue;
    if (std::abs(rho - r) <= kBoundaryTolerance * r) {
      boundary = true;
    } else if (rho > r) {
      divergent = true;
    }
  }
  if (divergent) {
    out.status = SeriesStatus::kDivergent;
    return out;
  }
  if (boundary) {
    out.status = SeriesStatus::kBoundaryIndeterminate;
    return out;
  }

  const Element ph = s.phi()(h);
  const std::vector<std::size_t> heights = st.heights();
  Element value = s.phi().target()->zero();
  for (std::size_t l = 0; l < scalar.size(); ++l) {
    const Element& j = st.target.idempotents[l];
    const Element y = ph * j - scalar[l] * j;
    std::vector<Element> ypow{j};
    std::vector<double> weights{detail::operator_norm(regular_representation(j))};
    for (std::size_t p = 1; p < heights[l]; ++p) {
      ypow.push_back(ypow.back() * y);
      weights.push_back(detail::operator_norm(regular_representation(ypow.back())));
    }
    const BinomialSums sums =
        binomial_sums(s.coefficients(), scalar[l], j, heights[l], est.component_radii[l], weights);
    for (std::size_t p = 0; p < heights[l]; ++p) value += ypow[p] * sums.sums[p];
    out.terms = std::max(out.terms, sums.terms);
    out.tail_bound += sums.tail;
  }
  out.value = value;
  return out;
}

PowerSeries derive(const PowerSeries& s) { return {s.setting(), s.center(), s.coefficients().derived()}; }

CanonicalForm::CanonicalForm(ScalarSeries g, Setting setting)
    : g_(std::move(g)), setting_(std::move(setting)), heights_(setting_.heights()) {
  if (g_.coefficients.algebra() != setting_.phi.target()) {
    throw Error(ErrorKind::kAlgebraMismatch, "scalar Taylor data must have coefficients in the target algebra");
  }
  const CoefficientSequence& c = g_.coefficients;
  const std::size_t window = effective_window(c, RadiusOptions{}.window_end);
  if (!c.is_finite()) {
    radius_ = window_radius([&](std::size_t n) { return detail::operator_norm(regular_representation(c.at(n))); },
                            window);
  }
}

Element CanonicalForm::operator()(const Element& z) const {
  if (z.algebra() != setting_.phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in the domain");
  const Element pz = setting_.phi(z);
  Element value = setting_.phi.target()->zero();
  for (std::size_t l = 0; l < heights_.size(); ++l) {
    const cd s = spectral_value(setting_.source, setting_.factorization.tau[l], z);
    const cd w = s - g_.center;
    if (!(std::abs(w) < radius_ * (1.0 - kBoundaryTolerance))) {
      std::ostringstream os;
      os << "spectral value " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i lies outside the disc of radius "
         << radius_ << " around the scalar center";
      throw Error(ErrorKind::kOutsideScalarDomain, os.str());
    }
    const Element& j = setting_.target.idempotents[l];
    const Element y = pz * j - s * j;
    std::vector<Element> ypow{j};
    std::vector<double> weights{1.0};
    for (std::size_t p = 1; p < heights_[l]; ++p) {
      ypow.push_back(ypow.back() * y);
      weights.push_back(detail::operator_norm(regular_representation(ypow.back())));
    }
    const BinomialSums sums = binomial_sums(g_.coefficients, w, j, heights_[l], radius_, weights);
    for (std::size_t p = 0; p < heights_[l]; ++p) value += ypow[p] * sums.sums[p];
  }
  return value;
}

CanonicalForm CanonicalForm::derived() const { return {ScalarSeries{g_.center, g_.coefficients.derived()}, setting_}; }

CanonicalForm canonical_form(const ScalarSeries& g, const Morphism& phi) {
  if (!is_local(phi.source()) || !is_local(phi.target())) {
    throw Error(ErrorKind::kNotLocalPair,
                "canonical form needs local source and target; factor the morphism and pass the setting");
  }
  return {g, make_setting(phi)};
}

CanonicalForm canonical_form(const ScalarSeries& g, const Setting& setting) { return {g, setting}; }

namespace {

Element converged_value(const PowerSeries& s, const Element& z) {
  const SeriesValue v = evaluate(s, z);
  if (v.status != SeriesStatus::kConverged) {
    std::ostringstream os;
    os << "point lies outside the open polycylinder of convergence (" << to_string(v.status) << ")";
    throw Error(ErrorKind::kOutsideScalarDomain, os.str());
  }
  return *v.value;
}

}  // namespace

Element nilpotent_derivative(const PowerSeries& s, const Element& z, const Element& x) {
  const AlgebraPtr& a = s.phi().source();
  if (x.algebra() != a) throw Error(ErrorKind::kAlgebraMismatch, "increment is not in the series' domain");
  const unsigned n = unsigned(a->dim());
  const double scale = std::max(1.0, std::pow(x.coords().norm(), double(n)));
  if (power(x, n).coords().norm() > 1e-10 * scale) {
    throw Error(ErrorKind::kNotNilpotent, "increment is not nilpotent");
  }
  const Element px = s.phi()(x);
  Element xpow = s.phi().target()->one();
  Element out = s.phi().target()->zero();
  for (unsigned k = 0; k < n; ++k) {
    const PowerSeries dk(s.setting(), s.center(), s.coefficients().shifted(k + 1));
    out += converged_value(dk, z) * xpow;
    xpow = xpow * px;
  }
  return out;
}

Element nilpotent_quotient(const PowerSeries& s, const Element& z, const Element& x, double delta) {
  const Element fz = converged_value(s, z);
  Element out = s.phi().target()->zero();
  for (double sign : {1.0, -1.0}) {
    const Element h = x.plus_scalar(sign * delta);
    out += (converged_value(s, z + h) - fz) * invert(s.phi()(h));
  }
  return 0.5 * out;
}

Element extend_to_cylinder(const PowerSeries& s, const Element& z) { return converged_value(s, z); }

Element extend_to_cylinder(const CanonicalForm& f, const Element& z) { return f(z); }

}  // namespace holoalg
