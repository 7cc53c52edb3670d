#include "holoalg/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "holoalg/decomposition.hpp"

namespace holoalg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cd kI(0.0, 1.0);
constexpr double kEndpointTol = 1e-12;
constexpr int kWindingDepth = 40;
constexpr int kClearanceGrid = 10000;

bool same_point(const Vector& a, const Vector& b) {
  return (a - b).norm() <= kEndpointTol * (1.0 + std::max(a.norm(), b.norm()));
}

// Integrates over every C^infinity piece of every segment.
Vector integrate_segments(const Path& p, const std::function<Vector(const Segment&, double)>& integrand,
                          QuadratureOptions options) {
  Vector total;
  for (const Segment& s : p.segments()) {
    const auto bp = s.breakpoints();
    for (std::size_t q = 0; q + 1 < bp.size(); ++q) {
      const Vector v = gauss_legendre([&](double t) { return integrand(s, t); }, bp[q], bp[q + 1], options);
      total = total.size() == 0 ? v : Vector(total + v);
    }
  }
  return total;
}

// Total change of arg(curve(t) - point) over [a, b], refining until each
// step is below pi / 2.
double angle_change(const std::function<cd(double)>& curve, cd point, double a, double b, cd za, cd zb, int depth) {
  const cd ratio = (zb - point) / (za - point);
  const double step = std::arg(ratio);
  if (std::abs(step) < std::numbers::pi / 2.0) return step;
  if (depth >= kWindingDepth) {
    std::ostringstream os;
    os << "angle increment " << step << " on [" << a << ", " << b << "] did not resolve";
    throw Error(ErrorKind::kWindingUnresolved, os.str());
  }
  const double m = 0.5 * (a + b);
  const cd zm = curve(m);
  return angle_change(curve, point, a, m, za, zm, depth + 1) + angle_change(curve, point, m, b, zm, zb, depth + 1);
}

double angle_sum(const std::function<cd(double)>& curve, cd point, const std::vector<double>& breakpoints) {
  double total = 0.0;
  for (std::size_t q = 0; q + 1 < breakpoints.size(); ++q) {
    constexpr int kInitial = 64;
    const double a = breakpoints[q], b = breakpoints[q + 1];
    cd prev = curve(a);
    for (int i = 1; i <= kInitial; ++i) {
      const double t0 = a + (b - a) * (i - 1) / kInitial, t1 = a + (b - a) * i / kInitial;
      const cd next = curve(t1);
      total += angle_change(curve, point, t0, t1, prev, next, 0);
      prev = next;
    }
  }
  return total;
}

// min_t |curve(t) - point| on a grid of step 1e-4 refined by golden section.
double min_distance(const std::function<cd(double)>& curve, cd point) {
  double best = std::abs(curve(0.0) - point);
  int best_i = 0;
  for (int i = 1; i <= kClearanceGrid; ++i) {
    const double d = std::abs(curve(double(i) / kClearanceGrid) - point);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  double lo = std::max(0.0, double(best_i - 1) / kClearanceGrid);
  double hi = std::min(1.0, double(best_i + 1) / kClearanceGrid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (std::abs(curve(m1) - point) < std::abs(curve(m2) - point)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, std::abs(curve(0.5 * (lo + hi)) - point));
}

std::function<cd(double)> projected(const Segment& s, const Vector& row) {
  return [&s, row](double t) { return cd(row.transpose() * s.point(t)); };
}

// Integer winding numbers per target component.
std::vector<int> spectral_windings(const Cycle& c, const Element& z0, const Setting& setting) {
  const AdmissibilityReport report = admissibility(c, z0, setting);
  if (!report.admissible) {
    std::ostringstream os;
    os << "point lies in the forbidden zone of the cycle (clearances";
    for (const auto& cl : report.clearances) os << " " << cl.clearance;
    os << ")";
    throw Error(ErrorKind::kNotAdmissible, os.str());
  }
  std::vector<int> out;
  for (std::size_t l = 0; l < setting.factorization.tau.size(); ++l) {
    const std::size_t k = setting.factorization.tau[l];
    const Vector row = setting.source.spectral_rows.row(Eigen::Index(k)).transpose();
    const cd p = spectral_value(setting.source, k, z0);
    double total = 0.0;
    for (const CycleTerm& term : c.terms()) {
      double angle = 0.0;
      for (const Segment& s : term.path.segments()) angle += angle_sum(projected(s, row), p, s.breakpoints());
      const double w = angle / kTwoPi;
      const double r = std::round(w);
      if (std::abs(w - r) > 0.05) {
        std::ostringstream os;
        os << "winding sum " << w << " is not close to an integer";
        throw Error(ErrorKind::kWindingUnresolved, os.str());
      }
      total += term.multiplicity * r;
    }
    out.push_back(int(total));
  }
  return out;
}

void require_path_algebra(const Path& p, const Morphism& phi) {
  if (p.algebra() != phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "path is not in phi's source");
}

Element sample_target(const FunctionSampler& f, const Morphism& phi, const Element& z) {
  Element v = f(z);
  if (v.algebra() != phi.target()) throw Error(ErrorKind::kAlgebraMismatch, "function values are not in phi's target");
  return v;
}

}  // namespace

Segment Segment::circle(const Element& center, double radius, int turns, const Element& direction) {
  require_same_algebra(center, direction);
  if (!(radius > 0.0)) throw Error(ErrorKind::kInvalidArgument, "circle radius must be positive");
  if (turns == 0) throw Error(ErrorKind::kInvalidArgument, "circle needs a nonzero number of turns");
  Segment s;
  s.kind_ = Kind::kCircle;
  s.algebra_ = center.algebra();
  s.center_ = center.coords();
  s.direction_ = direction.coords();
  s.radius_ = radius;
  s.turns_ = turns;
  return s;
}

Segment Segment::line(const Element& from, const Element& to) {
  require_same_algebra(from, to);
  Segment s;
  s.kind_ = Kind::kLine;
  s.algebra_ = from.algebra();
  s.points_ = {from.coords(), to.coords()};
  return s;
}

Segment Segment::samples(std::vector<Element> points, bool smooth) {
  if (points.size() < 2) throw Error(ErrorKind::kInvalidArgument, "sampled path needs at least two points");
  for (const auto& p : points) require_same_algebra(points.front(), p);
  Segment s;
  s.kind_ = Kind::kSamples;
  s.algebra_ = points.front().algebra();
  s.smooth_ = smooth;
  for (const auto& p : points) s.points_.push_back(p.coords());
  const std::size_t n = s.points_.size() - 1;
  const bool periodic = n >= 2 && same_point(s.points_.front(), s.points_.back());
  s.tangents_.resize(n + 1);
  for (std::size_t i = 1; i < n; ++i) s.tangents_[i] = 0.5 * (s.points_[i + 1] - s.points_[i - 1]);
  if (periodic) {
    s.tangents_[0] = s.tangents_[n] = 0.5 * (s.points_[1] - s.points_[n - 1]);
  } else {
    s.tangents_[0] = s.points_[1] - s.points_[0];
    s.tangents_[n] = s.points_[n] - s.points_[n - 1];
  }
  return s;
}

Vector Segment::point(double t) const {
  switch (kind_) {
    case Kind::kCircle:
      return center_ + radius_ * std::exp(kI * (kTwoPi * turns_ * t)) * direction_;
    case Kind::kLine:
      return points_[0] + t * (points_[1] - points_[0]);
    case Kind::kSamples: {
      const std::size_t n = points_.size() - 1;
      const double u = t * double(n);
      const std::size_t i = std::min(n - 1, std::size_t(std::max(0.0, std::floor(u))));
      const double s = u - double(i);
      const double s2 = s * s, s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * points_[i] + (s3 - 2 * s2 + s) * tangents_[i] + (-2 * s3 + 3 * s2) * points_[i + 1] +
             (s3 - s2) * tangents_[i + 1];
    }
  }
  return {};
}

Vector Segment::tangent(double t) const {
  switch (kind_) {
    case Kind::kCircle:
      return (kI * (kTwoPi * turns_ * radius_)) * std::exp(kI * (kTwoPi * turns_ * t)) * direction_;
    case Kind::kLine:
      return points_[1] - points_[0];
    case Kind::kSamples: {
      const std::size_t n = points_.size() - 1;
      const double u = t * double(n);
      const std::size_t i = std::min(n - 1, std::size_t(std::max(0.0, std::floor(u))));
      const double s = u - double(i);
      const double s2 = s * s;
      return double(n) * ((6 * s2 - 6 * s) * points_[i] + (3 * s2 - 4 * s + 1) * tangents_[i] +
                          (-6 * s2 + 6 * s) * points_[i + 1] + (3 * s2 - 2 * s) * tangents_[i + 1]);
    }
  }
  return {};
}

std::vector<double> Segment::breakpoints() const {
  std::size_t pieces = 1;
  if (kind_ == Kind::kCircle) pieces = std::size_t(std::abs(turns_));
  if (kind_ == Kind::kSamples) pieces = points_.size() - 1;
  std::vector<double> bp;
  for (std::size_t i = 0; i <= pieces; ++i) bp.push_back(double(i) / double(pieces));
  return bp;
}

Segment Segment::transformed(const AlgebraPtr& algebra, const Matrix& m, const Vector& shift) const {
  Segment s = *this;
  s.algebra_ = algebra;
  if (kind_ == Kind::kCircle) {
    s.center_ = m * center_ + shift;
    s.direction_ = m * direction_;
  }
  for (auto& p : s.points_) p = m * p + shift;
  for (auto& t : s.tangents_) t = m * t;
  return s;
}

Segment Segment::reversed() const {
  Segment s = *this;
  s.turns_ = -turns_;
  std::reverse(s.points_.begin(), s.points_.end());
  std::reverse(s.tangents_.begin(), s.tangents_.end());
  for (auto& t : s.tangents_) t = -t;
  return s;
}

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorKind::kInvalidArgument, "path has no segments");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (segments_[i].algebra() != segments_[i + 1].algebra()) {
      throw Error(ErrorKind::kAlgebraMismatch, "path segments live in different algebras");
    }
    if (!same_point(segments_[i].end(), segments_[i + 1].start())) {
      std::ostringstream os;
      os << "segments " << i + 1 << " and " << i + 2 << " do not share an endpoint";
      throw Error(ErrorKind::kInvalidArgument, os.str());
    }
  }
}

Path Path::circle(const Element& center, double radius, int turns) {
  return circle(center, radius, turns, center.algebra()->one());
}

Path Path::circle(const Element& center, double radius, int turns, const Element& direction) {
  return Path({Segment::circle(center, radius, turns, direction)});
}

Path Path::polyline(const std::vector<Element>& points, bool close) {
  if (points.size() < 2) throw Error(ErrorKind::kInvalidArgument, "polyline needs at least two points");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) segs.push_back(Segment::line(points[i], points[i + 1]));
  if (close && !same_point(points.back().coords(), points.front().coords())) {
    segs.push_back(Segment::line(points.back(), points.front()));
  }
  return Path(std::move(segs));
}

Path Path::samples(std::vector<Element> points, bool smooth) {
  return Path({Segment::samples(std::move(points), smooth)});
}

bool Path::closed() const {
  return same_point(segments_.back().end(), segments_.front().start());
}

Path Path::translated(const Element& w) const {
  if (w.algebra() != algebra()) throw Error(ErrorKind::kAlgebraMismatch, "translation is not in the path's algebra");
  const auto n = Eigen::Index(algebra()->dim());
  std::vector<Segment> segs;
  for (const auto& s : segments_) segs.push_back(s.transformed(algebra(), Matrix::Identity(n, n), w.coords()));
  return Path(std::move(segs));
}

Path Path::reversed() const {
  std::vector<Segment> segs;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) segs.push_back(it->reversed());
  return Path(std::move(segs));
}

Path Path::mapped(const Morphism& phi) const {
  if (phi.source() != algebra()) throw Error(ErrorKind::kAlgebraMismatch, "path is not in phi's source");
  std::vector<Segment> segs;
  const Vector zero = Vector::Zero(Eigen::Index(phi.target()->dim()));
  for (const auto& s : segments_) segs.push_back(s.transformed(phi.target(), phi.matrix(), zero));
  return Path(std::move(segs));
}

Cycle::Cycle(std::vector<CycleTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorKind::kInvalidArgument, "cycle has no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!terms_[i].path.closed()) {
      std::ostringstream os;
      os << "path " << i + 1 << " of the cycle is not closed";
      throw Error(ErrorKind::kInvalidArgument, os.str());
    }
    if (terms_[i].path.algebra() != terms_.front().path.algebra()) {
      throw Error(ErrorKind::kAlgebraMismatch, "cycle paths live in different algebras");
    }
  }
}

Cycle::Cycle(Path path, int multiplicity) : Cycle(std::vector<CycleTerm>{{multiplicity, std::move(path)}}) {}

Cycle Cycle::translated(const Element& w) const {
  std::vector<CycleTerm> t;
  for (const auto& term : terms_) t.push_back({term.multiplicity, term.path.translated(w)});
  return Cycle(std::move(t));
}

Cycle Cycle::mapped(const Morphism& phi) const {
  std::vector<CycleTerm> t;
  for (const auto& term : terms_) t.push_back({term.multiplicity, term.path.mapped(phi)});
  return Cycle(std::move(t));
}

double length(const Path& p, const Morphism& phi, NormKind kind, QuadratureOptions options) {
  require_path_algebra(p, phi);
  for (const auto& s : p.segments()) {
    if (!s.smooth()) throw Error(ErrorKind::kNotSmooth, "sampled segment is not flagged as C^1");
  }
  const Vector v = integrate_segments(
      p,
      [&](const Segment& s, double t) {
        Vector out(1);
        out[0] = norm(phi.target()->element(phi.matrix() * s.tangent(t)), kind);
        return out;
      },
      options);
  return v[0].real();
}

IntegralResult integrate_with_bound(const FunctionSampler& f, const Path& p, const Morphism& phi,
                                    QuadratureOptions options) {
  require_path_algebra(p, phi);
  const auto m = Eigen::Index(phi.target()->dim());
  double sup = 0.0;
  const Vector v = integrate_segments(
      p,
      [&](const Segment& s, double t) {
        const Element fz = sample_target(f, phi, p.algebra()->element(s.point(t)));
        const Element dz = phi.target()->element(phi.matrix() * s.tangent(t));
        sup = std::max(sup, norm(fz, NormKind::kOperator));
        Vector out(m + 1);
        out.head(m) = (fz * dz).coords();
        out[m] = norm(dz, NormKind::kOperator);
        return out;
      },
      options);
  IntegralResult r{phi.target()->element(v.head(m)), v[m].real(), sup, true};
  const double lhs = norm(r.value, NormKind::kOperator);
  r.estimate_holds = lhs <= r.sup_norm * r.length * (1.0 + 1e-8) + 1e-12;
  return r;
}

Element integrate(const FunctionSampler& f, const Path& p, const Morphism& phi, QuadratureOptions options) {
  return integrate_with_bound(f, p, phi, options).value;
}

Element integrate(const FunctionSampler& f, const Cycle& c, const Morphism& phi, QuadratureOptions options) {
  Element total = phi.target()->zero();
  for (const auto& term : c.terms()) total += double(term.multiplicity) * integrate(f, term.path, phi, options);
  return total;
}

AdmissibilityReport admissibility(const Cycle& c, const Element& z0, const Setting& setting) {
  if (c.algebra() != setting.phi.source() || z0.algebra() != setting.phi.source()) {
    throw Error(ErrorKind::kAlgebraMismatch, "cycle and point must live in phi's source");
  }
  AdmissibilityReport report;
  for (std::size_t k : setting.active_components()) {
    const Vector row = setting.source.spectral_rows.row(Eigen::Index(k)).transpose();
    const cd p = spectral_value(setting.source, k, z0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& term : c.terms())
      for (const auto& s : term.path.segments()) best = std::min(best, min_distance(projected(s, row), p));
    report.clearances.push_back({k, best});
    if (!(best > kAdmissibilityClearance)) report.admissible = false;
  }
  return report;
}

double winding_number(const std::function<cd(double)>& curve, cd point, const std::vector<double>& breakpoints) {
  const double w = angle_sum(curve, point, breakpoints) / kTwoPi;
  if (std::abs(w - std::round(w)) > 0.05) {
    std::ostringstream os;
    os << "winding sum " << w << " is not close to an integer";
    throw Error(ErrorKind::kWindingUnresolved, os.str());
  }
  return std::round(w);
}

Element index_spectral(const Cycle& c, const Element& z0, const Setting& setting) {
  const std::vector<int> w = spectral_windings(c, z0, setting);
  Element out = setting.phi.target()->zero();
  for (std::size_t l = 0; l < w.size(); ++l) out += double(w[l]) * setting.target.idempotents[l];
  return out;
}

Element index_quadrature(const Cycle& c, const Element& z0, const Morphism& phi, QuadratureOptions options) {
  if (z0.algebra() != phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in phi's source");
  const FunctionSampler kernel([&](const Element& w) { return invert(phi(w - z0)); });
  return (1.0 / (kTwoPi * kI)) * integrate(kernel, c, phi, options);
}

CifResult cif_derivative(const FunctionSampler& f, const Cycle& c, const Element& z0, std::size_t k,
                         const Setting& setting, QuadratureOptions options) {
  const Morphism& phi = setting.phi;
  CifResult r{phi.target()->zero(), index_spectral(c, z0, setting), {}};

  const Path& first = c.terms().front().path;
  for (double t : {0.1, 0.4, 0.7}) {
    const double u = t * double(first.segments().size());
    const Segment& s = first.segments()[std::size_t(u)];
    const Element z = first.algebra()->element(s.point(u - std::floor(u)));
    const double h = default_step(z);
    if (verdict(gcru_residual(f, phi, z, h), h) != HolomorphyVerdict::kHolomorphic) {
      std::ostringstream os;
      os << "function does not look phi-holomorphic near the path (t = " << t << ")";
      r.warnings.push_back(os.str());
      break;
    }
  }

  const FunctionSampler integrand([&](const Element& w) {
    const Element inv = invert(phi(w - z0));
    Element kernel = inv;
    for (std::size_t q = 0; q < k; ++q) kernel *= inv;
    return sample_target(f, phi, w) * kernel;
  });
  const double factorial = std::tgamma(double(k) + 1.0);
  r.integral = (factorial / (kTwoPi * kI)) * integrate(integrand, c, phi, options);
  return r;
}

CifResult cif_value(const FunctionSampler& f, const Cycle& c, const Element& z0, const Setting& setting,
                    QuadratureOptions options) {
  return cif_derivative(f, c, z0, 0, setting, options);
}

Element solve(const CifResult& r, const Setting& setting) {
  Element inverse = setting.phi.target()->zero();
  for (std::size_t l = 0; l < setting.target.count(); ++l) {
    const cd w = spectral_value(setting.target, l, r.index);
    if (std::abs(w) < 0.5) {
      std::ostringstream os;
      os << "index vanishes on target component " << l + 1;
      throw Error(ErrorKind::kIndexNotInvertible, os.str());
    }
    inverse += (1.0 / std::round(w.real())) * setting.target.idempotents[l];
  }
  return r.integral * inverse;
}

TaylorResult taylor_from_contour(const FunctionSampler& f, const Cycle& c, const Element& z0, std::size_t order,
                                 const Setting& setting, QuadratureOptions options) {
  std::vector<Element> coeffs;
  std::vector<std::string> warnings;
  for (std::size_t k = 0; k <= order; ++k) {
    const CifResult r = cif_derivative(f, c, z0, k, setting, options);
    if (k == 0) warnings = r.warnings;
    coeffs.push_back((1.0 / std::tgamma(double(k) + 1.0)) * solve(r, setting));
  }
  TaylorResult out{PowerSeries(setting, z0, CoefficientSequence::finite(coeffs)), false, true, std::move(warnings)};

  // Cauchy inequality for a single scalar circle around Z0.
  if (c.terms().size() == 1 && c.terms()[0].path.segments().size() == 1) {
    const Segment& s = c.terms()[0].path.segments()[0];
    const AlgebraPtr& a = z0.algebra();
    const Vector& u = a->unit_coords();
    const cd scale = u.dot(s.direction()) / u.squaredNorm();
    const bool scalar = (s.direction() - scale * u).norm() <= 1e-12 * (1.0 + s.direction().norm());
    if (s.kind() == Segment::Kind::kCircle && scalar && std::abs(std::abs(scale) - 1.0) <= 1e-12 &&
        same_point(s.center(), z0.coords())) {
      out.cauchy_checked = true;
      double sup = 0.0;
      constexpr int kSamples = 256;
      for (int i = 0; i < kSamples; ++i) {
        sup = std::max(sup, norm(sample_target(f, setting.phi, a->element(s.point(double(i) / kSamples))),
                                 NormKind::kOperator));
      }
      // The sampled sup may undershoot the true sup slightly.
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double bound = sup / std::pow(s.radius(), double(k));
        if (norm(coeffs[k], NormKind::kOperator) > bound * (1.0 + 1e-6) + 1e-10) {
          out.cauchy_holds = false;
          std::ostringstream os;
          os << "Cauchy inequality fails for coefficient " << k;
          out.warnings.push_back(os.str());
        }
      }
    }
  }
  return out;
}

double goursat_residual(const FunctionSampler& f, const Element& a, const Element& b, const Element& c,
                        const Morphism& phi, QuadratureOptions options) {
  return integrate(f, Path::polyline({a, b, c}, true), phi, options).coords().norm();
}

HomologicalReport homological_cif_check(const FunctionSampler& f, const Cycle& c, const Element& z0,
                                        const Setting& setting, QuadratureOptions options) {
  const CifResult r = cif_value(f, c, z0, setting, options);
  HomologicalReport out{r.index, r.integral, 0.0, integrate(f, c, setting.phi, options), false};
  out.cif_residual = (sample_target(f, setting.phi, z0) * r.index - r.integral).coords().norm();
  out.index_zero = r.index.coords().norm() < 1e-8;
  return out;
}

}  // namespace holoalg
