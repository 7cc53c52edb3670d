#include "holoalg/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

namespace holoalg {

namespace {

constexpr int kNodes = 16;

struct Rule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
};

// Newton iteration on P_16 from the Chebyshev guesses.
Rule make_rule() {
  Rule r;
  for (int i = 0; i < kNodes; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kNodes + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= kNodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kNodes * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[std::size_t(i)] = x;
    r.w[std::size_t(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

struct Panel {
  Vector value;
  double magnitude = 0.0;  // approximates the integral of max_i |F_i|, the roundoff scale
};

Panel panel(const std::function<Vector(double)>& f, double a, double b) {
  const Rule& r = rule();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Panel p;
  for (int i = 0; i < kNodes; ++i) {
    const Vector v = f(mid + half * r.x[std::size_t(i)]);
    p.value = i == 0 ? Vector(r.w[0] * v) : Vector(p.value + r.w[std::size_t(i)] * v);
    p.magnitude += r.w[std::size_t(i)] * v.cwiseAbs().maxCoeff();
  }
  p.value *= half;
  p.magnitude *= std::abs(half);
  return p;
}

// SCALE estimates the integral of |F| over the whole interval (a peak the
// coarse panels missed raises it on the way down): below
// 64 eps * SCALE two estimates cannot be told apart in double precision.
Vector adapt(const std::function<Vector(double)>& f, double a, double b, const Vector& whole, double tol, double scale,
             int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const Panel lp = panel(f, a, m), rp = panel(f, m, b);
  const Vector& left = lp.value;
  const Vector& right = rp.value;
  const Vector both = left + right;
  const double diff = (both - whole).cwiseAbs().maxCoeff();
  scale = std::max(scale, lp.magnitude + rp.magnitude);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if (diff < std::max(tol, floor)) return both;
  if (depth >= max_depth) {
    std::ostringstream os;
    os << "no convergence on [" << a << ", " << b << "] at depth " << depth << " (difference " << diff << ")";
    throw Error(ErrorKind::kQuadratureNoConvergence, os.str());
  }
  return adapt(f, a, m, left, tol / 2.0, scale, depth + 1, max_depth) +
         adapt(f, m, b, right, tol / 2.0, scale, depth + 1, max_depth);
}

}  // namespace

double default_quadrature_tolerance() {
  if (const char* env = std::getenv("HOLOALG_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-10;
}

Vector gauss_legendre(const std::function<Vector(double)>& f, double a, double b, QuadratureOptions options) {
  const double tol = options.tolerance > 0.0 ? options.tolerance : default_quadrature_tolerance();
  const Panel whole = panel(f, a, b);
  if (!whole.value.allFinite()) throw Error(ErrorKind::kQuadratureNoConvergence, "integrand is not finite");
  return adapt(f, a, b, whole.value, tol, whole.magnitude, 0, options.max_depth);
}

}  // namespace holoalg
