#pragma once

// Adaptive composite Gauss-Legendre quadrature (16 nodes) for vector-valued
// integrands on a real interval.

#include <functional>

#include "holoalg/algebra.hpp"

namespace holoalg {

struct QuadratureOptions {
  // Absolute, per coordinate. Defaults to 1e-10 or $HOLOALG_TOL when set.
  double tolerance = 0.0;
  int max_depth = 20;
};

// 1e-10 unless HOLOALG_TOL holds a positive number.
double default_quadrature_tolerance();

// Integrates F over [a, b], halving intervals until the one-panel and the
// two-panel estimates agree. Throws Error{kQuadratureNoConvergence}.
Vector gauss_legendre(const std::function<Vector(double)>& f, double a, double b, QuadratureOptions options = {});

}  // namespace holoalg
