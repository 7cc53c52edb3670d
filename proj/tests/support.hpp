#pragma once

#include <random>

#include "holoalg/algebra.hpp"

namespace holoalg::testing {

inline double dist(const Element& a, const Element& b) { return (a.coords() - b.coords()).norm(); }

inline Element random_element(const AlgebraPtr& a, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Vector v(static_cast<Eigen::Index>(a->dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = scale * cd(nd(rng), nd(rng));
  return a->element(v);
}

// Commutative and unital but (x x) y = x != 0 = x (x y).
inline StructureTensor non_associative_tensor() {
  StructureTensor t(3, {"1", "x", "y"});
  for (std::size_t k = 0; k < 3; ++k) t(0, k, k) = t(k, 0, k) = 1.0;
  t(1, 1, 2) = 1.0;
  t(2, 2, 1) = 1.0;
  return t;
}

}  // namespace holoalg::testing

#include "holoalg/series.hpp"

namespace holoalg::testing {

inline Element dual(const AlgebraPtr& d, cd a, cd b) { return d->element(Vector{{a, b}}); }

// (1 + 2e) Z^3 + (-1 + e) Z^2 + (1 + 3e) over the dual numbers.
inline PowerSeries dual_cubic(const AlgebraPtr& d) {
  return PowerSeries(make_setting(Morphism::identity(d)), d->zero(),
                     CoefficientSequence::finite({dual(d, 1, 3), d->zero(), dual(d, -1, 1), dual(d, 1, 2)}));
}

// sum_k Z^k, valid to a large bound.
inline PowerSeries geometric(const AlgebraPtr& a, std::size_t bound = 200000) {
  return PowerSeries(make_setting(Morphism::identity(a)), a->zero(),
                     CoefficientSequence::rule([a](std::size_t) { return a->one(); }, bound));
}

}  // namespace holoalg::testing
