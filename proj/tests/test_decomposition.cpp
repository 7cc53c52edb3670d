#include <random>

#include "doctest.h"
#include "holoalg/catalog.hpp"
#include "holoalg/decomposition.hpp"
#include "holoalg/error.hpp"
#include "support.hpp"

using namespace holoalg;
using holoalg::testing::dist;
using holoalg::testing::random_element;

namespace {

// C[x, y] / (x^2, y^2), basis {1, x, y, xy}.
AlgebraPtr bidual() {
  StructureTensor t(4, {"1", "x", "y", "xy"});
  for (std::size_t k = 0; k < 4; ++k) t(0, k, k) = t(k, 0, k) = 1.0;
  t(1, 2, 3) = t(2, 1, 3) = 1.0;
  return Algebra::build(t, "bidual");
}

// C[x, y] / (x, y)^2, basis {1, x, y}.
AlgebraPtr square_zero(std::size_t width) {
  StructureTensor t(width + 1, std::vector<std::string>(width + 1, "m"));
  for (std::size_t k = 0; k <= width; ++k) t(0, k, k) = t(k, 0, k) = 1.0;
  return Algebra::build(t, "square-zero");
}

AlgebraPtr mixed() {
  return catalog::direct_sum(catalog::direct_sum(catalog::truncated_polynomial(3), catalog::split_complex()),
                             catalog::dual_numbers());
}

void check_invariants(const Decomposition& d) {
  const AlgebraPtr& a = d.algebra;
  Element total = a->zero();
  std::size_t dims = 0;
  for (std::size_t k = 0; k < d.count(); ++k) {
    total += d.idempotents[k];
    dims += d.component_dim(k);
    for (std::size_t l = 0; l < d.count(); ++l) {
      const Element p = d.idempotents[k] * d.idempotents[l];
      CHECK(dist(p, k == l ? d.idempotents[k] : a->zero()) < 1e-10);
    }
  }
  CHECK(dist(total, a->one()) < 1e-10);
  CHECK(dims == a->dim());
}

}  // namespace

TEST_CASE("nilradical dimensions") {
  CHECK(nilradical(catalog::complex_numbers()).cols() == 0);
  CHECK(nilradical(catalog::dual_numbers()).cols() == 1);
  CHECK(nilradical(catalog::split_complex()).cols() == 0);
  CHECK(nilradical(catalog::truncated_polynomial(5)).cols() == 4);
  CHECK(nilradical(bidual()).cols() == 3);
  CHECK(nilradical(mixed()).cols() == 3);
}

TEST_CASE("split-complex idempotents are (1 +- j) / 2 in a fixed order") {
  const auto a = catalog::split_complex();
  const Decomposition d = artin_decompose(a);
  REQUIRE(d.count() == 2);
  check_invariants(d);
  CHECK(std::abs(d.idempotents[0][0] - 0.5) < 1e-12);
  CHECK(std::abs(d.idempotents[0][1] - 0.5) < 1e-12);
  CHECK(std::abs(d.idempotents[1][1] + 0.5) < 1e-12);
  const Element z = a->element(Vector{{cd(2, 1), cd(0.5, -1)}});
  const auto s = spectrum(z, d);
  CHECK(std::abs(s[0] - (z[0] + z[1])) < 1e-12);
  CHECK(std::abs(s[1] - (z[0] - z[1])) < 1e-12);
}

TEST_CASE("decomposition is independent of the seed") {
  const auto a = mixed();
  const Decomposition d0 = artin_decompose(a, {0});
  const Decomposition d1 = artin_decompose(a, {12345});
  REQUIRE(d0.count() == 4);
  REQUIRE(d1.count() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(dist(d0.idempotents[k], d1.idempotents[k]) < 1e-10);
  check_invariants(d0);
}

TEST_CASE("sigma_k is a character and agrees with the eigenvalues") {
  std::mt19937_64 rng(19);
  for (const auto& a : {mixed(), bidual(), catalog::truncated_polynomial(4), catalog::complex_over_reals()}) {
    const Decomposition d = artin_decompose(a);
    check_invariants(d);
    for (int trial = 0; trial < 10; ++trial) {
      const Element x = random_element(a, rng), y = random_element(a, rng);
      const auto sx = spectrum(x, d), sy = spectrum(y, d), sxy = spectrum(x * y, d);
      for (std::size_t k = 0; k < d.count(); ++k) {
        CHECK(std::abs(sxy[k] - sx[k] * sy[k]) < 1e-10 * (1 + std::abs(sxy[k])));
        CHECK(std::abs(spectral_value(d, k, a->one()) - 1.0) < 1e-12);
        // x - sigma_k(x) is nilpotent on the k-th factor.
        Element r = project(d, k, x.plus_scalar(-sx[k]));
        CHECK(power(r, unsigned(d.component_dim(k))).coords().norm() < 1e-9);
      }
      CHECK(spectrum_residual(x, d) < 1e-10);
    }
  }
}

TEST_CASE("semisimple spectra match the eigensolver") {
  std::mt19937_64 rng(23);
  const auto a = catalog::direct_sum(catalog::split_complex(), catalog::complex_over_reals());
  const Decomposition d = artin_decompose(a);
  REQUIRE(d.count() == 4);
  for (int trial = 0; trial < 5; ++trial) {
    const Element x = random_element(a, rng);
    Eigen::ComplexEigenSolver<Matrix> es(regular_representation(x), false);
    for (const cd& s : spectrum(x, d)) {
      double best = 1e300;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::min(best, std::abs(es.eigenvalues()[i] - s));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("profiles: heights and widths") {
  auto prof = [](const AlgebraPtr& a) { return profile(artin_decompose(a)).components; };
  {
    const auto p = prof(catalog::truncated_polynomial(4));
    REQUIRE(p.size() == 1);
    CHECK(p[0].height == 4);
    CHECK(p[0].widths == std::vector<std::size_t>{1, 1, 1});
  }
  {
    const auto p = prof(bidual());
    CHECK(p[0].height == 3);
    CHECK(p[0].widths == std::vector<std::size_t>{2, 1});
  }
  {
    const auto p = prof(square_zero(3));
    CHECK(p[0].height == 2);
    CHECK(p[0].widths == std::vector<std::size_t>{3});
  }
  {
    const auto p = prof(catalog::split_complex());
    REQUIRE(p.size() == 2);
    CHECK(p[0].height == 1);
    CHECK(p[0].widths.empty());
  }
  {
    const Decomposition d = artin_decompose(mixed());
    const auto p = profile(d).components;
    std::size_t widths = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::size_t sum = 1;
      for (auto w : p[k].widths) sum += w;
      CHECK(sum == d.component_dim(k));
      CHECK(p[k].height <= d.component_dim(k));
      widths += sum;
    }
    CHECK(widths == 7);
  }
}

TEST_CASE("component algebras are local with the filtration basis") {
  const Decomposition d = artin_decompose(mixed());
  const Profile p = profile(d);
  for (std::size_t k = 0; k < d.count(); ++k) {
    const ComponentAlgebra c = component_algebra(d, p, k);
    CHECK(c.local->dim() == d.component_dim(k));
    CHECK(std::abs(c.local->unit_coords()[0] - 1.0) < 1e-9);
    CHECK(c.local->unit_coords().tail(c.local->dim() - 1).norm() < 1e-9);
    CHECK(nilradical(c.local).cols() == Eigen::Index(c.local->dim() - 1));
    CHECK(c.height == p.components[k].height);
  }
}

TEST_CASE("direct-sum norm") {
  std::mt19937_64 rng(29);
  const auto a = mixed();
  const Decomposition d = artin_decompose(a);
  CHECK(norm(a->one(), NormKind::kDirectSum, d) == doctest::Approx(1.0).epsilon(1e-12));
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = random_element(a, rng), y = random_element(a, rng);
    CHECK(norm(x * y, NormKind::kDirectSum, d) <=
          norm(x, NormKind::kDirectSum, d) * norm(y, NormKind::kDirectSum, d) * (1 + 1e-12));
    CHECK(spectral_radius(x, d) <= norm(x, NormKind::kDirectSum, d) * (1 + 1e-12));
    CHECK(spectral_radius(x, d) == doctest::Approx(spectral_radius(x)).epsilon(1e-6));
  }
}

TEST_CASE("inverse by components and unit-group coordinates") {
  std::mt19937_64 rng(31);
  const auto a = mixed();
  const Decomposition d = artin_decompose(a);
  for (int trial = 0; trial < 10; ++trial) {
    const Element u = random_element(a, rng).plus_scalar(0.1);
    const Element inv = invert_by_components(u, d);
    CHECK(dist(inv, invert(u)) < 1e-9 * (1 + inv.coords().norm()));
    const UnitCoordinates c = unit_group_coords(u, d);
    CHECK(dist(unit_group_exp(c, d), u) < 1e-9 * (1 + u.coords().norm()));
    for (std::size_t k = 0; k < d.count(); ++k) CHECK(std::abs(spectral_value(d, k, c.logarithms[k])) < 1e-10);
  }
  CHECK_THROWS_AS(invert_by_components(a->basis(1), d), Error);
}

TEST_CASE("unit-group coordinates turn products into sums") {
  std::mt19937_64 rng(37);
  const auto a = bidual();
  const Decomposition d = artin_decompose(a);
  const Element u = random_element(a, rng).plus_scalar(2.0), v = random_element(a, rng).plus_scalar(2.0);
  const auto cu = unit_group_coords(u, d), cv = unit_group_coords(v, d), cuv = unit_group_coords(u * v, d);
  CHECK(std::abs(cuv.scalars[0] - cu.scalars[0] * cv.scalars[0]) < 1e-10);
  CHECK(dist(cuv.logarithms[0], cu.logarithms[0] + cv.logarithms[0]) < 1e-10);
}
