#include <random>

#include "doctest.h"
#include "holoalg/algebra.hpp"
#include "holoalg/catalog.hpp"
#include "holoalg/error.hpp"
#include "support.hpp"

using namespace holoalg;
using holoalg::testing::dist;
using holoalg::testing::random_element;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kInvalidArgument;
}

// Product in C[t]/(t^n) by truncated convolution.
Vector convolve(const Vector& a, const Vector& b) {
  const Eigen::Index n = a.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("validation accepts the standard algebras and finds the unit") {
  for (const auto& a : {catalog::complex_numbers(), catalog::dual_numbers(), catalog::split_complex(),
                        catalog::truncated_polynomial(4), catalog::complex_over_reals()}) {
    CHECK(a->unit_coords().isApprox(a->basis(0).coords()));
  }
}

TEST_CASE("validation reports the violated identity") {
  StructureTensor nc = catalog::dual_tensor();
  nc(1, 1, 0) = 1.0;
  nc(0, 1, 1) = 2.0;
  CHECK(kind_of([&] { Algebra::build(nc); }) == ErrorKind::kNotCommutative);

  CHECK(kind_of([&] { Algebra::build(holoalg::testing::non_associative_tensor()); }) ==
        ErrorKind::kNotAssociative);
  try {
    Algebra::build(holoalg::testing::non_associative_tensor());
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("i=") != std::string::npos);
  }

  StructureTensor zero(2, {"a", "b"});
  CHECK(kind_of([&] { Algebra::build(zero); }) == ErrorKind::kNoUnit);
}

TEST_CASE("unit need not be the first basis vector") {
  // Dual numbers on the basis {1 + e, e}.
  Matrix change(2, 2);
  change << 1, 0, 1, 1;
  const auto a = Algebra::build(catalog::dual_tensor().rebased(change), "dual'");
  CHECK(std::abs(a->unit_coords()[0] - 1.0) < 1e-14);
  CHECK(std::abs(a->unit_coords()[1] + 1.0) < 1e-14);
  CHECK(a->unit_pivot() == 0);
}

TEST_CASE("truncated polynomial product matches convolution") {
  std::mt19937_64 rng(3);
  const auto a = catalog::truncated_polynomial(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = random_element(a, rng), y = random_element(a, rng);
    CHECK(((x * y).coords() - convolve(x.coords(), y.coords())).norm() < 1e-12);
  }
}

TEST_CASE("split-complex product matches C (+) C under x + y j -> (x + y, x - y)") {
  std::mt19937_64 rng(5);
  const auto a = catalog::split_complex();
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = random_element(a, rng), y = random_element(a, rng);
    const Element p = x * y;
    CHECK(std::abs((p[0] + p[1]) - (x[0] + x[1]) * (y[0] + y[1])) < 1e-12);
    CHECK(std::abs((p[0] - p[1]) - (x[0] - x[1]) * (y[0] - y[1])) < 1e-12);
  }
}

TEST_CASE("ring axioms hold on random elements") {
  std::mt19937_64 rng(7);
  for (const auto& a : {catalog::truncated_polynomial(3), catalog::split_complex(),
                        catalog::direct_sum(catalog::dual_numbers(), catalog::complex_numbers())}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Element x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
      CHECK(dist(x * y, y * x) < 1e-12);
      CHECK(dist((x * y) * z, x * (y * z)) < 1e-12);
      CHECK(dist(x * (y + z), x * y + x * z) < 1e-12);
      CHECK(dist(a->one() * x, x) < 1e-12);
      CHECK((regular_representation(x * y) - regular_representation(x) * regular_representation(y)).norm() <
            1e-11);
    }
  }
}

TEST_CASE("mixing algebras is rejected") {
  const auto a = catalog::dual_numbers();
  const auto b = catalog::dual_numbers();
  CHECK(kind_of([&] { (void)(a->one() * b->one()); }) == ErrorKind::kAlgebraMismatch);
}

TEST_CASE("inversion") {
  std::mt19937_64 rng(11);
  const auto a = catalog::truncated_polynomial(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Element x = random_element(a, rng).plus_scalar(3.0);
    CHECK(dist(x * invert(x), a->one()) < 1e-11);
  }
  CHECK_FALSE(is_unit(a->basis(1)));
  CHECK(kind_of([&] { invert(a->basis(1)); }) == ErrorKind::kNotAUnit);
}

TEST_CASE("spectral radius of a Jordan-type element") {
  const auto a = catalog::truncated_polynomial(6);
  const Element z = a->basis(1).plus_scalar(cd(0.3, 0.4));
  CHECK(spectral_radius(z) == doctest::Approx(0.5).epsilon(1e-10));
  const auto s = catalog::split_complex();
  CHECK(spectral_radius(s->basis(1).plus_scalar(2.0)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("norms are normalised and submultiplicative") {
  std::mt19937_64 rng(13);
  const auto a = catalog::truncated_polynomial(3);
  CHECK(norm(a->one(), NormKind::kOperator) == doctest::Approx(1.0));
  CHECK(kind_of([&] { norm(a->one(), NormKind::kDirectSum); }) == ErrorKind::kDecompositionRequired);
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = random_element(a, rng), y = random_element(a, rng);
    for (NormKind k : {NormKind::kFrobenius, NormKind::kOperator}) {
      CHECK(norm(x * y, k) <= norm(x, k) * norm(y, k) * (1 + 1e-12));
      CHECK(spectral_radius(x) <= norm(x, k) * (1 + 1e-12));
    }
  }
}

TEST_CASE("rebasing preserves the product") {
  std::mt19937_64 rng(17);
  const auto a = catalog::truncated_polynomial(3);
  Matrix change = Matrix::Random(3, 3) + 3.0 * Matrix::Identity(3, 3);
  const auto b = Algebra::build(a->tensor().rebased(change), "rebased");
  for (int trial = 0; trial < 5; ++trial) {
    const Element x = random_element(b, rng), y = random_element(b, rng);
    const Vector lhs = change * (x * y).coords();
    const Vector rhs = a->multiply(change * x.coords(), change * y.coords());
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}
