#include <random>

#include "doctest.h"
#include "holoalg/catalog.hpp"
#include "holoalg/error.hpp"
#include "holoalg/morphism.hpp"
#include "support.hpp"

using namespace holoalg;
using holoalg::testing::dist;
using holoalg::testing::random_element;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<cd>> rows) {
  Matrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const cd& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvalidArgument;
}

AlgebraPtr c2() { return catalog::direct_sum(catalog::complex_numbers(), catalog::complex_numbers()); }

}  // namespace

TEST_CASE("identity morphism has gamma = alpha") {
  for (const auto& a : {catalog::dual_numbers(), catalog::split_complex(), catalog::truncated_polynomial(3)}) {
    const Morphism id = Morphism::identity(a);
    for (std::size_t j = 0; j < a->dim(); ++j)
      for (std::size_t k = 0; k < a->dim(); ++k)
        for (std::size_t i = 0; i < a->dim(); ++i) CHECK(id.gamma(j, k, i) == a->tensor()(j, k, i));
    CHECK(gamma_identity_defect(id) < 1e-14);
    CHECK(gamma_beta_defect(id) < 1e-14);
  }
}

TEST_CASE("scalar part of the dual numbers") {
  const auto d = catalog::dual_numbers();
  const auto c = catalog::complex_numbers();
  const Morphism sigma = Morphism::build(d, c, mat({{1, 0}}));
  CHECK(sigma.gamma(0, 0, 0) == cd(1));
  CHECK(sigma.gamma(1, 0, 0) == cd(0));
  CHECK(gamma_identity_defect(sigma) < 1e-14);
  CHECK(gamma_beta_defect(sigma) < 1e-14);
}

TEST_CASE("invalid morphisms are rejected") {
  const auto s = catalog::split_complex();
  const auto d = catalog::dual_numbers();
  CHECK(kind_of([&] { Morphism::build(s, d, mat({{1, 0}, {0, 1}})); }) == ErrorKind::kNotMultiplicative);
  CHECK(kind_of([&] { Morphism::build(d, d, mat({{2, 0}, {0, 1}})); }) == ErrorKind::kNotUnital);
  CHECK(kind_of([&] { Morphism::build(d, d, mat({{1, 0}})); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("gamma identities on a non-identity morphism") {
  // t -> e from C[t]/(t^3) to the dual numbers, and t -> t + t^2 on C[t]/(t^3).
  const auto t3 = catalog::truncated_polynomial(3);
  const auto d = catalog::dual_numbers();
  const Morphism phi = Morphism::build(t3, d, mat({{1, 0, 0}, {0, 1, 0}}));
  CHECK(gamma_identity_defect(phi) < 1e-14);
  CHECK(gamma_beta_defect(phi) < 1e-14);
  const Morphism psi = Morphism::build(t3, t3, mat({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}));
  CHECK(gamma_identity_defect(psi) < 1e-14);
  CHECK(gamma_beta_defect(psi) < 1e-14);
}

TEST_CASE("factorization examples") {
  const auto a = c2();
  const auto c = catalog::complex_numbers();
  {
    const Setting s = make_setting(Morphism::build(a, c, mat({{1, 0}})));
    REQUIRE(s.factorization.tau.size() == 1);
    // (1, 0) is ordered first among the idempotents of C (+) C.
    CHECK(s.factorization.tau[0] == 0);
    CHECK(s.factorization.local_parts[0].matrix().isApprox(Matrix::Identity(1, 1)));
  }
  {
    const Setting s = make_setting(Morphism::build(c, a, mat({{1}, {1}})));
    CHECK(s.factorization.tau == std::vector<std::size_t>{0, 0});
  }
  {
    const auto d = catalog::dual_numbers();
    const Setting s = make_setting(Morphism::build(d, c, mat({{1, 0}})));
    CHECK(s.factorization.tau == std::vector<std::size_t>{0});
    CHECK(s.factorization.local_parts[0].matrix().isApprox(mat({{1, 0}})));
    CHECK(s.heights() == std::vector<std::size_t>{1});
  }
}

TEST_CASE("factorization reconstructs phi and maps maximal ideals into maximal ideals") {
  std::mt19937_64 rng(41);
  const auto d = catalog::dual_numbers();
  const auto src = catalog::direct_sum(catalog::truncated_polynomial(3), catalog::split_complex());
  // A = C[t]/(t^3) (+) C (+) C  ->  B = D (+) C (+) D:
  // t -> (e, 0, 0), first split factor -> third slot.
  const auto dst = catalog::direct_sum(catalog::direct_sum(d, catalog::complex_numbers()), d);
  // Split basis {1, j}; idempotents (1 +- j)/2. Send (1 + j)/2 to the middle C
  // and (1 - j)/2 to the last D, plus C[t]/(t^3) -> first D with t -> e.
  Matrix m = Matrix::Zero(5, 5);
  m(0, 0) = 1;                                   // 1_t3 -> (1, 0, 0)
  m(1, 1) = 1;                                   // t -> e
  m(2, 3) = 1;                                   // 1_split -> (0, 1, 1)
  m(3, 3) = 1;
  m(2, 4) = 1;                                   // j -> (0, 1, -1)
  m(3, 4) = -1;
  const Morphism phi = Morphism::build(src, dst, m);
  const Setting s = make_setting(phi);
  REQUIRE(s.factorization.tau.size() == 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Element z = random_element(src, rng);
    CHECK(dist(reconstruct(s.factorization, z), phi(z)) < 1e-10);
  }
  for (std::size_t l = 0; l < 3; ++l) {
    const Morphism& local = s.factorization.local_parts[l];
    const Decomposition dl = artin_decompose(local.target());
    for (std::size_t c = 1; c < local.source()->dim(); ++c) {
      CHECK(std::abs(spectral_value(dl, 0, local(local.source()->basis(c)))) < 1e-10);
    }
  }
  CHECK(s.heights() == std::vector<std::size_t>{2, 1, 1});
}

TEST_CASE("composition") {
  const auto d = catalog::dual_numbers();
  const auto c = catalog::complex_numbers();
  const Morphism id = Morphism::identity(d);
  CHECK(compose(id, id).is_identity());
  const Morphism incl = Morphism::build(c, d, mat({{1}, {0}}));
  const Morphism sigma = Morphism::build(d, c, mat({{1, 0}}));
  CHECK(compose(incl, sigma).matrix().isApprox(Matrix::Identity(1, 1)));
  CHECK(kind_of([&] { compose(sigma, sigma); }) == ErrorKind::kAlgebraMismatch);

  const auto c3 = catalog::direct_sum(c2(), c);
  const Morphism p12 = Morphism::build(c3, c2(), mat({{1, 0, 0}, {0, 1, 0}}));
  const Morphism p1 = Morphism::build(p12.target(), c, mat({{0, 1}}));
  const Morphism p = compose(p12, p1);
  const Setting s = make_setting(p);
  CHECK(s.factorization.tau == std::vector<std::size_t>{1});
}
