// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holoalg/catalog.hpp"
#include "holoalg/contour.hpp"
#include "holoalg/cr_system.hpp"
#include "holoalg/decomposition.hpp"
#include "holoalg/series.hpp"

using namespace holoalg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures with a short reason each.
struct Checker {
  Outcome o;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      o.pass = false;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += what;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double dist(const Element& a, const Element& b) { return (a.coords() - b.coords()).norm(); }

Element dual(const AlgebraPtr& d, cd a, cd b) { return d->element(Vector{{a, b}}); }

Element random_element(const AlgebraPtr& a, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Vector v(static_cast<Eigen::Index>(a->dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = scale * cd(nd(rng), nd(rng));
  return a->element(v);
}

PowerSeries polynomial(const AlgebraPtr& a, std::vector<Element> coeffs) {
  return PowerSeries(make_setting(Morphism::identity(a)), a->zero(), CoefficientSequence::finite(std::move(coeffs)));
}

// (1 + 2e) Z^3 + (-1 + e) Z^2 + (1 + 3e).
PowerSeries cubic(const AlgebraPtr& d) {
  return polynomial(d, {dual(d, 1, 3), d->zero(), dual(d, -1, 1), dual(d, 1, 2)});
}

FunctionSampler sampler(const PowerSeries& p) {
  return FunctionSampler([p](const Element& z) { return evaluate_polynomial(p, z); });
}

Outcome check_structure_validation() {
  Checker c;
  for (const auto& t : {catalog::dual_tensor(), catalog::split_complex_tensor(), catalog::truncated_polynomial_tensor(3)}) {
    try {
      Algebra::build(t);
    } catch (const Error& e) {
      c.require(false, std::string("canonical tensor rejected: ") + e.what());
    }
  }
  // Split-complex with j^2 = 1 replaced by j^2 = j + 1 (unit rows untouched).
  StructureTensor t = catalog::split_complex_tensor();
  t(1, 1, 0) = 1.0;
  t(1, 1, 1) = 1.0;
  try {
    Algebra::build(t);
    c.require(false, "j^2 = j + 1 tensor was accepted (it is commutative, associative and unital)");
  } catch (const Error& e) {
    c.require(e.kind() == ErrorKind::kNotAssociative, std::string("wrong error: ") + e.what());
    c.require(std::string(e.what()).find("(i=") != std::string::npos, "no index quadruple in the message");
  }
  return c.o;
}

Outcome check_decomposition() {
  Checker c;
  const auto split = catalog::split_complex();
  const Decomposition ds = artin_decompose(split);
  c.require(ds.count() == 2, "split-complex components: " + std::to_string(ds.count()));
  if (ds.count() == 2) {
    const Element p = split->element(Vector{{0.5, 0.5}}), m = split->element(Vector{{0.5, -0.5}});
    const double e = std::min(std::max(dist(ds.idempotents[0], p), dist(ds.idempotents[1], m)),
                              std::max(dist(ds.idempotents[0], m), dist(ds.idempotents[1], p)));
    c.require(e < 1e-10, "idempotents off (1 +- j)/2 by " + fmt(e));
  }
  const auto d = catalog::dual_numbers();
  const Decomposition dd = artin_decompose(d);
  c.require(dd.count() == 1, "dual components: " + std::to_string(dd.count()));
  c.require(dd.nilradical.cols() == 1 && std::abs(std::abs(dd.nilradical(1, 0)) - 1.0) < 1e-10,
            "dual nilradical is not span{e}");
  for (const Decomposition* dec : {&ds, &dd}) {
    Element sum = dec->algebra->zero();
    for (std::size_t k = 0; k < dec->count(); ++k) {
      sum += dec->idempotents[k];
      for (std::size_t l = 0; l < dec->count(); ++l) {
        const Element expect = k == l ? dec->idempotents[k] : dec->algebra->zero();
        const double e = dist(dec->idempotents[k] * dec->idempotents[l], expect);
        c.require(e < 1e-10, "I_k I_l defect " + fmt(e));
      }
    }
    c.require(dist(sum, dec->algebra->one()) < 1e-10, "sum of idempotents is not 1");
  }
  return c.o;
}

bool same_terms(const std::vector<PDETerm>& a, const std::vector<PDETerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].component != b[i].component || a[i].direction != b[i].direction || a[i].coefficient != b[i].coefficient) {
      return false;
    }
  }
  return true;
}

bool same_system(const PDESystem& s, const std::vector<PDEEquation>& expected) {
  if (s.equations.size() != expected.size()) return false;
  for (std::size_t q = 0; q < expected.size(); ++q) {
    if (!same_terms(s.equations[q].lhs, expected[q].lhs) || !same_terms(s.equations[q].rhs, expected[q].rhs)) {
      return false;
    }
  }
  return true;
}

Outcome check_cr_generation() {
  Checker c;
  const auto dual_sys = gcru_system(Morphism::identity(catalog::dual_numbers()));
  const auto split_sys = gcru_system(Morphism::identity(catalog::split_complex()));
  const auto cr_sys = gcru_system(Morphism::identity(catalog::complex_over_reals()));
  // Equations listed as d f^i / d z^2 for i = 1, 2.
  c.require(same_system(dual_sys, {{{{1.0, 0, 1}}, {}}, {{{1.0, 1, 1}}, {{1.0, 0, 0}}}}), "dual system differs");
  c.require(same_system(split_sys, {{{{1.0, 0, 1}}, {{1.0, 1, 0}}}, {{{1.0, 1, 1}}, {{1.0, 0, 0}}}}),
            "split-complex system differs");
  c.require(same_system(cr_sys, {{{{1.0, 0, 1}}, {{-1.0, 1, 0}}}, {{{1.0, 1, 1}}, {{1.0, 0, 0}}}}),
            "classical Cauchy-Riemann system differs");
  Matrix gd(2, 2), gs(2, 2);
  gd << 0, 0, 1, 0;
  gs << 0, 1, 1, 0;
  c.require(dual_sys.gammas[1] == gd, "dual Gamma_2 differs");
  c.require(split_sys.gammas[1] == gs, "split-complex Gamma_2 differs");
  return c.o;
}

Outcome check_holomorphy_detection() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const auto phi = Morphism::identity(d);
  const auto f = sampler(cubic(d));
  std::mt19937_64 rng(0);
  double worst = 0.0, lo = 1.0, hi = 0.0;
  for (int q = 0; q < 10; ++q) {
    const Element z = random_element(d, rng);
    worst = std::max(worst, gcru_residual(f, phi, z, 1e-4));
    const double ratio = residual_halving_ratio(f, phi, z, 1e-4);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  c.require(worst < 1e-6, "max residual " + fmt(worst));
  c.require(lo >= 0.15 && hi <= 0.45, "halving ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  const FunctionSampler conj([](const Element& z) { return z.algebra()->element(z.coords().conjugate()); });
  const Element z = dual(d, 0.3, -0.4);
  c.require(verdict(gcru_residual(conj, phi, z, 1e-4), 1e-4) == HolomorphyVerdict::kNonHolomorphic,
            "coordinate conjugation not flagged");
  std::ostringstream os;
  os << "max residual " << worst << ", ratios [" << lo << ", " << hi << "]";
  if (c.o.pass) c.o.detail = os.str();
  return c.o;
}

Outcome check_jacobian_consistency() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const auto phi = Morphism::identity(d);
  const auto f = sampler(polynomial(d, {d->zero(), d->zero(), d->one()}));
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int q = 0; q < 10; ++q) worst = std::max(worst, jacobian_consistency(f, phi, random_element(d, rng), 1e-4));
  c.require(worst < 1e-6, "max residual " + fmt(worst));
  if (c.o.pass) c.o.detail = "max residual " + fmt(worst);
  return c.o;
}

Path ellipse(const Element& center, double a, double b) {
  constexpr int kCount = 400;
  std::vector<Element> pts;
  for (int i = 0; i <= kCount; ++i) {
    const double t = 2.0 * std::numbers::pi * (i % kCount) / kCount;
    pts.push_back(center + cd(a * std::cos(t), b * std::sin(t)) * center.algebra()->one());
  }
  return Path::samples(std::move(pts), true);
}

Path square(const Element& center, double h) {
  const Element& one = center.algebra()->one();
  return Path::polyline(
      {center + cd(-h, -h) * one, center + cd(h, -h) * one, center + cd(h, h) * one, center + cd(-h, h) * one}, true);
}

Outcome check_index_agreement() {
  Checker c;
  double worst = 0.0;
  int points = 0;
  for (const auto& a : {catalog::dual_numbers(), catalog::split_complex()}) {
    const Setting s = make_setting(Morphism::identity(a));
    const Element center = a->element(Vector::Constant(Eigen::Index(a->dim()), cd(0.1, -0.2)));
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (const Path& p : {Path::circle(center, 1.5), ellipse(center, 2.0, 1.0), square(center, 1.2)}) {
      const Cycle cyc(p);
      for (int found = 0; found < 20;) {
        Vector v(Eigen::Index(a->dim()));
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cd(u(rng), u(rng));
        const Element z = a->element(v);
        if (!admissibility(cyc, z, s).admissible) continue;
        ++found;
        ++points;
        const Element spec = index_spectral(cyc, z, s);
        const Element quad = index_quadrature(cyc, z, s.phi);
        worst = std::max(worst, (spec.coords() - quad.coords()).cwiseAbs().maxCoeff());
        if (a->dim() == 2 && a->name() == "dual") {
          const Element shifted = z + cd(u(rng), u(rng)) * a->basis(1);
          c.require(index_spectral(cyc, shifted, s).coords() == spec.coords(), "spectral index moved under a nilpotent shift");
        }
      }
    }
  }
  c.require(worst < 1e-8, "max |quadrature - spectral| = " + fmt(worst));
  if (c.o.pass) c.o.detail = std::to_string(points) + " points, max difference " + fmt(worst);
  return c.o;
}

Outcome check_cif_reproduction() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const Setting s = make_setting(Morphism::identity(d));
  const auto f = sampler(cubic(d));
  const Cycle circle(Path::circle(d->zero(), 1.0));
  const double e0 = dist(solve(cif_value(f, circle, d->zero(), s), s), dual(d, 1, 3));
  const double e3 = dist((1.0 / 6.0) * solve(cif_derivative(f, circle, d->zero(), 3, s), s), dual(d, 1, 2));
  c.require(e0 < 1e-8, "f(0) off by " + fmt(e0));
  c.require(e3 < 1e-8, "f'''(0)/3! off by " + fmt(e3));
  const TaylorResult t = taylor_from_contour(f, circle, d->zero(), 3, s);
  const std::vector<Element> expected = {dual(d, 1, 3), d->zero(), dual(d, -1, 1), dual(d, 1, 2)};
  double et = 0.0;
  for (std::size_t k = 0; k < 4; ++k) et = std::max(et, dist(t.series.coefficients().at(k), expected[k]));
  c.require(et < 1e-8, "Taylor coefficients off by " + fmt(et));
  c.require(t.cauchy_holds, "Cauchy inequality post-check failed");
  return c.o;
}

Outcome check_radius_and_divergence() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const PowerSeries g(make_setting(Morphism::identity(d)), d->zero(),
                      CoefficientSequence::rule([d](std::size_t) { return d->one(); }, 200000));
  for (double w : {1.0, 1e3, 1e6}) {
    const Element z = dual(d, 0.5, w);
    const SeriesValue v = evaluate(g, z);
    const bool ok = v.status == SeriesStatus::kConverged && v.value &&
                    dist(*v.value, invert(d->one() - z)) <= 1e-10 * std::max(1.0, v.value->coords().norm());
    c.require(ok, "geometric series at 1/2 + " + fmt(w) + "e");
  }
  c.require(evaluate(g, dual(d, 2.0, 0.0)).status == SeriesStatus::kDivergent, "z = 2 not Divergent");

  const auto sp = catalog::split_complex();
  const Element j1 = sp->element(Vector{{0.5, 0.5}}), j2 = sp->element(Vector{{0.5, -0.5}});
  const PowerSeries two(make_setting(Morphism::identity(sp)), sp->zero(),
                        CoefficientSequence::rule(
                            [j1, j2](std::size_t k) {
                              return std::pow(2.0, -double(k)) * j1 + std::pow(3.0, -double(k)) * j2;
                            },
                            2000));
  const double r = two.radius().radius;
  c.require(std::abs(r - 2.0) <= 0.05 * 2.0, "two-component radius " + fmt(r));
  if (c.o.pass) c.o.detail = "R = " + fmt(r);
  return c.o;
}

Outcome check_canonical_form() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const Setting s = make_setting(Morphism::identity(d));
  const ScalarSeries exp_g{0.0, CoefficientSequence::rule(
                                    [d](std::size_t k) { return (1.0 / std::tgamma(double(k) + 1.0)) * d->one(); }, 400)};
  const CanonicalForm g = canonical_form(exp_g, s);
  double worst = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      const cd z(-2.0 + 4.0 * a / 9.0, -2.0 + 4.0 * b / 9.0);
      const cd w(1.5 - 0.5 * b, 0.25 * a);
      const Element val = g(dual(d, z, w));
      worst = std::max(worst, dist(val, dual(d, std::exp(z), std::exp(z) * w)) / std::abs(std::exp(z)));
    }
  c.require(worst < 1e-10, "canonical form off by " + fmt(worst));
  const FunctionSampler fg([g](const Element& z) { return g(z); });
  const Element z0 = dual(d, cd(0.3, -0.6), cd(2.0, 1.0));
  const double h = default_step(z0);
  c.require(verdict(dij_residual(fg, s.phi, z0, h), h) == HolomorphyVerdict::kHolomorphic, "d_ij residual test failed");

  const PowerSeries sq = polynomial(d, {d->zero(), d->zero(), d->one()});
  const Element z = dual(d, cd(0.7, 0.2), cd(-1.0, 0.5));
  const double e = dist(nilpotent_derivative(sq, z, d->basis(1)), 2.0 * z + d->basis(1));
  c.require(e < 1e-10, "nilpotent derivative off by " + fmt(e));
  if (c.o.pass) c.o.detail = "max relative error " + fmt(worst);
  return c.o;
}

Outcome check_homological_check() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const Setting s = make_setting(Morphism::identity(d));
  const auto f = sampler(cubic(d));
  const Path g1 = Path::circle(d->zero(), 1.0);
  const Path g2 = g1.translated(d->basis(1));
  const HomologicalReport r = homological_cif_check(f, Cycle({{1, g1}, {-1, g2}}), d->zero(), s);
  const double plain = r.plain_integral.coords().norm();
  const double single = cif_value(f, Cycle(g1), d->zero(), s).integral.coords().norm();
  c.require(r.index_zero, "index of gamma_1 - gamma_2 is not zero");
  c.require(plain < 1e-9, "|int_Gamma f dW| = " + fmt(plain));
  c.require(single > 1e-3, "int_gamma1 f / (W - Z0) vanishes");
  if (c.o.pass) c.o.detail = "|int_Gamma f dW| = " + fmt(plain) + ", |gamma_1 alone| = " + fmt(single);
  return c.o;
}

Outcome check_regular_inversion() {
  Checker c;
  const auto d = catalog::dual_numbers();
  const Element eps = d->basis(1);
  const PowerSeries p = polynomial(d, {d->zero(), d->one(), eps});
  std::mt19937_64 rng(11);
  double worst = 0.0, round = 0.0;
  for (int q = 0; q < 20; ++q) {
    const Element w = random_element(d, rng);
    const NewtonResult r = newton_invert_map(p, w, w);
    worst = std::max(worst, dist(r.solution, w - eps * w * w));
    round = std::max(round, dist(evaluate_polynomial(p, r.solution), w));
  }
  c.require(worst < 1e-10, "inverse off by " + fmt(worst));
  c.require(round < 1e-10, "round trip off by " + fmt(round));
  return c.o;
}

Outcome check_structure_recovery() {
  Checker c;
  for (const auto& a : {catalog::dual_numbers(), catalog::split_complex(), catalog::truncated_polynomial(3)}) {
    std::mt19937_64 rng(5);
    std::vector<RecoverySample> samples;
    for (std::size_t t = 0; t < a->dim(); ++t) {
      const Element z = random_element(a, rng);
      RecoverySample s;
      s.derivative = z.coords();  // f'(Z) = Z for f = Z^2 / 2
      for (std::size_t j = 0; j < a->dim(); ++j) s.partials.push_back((z * a->basis(j)).coords());
      samples.push_back(std::move(s));
    }
    const double e = recover_structure(samples).max_abs_difference(a->tensor());
    c.require(e < 1e-10, a->name() + " tensor off by " + fmt(e));
  }
  return c.o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "structure validation", 1.0, check_structure_validation},
      {2, "decomposition", 1.0, check_decomposition},
      {3, "CR generation", 0.0, check_cr_generation},
      {4, "holomorphy detection", 1.0, check_holomorphy_detection},
      {5, "Jacobian consistency", 0.0, check_jacobian_consistency},
      {6, "index agreement", 0.0, check_index_agreement},
      {7, "CIF reproduction", 2.0, check_cif_reproduction},
      {8, "radius and divergence", 0.0, check_radius_and_divergence},
      {9, "canonical form", 0.0, check_canonical_form},
      {10, "homological check", 0.0, check_homological_check},
      {11, "regular-map inversion", 0.0, check_regular_inversion},
      {12, "structure recovery", 0.0, check_structure_recovery},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget > 0.0 && secs > cr.budget) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("runtime ") + fmt(secs) + " s over " + fmt(cr.budget) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-24s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
