#include "holoalg/cr_system.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "holoalg/error.hpp"

namespace holoalg {

namespace {

constexpr double kTermTol = 1e-14;
const cd kI(0.0, 1.0);

using TermKey = std::pair<std::size_t, std::size_t>;  // (component, direction)

std::vector<PDETerm> collect(const std::map<TermKey, cd>& terms) {
  std::vector<PDETerm> out;
  for (const auto& [key, c] : terms)
    if (std::abs(c) > kTermTol) out.push_back({c, key.first, key.second});
  return out;
}

Element checked_sample(const FunctionSampler& f, const Morphism& phi, const Element& z) {
  Element out = f(z);
  if (out.algebra() != phi.target()) throw Error(ErrorKind::kAlgebraMismatch, "sampler output is not in phi's target");
  return out;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

// "" for 1, "-" for -1, otherwise a number followed by `sep`.
std::string coefficient_prefix(cd c, bool& negative, const std::string& sep) {
  negative = false;
  if (std::abs(c.imag()) <= kTermTol) {
    double r = c.real();
    if (r < 0) {
      negative = true;
      r = -r;
    }
    if (std::abs(r - 1.0) <= kTermTol) return "";
    return format_number(r) + sep;
  }
  if (std::abs(c.real()) <= kTermTol) {
    double im = c.imag();
    if (im < 0) {
      negative = true;
      im = -im;
    }
    if (std::abs(im - 1.0) <= kTermTol) return "i" + sep;
    return format_number(im) + "i" + sep;
  }
  std::ostringstream os;
  os << "(" << format_number(c.real()) << (c.imag() < 0 ? " - " : " + ") << format_number(std::abs(c.imag())) << "i)"
     << sep;
  return os.str();
}

std::string render_side(const std::vector<PDETerm>& terms, bool latex) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const PDETerm& t : terms) {
    bool negative = false;
    const std::string prefix = coefficient_prefix(t.coefficient, negative, latex ? " " : "*");
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += prefix;
    if (latex) {
      out += "\\frac{\\partial f^{" + std::to_string(t.component + 1) + "}}{\\partial z^{" +
             std::to_string(t.direction + 1) + "}}";
    } else {
      out += "df" + std::to_string(t.component + 1) + "/dz" + std::to_string(t.direction + 1);
    }
  }
  return out;
}

std::vector<std::string> default_labels(const AlgebraPtr& a) {
  std::vector<std::string> labels = a->tensor().labels();
  if (labels.size() != a->dim()) {
    labels.clear();
    for (std::size_t j = 0; j < a->dim(); ++j) labels.push_back("a" + std::to_string(j + 1));
  }
  return labels;
}

PDESystem base_system(const Morphism& phi, PDEForm form) {
  PDESystem s;
  s.form = form;
  s.source_dim = phi.source()->dim();
  s.target_dim = phi.target()->dim();
  s.source_labels = default_labels(phi.source());
  const auto n = Eigen::Index(s.source_dim);
  s.change_of_basis = Matrix::Identity(n, n);
  for (std::size_t j = 0; j < s.source_dim; ++j) s.gammas.push_back(phi.gamma_matrix(j));
  return s;
}

}  // namespace

FunctionSampler::FunctionSampler(Fn fn, std::string region) : fn_(std::move(fn)), region_(std::move(region)) {}

Element FunctionSampler::operator()(const Element& z) const {
  std::optional<Element> out;
  try {
    out = fn_(z);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kSamplerFailure, e.what());
  }
  if (!out->coords().allFinite()) throw Error(ErrorKind::kSamplerFailure, "sampler returned a non-finite value");
  return *out;
}

std::string_view to_string(PDEForm form) {
  switch (form) {
    case PDEForm::kGCRU: return "GCRU";
    case PDEForm::kGUCR: return "GUCR";
    case PDEForm::kGCRS: return "GCRS";
  }
  return "?";
}

Matrix unit_first_basis(const AlgebraPtr& algebra) {
  const auto n = Eigen::Index(algebra->dim());
  Matrix c = Matrix::Identity(n, n);
  const Vector& u = algebra->unit_coords();
  Vector e1 = Vector::Zero(n);
  e1[0] = 1.0;
  if ((u - e1).cwiseAbs().maxCoeff() <= 1e-12) return c;
  const auto p = Eigen::Index(algebra->unit_pivot());
  c.col(0) = u;
  Eigen::Index col = 1;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == p) continue;
    c.col(col++) = Vector::Unit(n, j);
  }
  return c;
}

PDESystem gcru_system(const Morphism& phi) {
  PDESystem s = base_system(phi, PDEForm::kGCRU);
  const Matrix c = unit_first_basis(phi.source());
  if (!c.isIdentity(0.0)) {
    s.rebased = true;
    s.change_of_basis = c;
    const auto old = default_labels(phi.source());
    const std::size_t p = phi.source()->unit_pivot();
    s.source_labels = {"1"};
    for (std::size_t j = 0; j < old.size(); ++j)
      if (j != p) s.source_labels.push_back(old[j]);
    s.gammas.clear();
    for (Eigen::Index j = 0; j < c.cols(); ++j) s.gammas.push_back(phi.target()->regular(phi.matrix() * c.col(j)));
  }
  for (std::size_t j = 1; j < s.source_dim; ++j) {
    for (std::size_t i = 0; i < s.target_dim; ++i) {
      std::map<TermKey, cd> rhs;
      for (std::size_t k = 0; k < s.target_dim; ++k) rhs[{k, 0}] += s.gammas[j](Eigen::Index(i), Eigen::Index(k));
      s.equations.push_back({{{1.0, i, j}}, collect(rhs)});
    }
  }
  return s;
}

PDESystem gucr_system(const Morphism& phi) {
  PDESystem s = base_system(phi, PDEForm::kGUCR);
  const Vector& eps = phi.source()->unit_coords();
  for (std::size_t j = 0; j < s.source_dim; ++j) {
    for (std::size_t i = 0; i < s.target_dim; ++i) {
      std::map<TermKey, cd> rhs;
      for (std::size_t r = 0; r < s.source_dim; ++r) {
        if (std::abs(eps[Eigen::Index(r)]) <= kTermTol) continue;
        for (std::size_t k = 0; k < s.target_dim; ++k)
          rhs[{k, r}] += eps[Eigen::Index(r)] * phi.gamma(j, k, i);
      }
      std::map<TermKey, cd> diff = rhs;
      diff[{i, j}] -= 1.0;
      if (collect(diff).empty()) continue;
      s.equations.push_back({{{1.0, i, j}}, collect(rhs)});
    }
  }
  return s;
}

PDESystem gcrs_system(const Morphism& phi) {
  PDESystem s = base_system(phi, PDEForm::kGCRS);
  const auto& alpha = phi.source()->tensor();
  for (std::size_t j = 0; j < s.source_dim; ++j) {
    for (std::size_t k = 0; k < s.source_dim; ++k) {
      for (std::size_t i = 0; i < s.target_dim; ++i) {
        std::map<TermKey, cd> lhs, rhs, diff;
        for (std::size_t r = 0; r < s.source_dim; ++r) {
          lhs[{i, r}] += alpha(j, k, r);
          diff[{i, r}] += alpha(j, k, r);
        }
        for (std::size_t q = 0; q < s.target_dim; ++q) {
          rhs[{q, k}] += phi.gamma(j, q, i);
          diff[{q, k}] -= phi.gamma(j, q, i);
        }
        if (collect(diff).empty()) continue;
        s.equations.push_back({collect(lhs), collect(rhs)});
      }
    }
  }
  return s;
}

std::string render_text(const PDESystem& system) {
  std::ostringstream os;
  os << to_string(system.form) << " system, " << system.equations.size() << " equations";
  if (system.rebased) {
    os << " (basis";
    for (const auto& l : system.source_labels) os << " " << l;
    os << ")";
  }
  os << "\n";
  for (const auto& e : system.equations) os << "  " << render_side(e.lhs, false) << " = " << render_side(e.rhs, false) << "\n";
  return os.str();
}

std::string render_latex(const PDESystem& system) {
  std::ostringstream os;
  os << "\\begin{aligned}\n";
  for (std::size_t q = 0; q < system.equations.size(); ++q) {
    const auto& e = system.equations[q];
    os << "  " << render_side(e.lhs, true) << " &= " << render_side(e.rhs, true);
    if (q + 1 < system.equations.size()) os << " \\\\";
    os << "\n";
  }
  os << "\\end{aligned}\n";
  return os.str();
}

double default_step(const Element& z) {
  return 1e-5 * (1.0 + z.coords().norm());
}

Element directional_derivative(const FunctionSampler& f, const Element& z, const Vector& direction, double h) {
  const Element dz = z.algebra()->element(h * direction);
  const Element d = f(z + dz) - f(z - dz);
  return d.algebra()->element(d.coords() / (2.0 * h));
}

double antiholomorphic_residual(const FunctionSampler& f, const Element& z, double h) {
  const auto n = Eigen::Index(z.dim());
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector e = Vector::Unit(n, j);
    const Vector dx = directional_derivative(f, z, e, h).coords();
    const Vector dy = directional_derivative(f, z, kI * e, h).coords();
    worst = std::max(worst, (0.5 * (dx + kI * dy)).cwiseAbs().maxCoeff());
  }
  return worst;
}

double gcru_residual(const FunctionSampler& f, const Morphism& phi, const Element& z, double h) {
  if (z.algebra() != phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in phi's source");
  checked_sample(f, phi, z);
  const Matrix c = unit_first_basis(phi.source());
  const Vector p1 = directional_derivative(f, z, c.col(0), h).coords();
  double worst = 0.0;
  for (Eigen::Index j = 1; j < c.cols(); ++j) {
    const Vector pj = directional_derivative(f, z, c.col(j), h).coords();
    const Vector predicted = phi.target()->multiply(phi.matrix() * c.col(j), p1);
    worst = std::max(worst, (pj - predicted).cwiseAbs().maxCoeff());
  }
  return std::max(worst, antiholomorphic_residual(f, z, h));
}

double residual_halving_ratio(const FunctionSampler& f, const Morphism& phi, const Element& z, double h) {
  const double full = gcru_residual(f, phi, z, h);
  const double half = gcru_residual(f, phi, z, h / 2.0);
  return full == 0.0 ? 0.0 : half / full;
}

Element numeric_derivative(const FunctionSampler& f, const Morphism& phi, const Element& z, double h) {
  if (z.algebra() != phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in phi's source");
  Element d = directional_derivative(f, z, phi.source()->unit_coords(), h);
  if (d.algebra() != phi.target()) throw Error(ErrorKind::kAlgebraMismatch, "sampler output is not in phi's target");
  return d;
}

double jacobian_consistency(const FunctionSampler& f, const Morphism& phi, const Element& z, double h) {
  if (phi.source() != phi.target()) {
    throw Error(ErrorKind::kNonSquare, "Jacobian consistency needs an endomorphism");
  }
  const auto n = Eigen::Index(phi.source()->dim());
  const Element fp = numeric_derivative(f, phi, z, h);
  Matrix jac(n, n), jbar(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector e = Vector::Unit(n, j);
    const Vector dx = directional_derivative(f, z, e, h).coords();
    const Vector dy = directional_derivative(f, z, kI * e, h).coords();
    jac.col(j) = dx;
    jbar.col(j) = 0.5 * (dx + kI * dy);
  }
  const Matrix diff = regular_representation(fp) * phi.matrix() - jac;
  return std::sqrt(diff.squaredNorm() + jbar.squaredNorm());
}

double dij_residual(const FunctionSampler& f, const Morphism& phi, const Element& z, double h) {
  if (z.algebra() != phi.source()) throw Error(ErrorKind::kAlgebraMismatch, "point is not in phi's source");
  checked_sample(f, phi, z);
  const auto n = Eigen::Index(phi.source()->dim());
  std::vector<Vector> partials;
  for (Eigen::Index j = 0; j < n; ++j) partials.push_back(directional_derivative(f, z, Vector::Unit(n, j), h).coords());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Vector d = phi.target()->multiply(phi.matrix().col(i), partials[std::size_t(j)]) -
                       phi.target()->multiply(phi.matrix().col(j), partials[std::size_t(i)]);
      worst = std::max(worst, d.norm());
    }
  return std::max(worst, antiholomorphic_residual(f, z, h));
}

std::string_view to_string(HolomorphyVerdict verdict) {
  switch (verdict) {
    case HolomorphyVerdict::kHolomorphic: return "holomorphic";
    case HolomorphyVerdict::kNonHolomorphic: return "non-holomorphic";
    case HolomorphyVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

HolomorphyVerdict verdict(double residual, double h) {
  if (residual < 100.0 * h * h) return HolomorphyVerdict::kHolomorphic;
  if (residual > 1e-2) return HolomorphyVerdict::kNonHolomorphic;
  return HolomorphyVerdict::kInconclusive;
}

std::vector<RecoverySample> sample_for_recovery(const CoordinateMap& f, const CoordinateMap& derivative,
                                                const std::vector<Vector>& points, double h) {
  std::vector<RecoverySample> out;
  for (const Vector& z : points) {
    RecoverySample s;
    s.derivative = derivative(z);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      const Vector e = h * Vector::Unit(z.size(), j);
      s.partials.push_back((f(z + e) - f(z - e)) / (2.0 * h));
    }
    out.push_back(std::move(s));
  }
  return out;
}

StructureTensor recover_structure(const std::vector<RecoverySample>& samples, std::vector<std::string> labels) {
  const std::size_t n = samples.size();
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "no samples");
  for (const auto& s : samples) {
    if (std::size_t(s.derivative.size()) != n || s.partials.size() != n) {
      throw Error(ErrorKind::kInvalidArgument, "need n samples of an n-dimensional function");
    }
    for (const auto& p : s.partials)
      if (std::size_t(p.size()) != n) throw Error(ErrorKind::kInvalidArgument, "partial has the wrong dimension");
  }
  const auto N = Eigen::Index(n);
  // G(k, t) = f'(Z_t)^k.
  Matrix g(N, N);
  for (Eigen::Index t = 0; t < N; ++t) g.col(t) = samples[std::size_t(t)].derivative;
  const auto lu = g.fullPivLu();
  const Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  if (sv[0] == 0.0 || sv[N - 1] / sv[0] < 1e-12) {
    throw Error(ErrorKind::kRankDeficient, "derivative samples are linearly dependent");
  }
  const cd det = lu.determinant();
  StructureTensor t(n, std::move(labels));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector rhs(N);
      for (Eigen::Index q = 0; q < N; ++q) rhs[q] = samples[std::size_t(q)].partials[j][Eigen::Index(i)];
      for (std::size_t k = 0; k < n; ++k) {
        Matrix gk = g;
        gk.row(Eigen::Index(k)) = rhs.transpose();
        t(j, k, i) = gk.fullPivLu().determinant() / det;
      }
    }
  try {
    ValidationOptions opts;
    opts.identity_tolerance = 1e-8;
    opts.unit_residual = 1e-8;
    Algebra::build(t, "recovered", opts);
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvalidRecovered, e.what());
  }
  return t;
}

NewtonResult newton_invert_map(const PowerSeries& p, const Element& w, const Element& guess, NewtonOptions options) {
  const Morphism& phi = p.phi();
  if (phi.source() != phi.target()) throw Error(ErrorKind::kInvalidArgument, "Newton inversion needs an endomorphism");
  if (!p.coefficients().is_finite()) throw Error(ErrorKind::kInvalidArgument, "Newton inversion needs a polynomial");
  if (w.algebra() != phi.target() || guess.algebra() != phi.source()) {
    throw Error(ErrorKind::kAlgebraMismatch, "target value or initial guess in the wrong algebra");
  }
  const auto phi_lu = phi.matrix().fullPivLu();
  if (!phi_lu.isInvertible()) throw Error(ErrorKind::kInvalidArgument, "phi is not invertible");
  const PowerSeries dp = derive(p);
  NewtonResult result{guess, 0, 0.0, {}};

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const auto n = Eigen::Index(phi.source()->dim());
  std::vector<cd> dets;
  for (int q = 0; q < 3; ++q) {
    Vector c(n);
    for (Eigen::Index i = 0; i < n; ++i) c[i] = cd(normal(rng), normal(rng));
    const Element d = evaluate_polynomial(dp, phi.source()->element(c));
    dets.push_back((regular_representation(d) * phi.matrix()).determinant());
  }
  const double scale = std::max(1.0, std::abs(dets[0]));
  for (std::size_t q = 1; q < dets.size(); ++q) {
    if (std::abs(dets[q] - dets[0]) > 1e-8 * scale) {
      result.warnings.push_back("Jacobian determinant is not constant; Newton may converge to a different preimage");
      break;
    }
  }

  Element z = guess;
  for (int step = 0; step <= options.max_steps; ++step) {
    const Element r = evaluate_polynomial(p, z) - w;
    result.residual = r.coords().norm();
    result.steps = step;
    if (!std::isfinite(result.residual)) break;
    if (result.residual <= options.tolerance) {
      result.solution = z;
      return result;
    }
    if (step == options.max_steps) break;
    const Element d = evaluate_polynomial(dp, z);
    if (!is_unit(d)) {
      std::ostringstream os;
      os << "P'(Z) is not a unit after " << step << " steps";
      throw Error(ErrorKind::kSingularDerivative, os.str());
    }
    const Vector delta = phi_lu.solve((invert(d) * r).coords());
    z = z - phi.source()->element(delta);
  }
  std::ostringstream os;
  os << "residual " << result.residual << " after " << result.steps << " steps";
  throw Error(ErrorKind::kNoConvergence, os.str());
}

}  // namespace holoalg
