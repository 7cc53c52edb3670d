#include "holoalg/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "holoalg/error.hpp"
#include "linalg.hpp"

namespace holoalg {

namespace {

constexpr double kKernelTol = 1e-9;
constexpr double kIdempotentTol = 1e-12;
constexpr double kOrderTol = 1e-8;

Element from_column(const AlgebraPtr& a, const Matrix& m, Eigen::Index c) {
  return a->element(m.col(c));
}

// Lexicographic descending on (re, im) of the coordinates, with tolerance.
bool precedes(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > kOrderTol) return a[i].real() > b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > kOrderTol) return a[i].imag() > b[i].imag();
  }
  return false;
}

Element lift_idempotent(Element e) {
  for (int it = 0; it < 200; ++it) {
    const Element e2 = e * e;
    if ((e2 - e).coords().norm() < kIdempotentTol) return e;
    const Element next = 3.0 * e2 - 2.0 * (e2 * e);
    if ((next - e).coords().norm() == 0.0) return e;
    e = next;
  }
  return e;
}

// Rounds coordinates that sit within 1e-12 of a multiple of 2^-20 when that
// does not increase the idempotent defect; removes the 1e-16 leakage between
// components for the common algebras with rational idempotents.
Element snap_idempotent(const Element& e) {
  const double grid = std::ldexp(1.0, 20);
  Vector v = e.coords();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = std::round(v[i].real() * grid) / grid, im = std::round(v[i].imag() * grid) / grid;
    if (std::abs(v[i] - cd(re, im)) < 1e-12) v[i] = cd(re, im);
  }
  const Element snapped = e.algebra()->element(v);
  auto defect = [](const Element& x) { return (x * x - x).coords().norm(); };
  return defect(snapped) <= defect(e) ? snapped : e;
}

}  // namespace

Matrix nilradical(const AlgebraPtr& algebra) {
  const std::size_t n = algebra->dim();
  const Matrix& kernel = algebra->nilradical();
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    const Element x = from_column(algebra, kernel, c);
    const Element xn = power(x, unsigned(n));
    if (xn.coords().norm() > 1e-8) {
      throw Error(ErrorKind::kClusteringAmbiguous, "trace-form kernel vector is not nilpotent");
    }
  }
  return kernel;
}

Decomposition artin_decompose(const AlgebraPtr& algebra, DecompositionOptions options) {
  const std::size_t n = algebra->dim();
  Decomposition d;
  d.algebra = algebra;
  d.nilradical = nilradical(algebra);
  const Eigen::Index rad = d.nilradical.cols();
  const Eigen::Index m = Eigen::Index(n) - rad;

  std::vector<Element> idem;
  if (m == 1) {
    idem.push_back(algebra->one());
  } else {
    // Orthogonal complement of the nilradical, identified with A / N.
    const Matrix& c = algebra->radical_complement();
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    bool separated = false;
    for (int attempt = 0; attempt < std::max(1, options.retries) && !separated; ++attempt) {
      Vector gc(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < gc.size(); ++i) gc[i] = cd(normal(rng), normal(rng));
      const Element g = algebra->element(gc);
      const Matrix q = c.adjoint() * algebra->regular(gc) * c;
      Eigen::ComplexEigenSolver<Matrix> es(q, false);
      const Vector mu = es.eigenvalues();
      double gap = std::numeric_limits<double>::infinity();
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = a + 1; b < m; ++b) gap = std::min(gap, std::abs(mu[a] - mu[b]));
      if (gap < options.separation) continue;
      separated = true;
      idem.clear();
      for (Eigen::Index k = 0; k < m; ++k) {
        Element e = algebra->one();
        for (Eigen::Index l = 0; l < m; ++l) {
          if (l == k) continue;
          e = e * (g.plus_scalar(-mu[l]) * (1.0 / (mu[k] - mu[l])));
        }
        idem.push_back(snap_idempotent(lift_idempotent(e)));
      }
    }
    if (!separated) {
      std::ostringstream os;
      os << "quotient eigenvalues of the generic element not separated by " << options.separation << " after "
         << options.retries << " attempts";
      throw Error(ErrorKind::kClusteringAmbiguous, os.str());
    }
    std::sort(idem.begin(), idem.end(),
              [](const Element& a, const Element& b) { return precedes(a.coords(), b.coords()); });
  }

  // Sanity: orthogonality and completeness.
  Element total = algebra->zero();
  for (std::size_t k = 0; k < idem.size(); ++k) {
    total += idem[k];
    for (std::size_t l = 0; l < idem.size(); ++l) {
      const Element p = idem[k] * idem[l];
      const double defect = (k == l ? (p - idem[k]) : p).coords().norm();
      if (defect > 1e-9) {
        throw Error(ErrorKind::kClusteringAmbiguous, "idempotent lifting did not converge");
      }
    }
  }
  if ((total - algebra->one()).coords().norm() > 1e-9) {
    throw Error(ErrorKind::kClusteringAmbiguous, "idempotents do not sum to the unit");
  }

  d.idempotents = idem;
  d.spectral_rows = Matrix::Zero(m, Eigen::Index(n));
  std::size_t total_dim = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Matrix lk = regular_representation(idem[std::size_t(k)]);
    d.component_bases.push_back(detail::column_space(lk, kKernelTol, 1.0));
    d.maximal_ideal_bases.push_back(detail::column_space(lk * d.nilradical, kKernelTol, 1.0));
    const Eigen::Index nk = d.component_bases.back().cols();
    if (d.maximal_ideal_bases.back().cols() != nk - 1) {
      throw Error(ErrorKind::kClusteringAmbiguous, "local factor has a residue field larger than C");
    }
    total_dim += std::size_t(nk);
    for (std::size_t j = 0; j < n; ++j) {
      d.spectral_rows(k, Eigen::Index(j)) = (algebra->basis_matrix(j) * lk).trace() / double(nk);
    }
  }
  if (total_dim != n) {
    throw Error(ErrorKind::kClusteringAmbiguous, "component dimensions do not add up");
  }
  return d;
}

cd spectral_value(const Decomposition& d, std::size_t k, const Element& z) {
  if (z.algebra() != d.algebra) throw Error(ErrorKind::kAlgebraMismatch, "element is not in the decomposed algebra");
  return (d.spectral_rows.row(Eigen::Index(k)) * z.coords())(0);
}

std::vector<cd> spectrum(const Element& z, const Decomposition& d) {
  std::vector<cd> out;
  for (std::size_t k = 0; k < d.count(); ++k) out.push_back(spectral_value(d, k, z));
  return out;
}

double spectrum_residual(const Element& z, const Decomposition& d) {
  const Matrix l = regular_representation(z);
  const double scale = std::max(1.0, l.norm());
  const Eigen::Index n = l.rows();
  double worst = 0.0;
  for (std::size_t k = 0; k < d.count(); ++k) {
    const std::size_t nk = d.component_dim(k);
    const Matrix shifted = l - spectral_value(d, k, z) * Matrix::Identity(n, n);
    Matrix p = regular_representation(d.idempotents[k]);
    for (std::size_t i = 0; i < nk; ++i) p = shifted * p;
    worst = std::max(worst, p.norm() / std::pow(scale, double(nk)));
  }
  return worst;
}

Element project(const Decomposition& d, std::size_t k, const Element& z) { return z * d.idempotents.at(k); }

double spectral_radius(const Element& z, const Decomposition& d) {
  double r = 0.0;
  for (const cd& s : spectrum(z, d)) r = std::max(r, std::abs(s));
  return r;
}

double norm(const Element& z, NormKind kind, const Decomposition& d) {
  if (kind != NormKind::kDirectSum) return norm(z, kind);
  const Matrix l = regular_representation(z);
  double r = 0.0;
  for (const Matrix& b : d.component_bases) r = std::max(r, detail::operator_norm(b.adjoint() * l * b));
  return r;
}

Element invert_by_components(const Element& z, const Decomposition& d) {
  if (!is_unit(z)) throw Error(ErrorKind::kNotAUnit, "element is not invertible");
  Element out = d.algebra->zero();
  for (std::size_t k = 0; k < d.count(); ++k) {
    const Element& ik = d.idempotents[k];
    const cd s = spectral_value(d, k, z);
    const Element x = z * ik - s * ik;
    const Element q = x * (-1.0 / s);
    Element term = ik;
    Element sum = ik;
    for (std::size_t j = 1; j < d.component_dim(k); ++j) {
      term = term * q;
      sum += term;
    }
    out += sum * (1.0 / s);
  }
  return out;
}

UnitCoordinates unit_group_coords(const Element& u, const Decomposition& d) {
  if (!is_unit(u)) throw Error(ErrorKind::kNotAUnit, "element is not invertible");
  UnitCoordinates out;
  for (std::size_t k = 0; k < d.count(); ++k) {
    const Element& ik = d.idempotents[k];
    const cd s = spectral_value(d, k, u);
    const Element y = (u * ik - s * ik) * (1.0 / s);
    Element term = ik;
    Element log = d.algebra->zero();
    for (std::size_t j = 1; j < d.component_dim(k) + 1; ++j) {
      term = term * y;
      log += term * (((j % 2) ? 1.0 : -1.0) / double(j));
    }
    out.scalars.push_back(s);
    out.logarithms.push_back(log);
  }
  return out;
}

Element unit_group_exp(const UnitCoordinates& coords, const Decomposition& d) {
  if (coords.scalars.size() != d.count() || coords.logarithms.size() != d.count()) {
    throw Error(ErrorKind::kInvalidArgument, "unit coordinates do not match the decomposition");
  }
  Element out = d.algebra->zero();
  for (std::size_t k = 0; k < d.count(); ++k) {
    const Element& ik = d.idempotents[k];
    Element term = ik;
    Element sum = ik;
    double fact = 1.0;
    for (std::size_t j = 1; j < d.component_dim(k) + 1; ++j) {
      fact *= double(j);
      term = term * coords.logarithms[k];
      sum += term * (1.0 / fact);
    }
    out += coords.scalars[k] * sum;
  }
  return out;
}

Profile profile(const Decomposition& d) {
  const AlgebraPtr& a = d.algebra;
  const Eigen::Index n = Eigen::Index(a->dim());
  Profile out;
  for (std::size_t k = 0; k < d.count(); ++k) {
    ComponentProfile cp;
    std::vector<Matrix> powers{d.maximal_ideal_bases[k]};
    const Matrix m1 = powers.front();
    while (powers.back().cols() > 0) {
      const Matrix prev = powers.back();
      Matrix products(n, m1.cols() * prev.cols());
      Eigen::Index c = 0;
      for (Eigen::Index y = 0; y < m1.cols(); ++y) {
        const Matrix ly = a->regular(m1.col(y));
        for (Eigen::Index p = 0; p < prev.cols(); ++p) products.col(c++) = ly * prev.col(p);
      }
      powers.push_back(detail::column_space(products, 1e-10, 1.0));
      if (powers.size() > std::size_t(n) + 1) break;
    }
    // powers[p-1] spans m^p; the last entry is zero.
    cp.height = powers.size();
    cp.filtering_basis = Matrix(n, Eigen::Index(d.component_dim(k)));
    cp.filtering_basis.col(0) = d.idempotents[k].coords();
    Eigen::Index col = 1;
    for (std::size_t p = 0; p + 1 < powers.size(); ++p) {
      const Matrix& cur = powers[p];
      const Matrix& next = powers[p + 1];
      const Matrix residual = cur - next * (next.adjoint() * cur);
      const Matrix layer = detail::column_space(residual, 1e-9, 1.0);
      const std::size_t width = std::size_t(cur.cols() - next.cols());
      if (std::size_t(layer.cols()) != width || col + layer.cols() > cp.filtering_basis.cols()) {
        throw Error(ErrorKind::kClusteringAmbiguous, "inconsistent filtration of the maximal ideal");
      }
      cp.widths.push_back(width);
      cp.filtering_basis.middleCols(col, layer.cols()) = layer;
      col += layer.cols();
    }
    out.components.push_back(std::move(cp));
  }
  return out;
}

ComponentAlgebra component_algebra(const Decomposition& d, const Profile& p, std::size_t k) {
  const ComponentProfile& cp = p.components.at(k);
  const Matrix& e = cp.filtering_basis;
  const Eigen::Index nk = e.cols();
  const Matrix pinv = detail::pseudo_inverse(e);
  std::vector<std::string> labels{"1"};
  for (std::size_t lvl = 0, idx = 1; lvl < cp.widths.size(); ++lvl)
    for (std::size_t w = 0; w < cp.widths[lvl]; ++w, ++idx)
      labels.push_back("m" + std::to_string(lvl + 1) + "_" + std::to_string(w + 1));
  StructureTensor t(std::size_t(nk), labels);
  for (Eigen::Index a = 0; a < nk; ++a) {
    const Matrix la = d.algebra->regular(e.col(a));
    for (Eigen::Index b = 0; b < nk; ++b) {
      const Vector prod = pinv * (la * e.col(b));
      for (Eigen::Index i = 0; i < nk; ++i) {
        cd v = prod[i];
        if (std::abs(v) < 1e-13) v = 0.0;
        t(std::size_t(a), std::size_t(b), std::size_t(i)) = v;
      }
    }
  }
  // Exact symmetrisation removes rounding asymmetry.
  for (Eigen::Index a = 0; a < nk; ++a)
    for (Eigen::Index b = a + 1; b < nk; ++b)
      for (Eigen::Index i = 0; i < nk; ++i) {
        const cd avg = 0.5 * (t(std::size_t(a), std::size_t(b), std::size_t(i)) +
                              t(std::size_t(b), std::size_t(a), std::size_t(i)));
        t(std::size_t(a), std::size_t(b), std::size_t(i)) = avg;
        t(std::size_t(b), std::size_t(a), std::size_t(i)) = avg;
      }
  ValidationOptions loose;
  loose.identity_tolerance = 1e-9;
  loose.unit_residual = 1e-9;
  ComponentAlgebra out;
  out.local = Algebra::build(std::move(t), d.algebra->name() + "[" + std::to_string(k + 1) + "]", loose);
  out.embedding = e;
  out.coordinates = pinv;
  out.height = cp.height;
  return out;
}

}  // namespace holoalg
