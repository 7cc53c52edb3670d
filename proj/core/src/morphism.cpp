#include "holoalg/morphism.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "holoalg/error.hpp"

namespace holoalg {

namespace {

constexpr double kDichotomyTol = 1e-8;

}  // namespace

Morphism::Morphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  for (std::size_t j = 0; j < source_->dim(); ++j) gamma_.push_back(target_->regular(matrix_.col(Eigen::Index(j))));
}

Morphism Morphism::build(AlgebraPtr source, AlgebraPtr target, Matrix matrix, double tolerance) {
  if (!source || !target) throw Error(ErrorKind::kInvalidArgument, "morphism needs source and target algebras");
  const auto n = Eigen::Index(source->dim()), m = Eigen::Index(target->dim());
  if (matrix.rows() != m || matrix.cols() != n) {
    std::ostringstream os;
    os << "matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected " << m << "x" << n;
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
  const double unit_defect = (matrix * source->unit_coords() - target->unit_coords()).cwiseAbs().maxCoeff();
  if (unit_defect > tolerance) {
    std::ostringstream os;
    os << "phi(1) differs from 1 by " << unit_defect;
    throw Error(ErrorKind::kNotUnital, os.str());
  }
  double worst = 0.0;
  Eigen::Index wj = 0, wk = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      Vector prod(n);
      for (Eigen::Index i = 0; i < n; ++i) prod[i] = source->tensor()(std::size_t(j), std::size_t(k), std::size_t(i));
      const Vector lhs = matrix * prod;
      const Vector rhs = target->multiply(matrix.col(j), matrix.col(k));
      const double defect = (lhs - rhs).cwiseAbs().maxCoeff();
      if (defect > worst) {
        worst = defect;
        wj = j;
        wk = k;
      }
    }
  }
  if (worst > tolerance) {
    std::ostringstream os;
    os << "phi(a_" << wj + 1 << " a_" << wk + 1 << ") != phi(a_" << wj + 1 << ") phi(a_" << wk + 1 << "), defect "
       << worst;
    throw Error(ErrorKind::kNotMultiplicative, os.str());
  }
  return Morphism(std::move(source), std::move(target), std::move(matrix));
}

Morphism Morphism::identity(const AlgebraPtr& algebra) {
  const auto n = Eigen::Index(algebra->dim());
  return Morphism(algebra, algebra, Matrix::Identity(n, n));
}

Element Morphism::operator()(const Element& a) const {
  if (a.algebra() != source_) throw Error(ErrorKind::kAlgebraMismatch, "element is not in the morphism's source");
  return target_->element(matrix_ * a.coords());
}

bool Morphism::is_identity() const {
  return source_ == target_ && matrix_.isIdentity(0.0);
}

Morphism compose(const Morphism& phi, const Morphism& psi) {
  if (phi.target() != psi.source()) {
    throw Error(ErrorKind::kAlgebraMismatch, "target of the first morphism is not the source of the second");
  }
  return Morphism::build(phi.source(), psi.target(), psi.matrix() * phi.matrix(), 1e-10);
}

double gamma_identity_defect(const Morphism& phi) {
  const auto& a = phi.source()->tensor();
  const std::size_t n = phi.source()->dim(), m = phi.target()->dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          cd lhs = 0.0, rhs = 0.0;
          for (std::size_t r = 0; r < n; ++r) lhs += phi.gamma(r, l, i) * a(j, k, r);
          for (std::size_t s = 0; s < m; ++s) rhs += phi.gamma(j, s, i) * phi.gamma(k, l, s);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

double gamma_beta_defect(const Morphism& phi) {
  const auto& b = phi.target()->tensor();
  const std::size_t n = phi.source()->dim(), m = phi.target()->dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          cd lhs = 0.0, rhs = 0.0;
          for (std::size_t r = 0; r < m; ++r) {
            lhs += b(r, l, i) * phi.gamma(j, k, r);
            rhs += phi.gamma(j, r, i) * b(k, l, r);
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

Factorization factor(const Morphism& phi, const Decomposition& source, const Decomposition& target) {
  if (source.algebra != phi.source() || target.algebra != phi.target()) {
    throw Error(ErrorKind::kAlgebraMismatch, "decompositions do not belong to the morphism's algebras");
  }
  Factorization f;
  f.target_algebra = phi.target();
  const Profile ps = profile(source), pt = profile(target);
  for (std::size_t k = 0; k < source.count(); ++k) f.source_components.push_back(component_algebra(source, ps, k));
  for (std::size_t l = 0; l < target.count(); ++l) f.target_components.push_back(component_algebra(target, pt, l));

  for (std::size_t l = 0; l < target.count(); ++l) {
    const Element& jl = target.idempotents[l];
    std::vector<std::size_t> ones;
    for (std::size_t k = 0; k < source.count(); ++k) {
      const Element p = phi(source.idempotents[k]) * jl;
      const double to_one = (p - jl).coords().norm();
      const double to_zero = p.coords().norm();
      if (to_one < kDichotomyTol) {
        ones.push_back(k);
      } else if (to_zero >= kDichotomyTol) {
        std::ostringstream os;
        os << "phi(I_" << k + 1 << ") J_" << l + 1 << " is neither 0 nor J_" << l + 1 << " (distances " << to_zero
           << ", " << to_one << ")";
        throw Error(ErrorKind::kNotDetermined, os.str());
      }
    }
    if (ones.size() != 1) {
      std::ostringstream os;
      os << "target component " << l + 1 << " is matched by " << ones.size() << " source components";
      throw Error(ErrorKind::kNotDetermined, os.str());
    }
    const std::size_t k = ones.front();
    f.tau.push_back(k);
    const ComponentAlgebra& src = f.source_components[k];
    const ComponentAlgebra& dst = f.target_components[l];
    const Matrix image = regular_representation(jl) * phi.matrix() * src.embedding;
    f.local_parts.push_back(Morphism::build(src.local, dst.local, dst.coordinates * image, 1e-9));
  }
  return f;
}

Element reconstruct(const Factorization& f, const Element& z) {
  if (!f.target_algebra) throw Error(ErrorKind::kInvalidArgument, "empty factorization");
  Vector out = Vector::Zero(Eigen::Index(f.target_algebra->dim()));
  for (std::size_t l = 0; l < f.tau.size(); ++l) {
    const ComponentAlgebra& src = f.source_components[f.tau[l]];
    const ComponentAlgebra& dst = f.target_components[l];
    // The first filtering vector of A_k is I_k.
    const Vector local = src.coordinates * z.algebra()->multiply(z.coords(), src.embedding.col(0));
    out += dst.embedding * (f.local_parts[l].matrix() * local);
  }
  return f.target_algebra->element(out);
}

std::vector<std::size_t> Setting::heights() const {
  std::vector<std::size_t> h;
  for (std::size_t l = 0; l < factorization.tau.size(); ++l) {
    h.push_back(std::min(source_profile.components[factorization.tau[l]].height, target_profile.components[l].height));
  }
  return h;
}

std::vector<std::size_t> Setting::active_components() const {
  std::set<std::size_t> s(factorization.tau.begin(), factorization.tau.end());
  return {s.begin(), s.end()};
}

Setting make_setting(const Morphism& phi, std::uint64_t seed) {
  DecompositionOptions opts;
  opts.seed = seed;
  Decomposition ds = artin_decompose(phi.source(), opts);
  Decomposition dt = phi.source() == phi.target() ? ds : artin_decompose(phi.target(), opts);
  Profile ps = profile(ds), pt = profile(dt);
  Factorization f = factor(phi, ds, dt);
  return Setting{phi, std::move(ds), std::move(dt), std::move(ps), std::move(pt), std::move(f)};
}

}  // namespace holoalg
