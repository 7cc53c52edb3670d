#include "holoalg/catalog.hpp"

namespace holoalg::catalog {

StructureTensor dual_tensor() {
  StructureTensor t(2, {"1", "e"});
  t(0, 0, 0) = 1.0;
  t(0, 1, 1) = t(1, 0, 1) = 1.0;
  return t;
}

StructureTensor split_complex_tensor() {
  StructureTensor t(2, {"1", "j"});
  t(0, 0, 0) = 1.0;
  t(0, 1, 1) = t(1, 0, 1) = 1.0;
  t(1, 1, 0) = 1.0;
  return t;
}

StructureTensor truncated_polynomial_tensor(std::size_t height) {
  std::vector<std::string> labels{"1"};
  for (std::size_t p = 1; p < height; ++p) labels.push_back(p == 1 ? "t" : "t^" + std::to_string(p));
  StructureTensor t(height, labels);
  for (std::size_t j = 0; j < height; ++j)
    for (std::size_t k = 0; k < height; ++k)
      if (j + k < height) t(j, k, j + k) = 1.0;
  return t;
}

AlgebraPtr complex_numbers() {
  StructureTensor t(1, {"1"});
  t(0, 0, 0) = 1.0;
  return Algebra::build(std::move(t), "C");
}

AlgebraPtr dual_numbers() { return Algebra::build(dual_tensor(), "dual"); }

AlgebraPtr split_complex() { return Algebra::build(split_complex_tensor(), "split-complex"); }

AlgebraPtr truncated_polynomial(std::size_t height) {
  return Algebra::build(truncated_polynomial_tensor(height), "C[t]/(t^" + std::to_string(height) + ")");
}

AlgebraPtr complex_over_reals() {
  StructureTensor t(2, {"1", "i"});
  t(0, 0, 0) = 1.0;
  t(0, 1, 1) = t(1, 0, 1) = 1.0;
  t(1, 1, 0) = -1.0;
  return Algebra::build(std::move(t), "C/R");
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  const std::size_t n = a->dim(), m = b->dim();
  std::vector<std::string> labels;
  for (const auto& l : a->tensor().labels()) labels.push_back(l + "(+)0");
  for (const auto& l : b->tensor().labels()) labels.push_back("0(+)" + l);
  StructureTensor t(n + m, labels);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) t(j, k, i) = a->tensor()(j, k, i);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i) t(n + j, n + k, n + i) = b->tensor()(j, k, i);
  return Algebra::build(std::move(t), a->name() + "(+)" + b->name());
}

}  // namespace holoalg::catalog
