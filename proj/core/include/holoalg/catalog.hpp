#pragma once

// Standard small algebras used throughout the tools and tests.

#include "holoalg/algebra.hpp"

namespace holoalg::catalog {

// C itself, basis {1}.
AlgebraPtr complex_numbers();
// C[e]/(e^2), basis {1, e}.
AlgebraPtr dual_numbers();
// C[j]/(j^2 - 1), basis {1, j}.
AlgebraPtr split_complex();
// C[t]/(t^height), basis {1, t, ..., t^(height-1)}.
AlgebraPtr truncated_polynomial(std::size_t height);
// C (x) C presented on the real basis {1, i} with i^2 = -1.
AlgebraPtr complex_over_reals();
// Block-diagonal direct sum, basis (a_1..a_n, b_1..b_m).
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

StructureTensor dual_tensor();
StructureTensor split_complex_tensor();
StructureTensor truncated_polynomial_tensor(std::size_t height);

}  // namespace holoalg::catalog
