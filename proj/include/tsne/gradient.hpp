#pragma once

#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

namespace tsne {

// KL divergence sum_{i != j} p log(p/q) with both factors floored at 1e-12
// inside the logs only; p == 0 terms contribute exactly 0. The stored
// matrices are never floored.
double safe_kl_cost(const Matrix& p, const Matrix& q);
double safe_kl_cost(const ProbabilityMatrix& p, const ProbabilityMatrix& q);

// Analytic cost gradients with respect to the embedding positions. p and q
// are affinity values with zero diagonals; the expected normalization per
// method matches what the corresponding pipeline produces (conditional p and
// per-row q for grad_sne, joint-symmetric elsewhere). Shapes are checked,
// normalization discipline is the caller's contract.
//
//   grad_sne:          2 sum_j (p_ij - q_ij + p_ji - q_ji) (y_i - y_j)
//   grad_symmetric_sne 4 sum_j (p_ij - q_ij) (y_i - y_j)
//   grad_tsne:         4 sum_j (p_ij - q_ij) (1 + z_ij^2)^-1 (y_i - y_j)
//   grad_tsne_general: ((2 dof + 2)/dof) sum_j (p_ij - q_ij)
//                          (1 + z_ij^2/dof)^-1 (y_i - y_j)
Matrix grad_sne(const Matrix& embedding, const Matrix& p, const Matrix& q);
Matrix grad_symmetric_sne(const Matrix& embedding, const Matrix& p, const Matrix& q);
Matrix grad_tsne(const Matrix& embedding, const Matrix& p, const Matrix& q);
Matrix grad_tsne_general(const Matrix& embedding, const Matrix& p, const Matrix& q, int dof);

// Derivative of the cost with respect to the degrees of freedom (treated as
// continuous):
//   sum_{i != j} (-(1+dof) z^2 / (2 dof^2 (1 + z^2/dof))
//                 + log(1 + z^2/dof) / 2) (p_ij - q_ij)
double grad_dof(const Matrix& embedding, const Matrix& p, const Matrix& q, int dof);

// Dispatch on the variant (dof taken from VariantSpec::dof for TsneGeneralDof).
Matrix gradient(const Matrix& embedding, const Matrix& p, const Matrix& q,
                const VariantSpec& variant);

} // namespace tsne
