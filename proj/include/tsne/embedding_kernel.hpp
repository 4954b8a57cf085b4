#pragma once

#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

namespace tsne {

// All-pairs squared distances between embedding points (zero diagonal,
// mirrored, so symmetric bit for bit).
Matrix embedding_sq_distances(const Matrix& embedding);

// Low-dimensional affinities q for the given method:
//   Sne            exp(-z^2), each row normalized on its own  -> joint-asymmetric
//   SymmetricSne   exp(-z^2), one global normalizer           -> joint-symmetric
//   Tsne           1/(1 + z^2), global normalizer             -> joint-symmetric
//   TsneGeneralDof (1 + z^2/dof)^(-(dof+1)/2), global         -> joint-symmetric
// The general-dof normalizer is the plain off-diagonal sum of kernel values;
// no closed-form prefactor is ever evaluated. dof == 1 takes the exact Tsne
// code path, so the two agree bit for bit.
ProbabilityMatrix embedding_affinities(const Matrix& embedding, const VariantSpec& variant);

} // namespace tsne
