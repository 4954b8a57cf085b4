#pragma once

#include "tsne/input_affinity.hpp"
#include "tsne/matrix.hpp"
#include "tsne/rng.hpp"
#include "tsne/types.hpp"

namespace tsne {

// Momentum schedule: momentum_initial below momentum_switch_iter, then
// momentum_late. (Whether momentum is applied at all is use_momentum,
// which step() consults separately.)
double momentum(int iter, const OptimizerConfig& cfg);

// i.i.d. Gaussian positions with standard deviation 1e-2, drawn row-major
// from the given stream.
Matrix init_embedding(std::size_t n, std::size_t dims, Pcg32& rng);
Matrix init_embedding(std::size_t n, std::size_t dims, std::uint64_t seed);

struct OptimizerState {
    Matrix y;      // current embedding
    Matrix dy;     // previous update (momentum memory)
    int iter = 0;
    int dof = 1;   // dof in effect (only consulted by TsneGeneralDof)
    Pcg32 rng;     // jitter noise stream

    OptimizerState(Matrix y0, int dof0, Pcg32 rng0)
        : y(std::move(y0)), dy(y.rows(), y.cols()), dof(dof0), rng(std::move(rng0)) {}
};

// One gradient-descent update:
//   q    <- embedding affinities of y at the current dof
//   g    <- variant gradient against grad_p
//   dy   <- -learning_rate * g + momentum * dy
//   y    <- y + dy (plus jitter noise while it is active)
// The recorded cost is always measured against report_p (the unexaggerated
// input affinities), regardless of what grad_p is. Throws NumericError
// naming the iteration if the gradient turns non-finite.
IterationRecord step(OptimizerState& st, const Matrix& grad_p, const ProbabilityMatrix& report_p,
                     const VariantSpec& variant, const OptimizerConfig& cfg,
                     bool exaggerated = false);

struct RunResult {
    Matrix embedding;
    RunTrace trace;
};

// Full descent loop on precomputed input affinities. Handles early
// exaggeration (gradients see factor * p for the first exaggeration_iters
// iterations; the original p is used untouched afterwards, so restoration is
// exact by construction) and, for TsneGeneralDof with adaptive_dof, the
// alternating dof update dof <- max(1, dof - sign(grad_dof)) after every
// position update. Stops at max_iters or when the gradient infinity norm
// drops below convergence_tol (if positive).
RunResult run(const ProbabilityMatrix& p, const VariantSpec& variant,
              const OptimizerConfig& cfg, std::size_t dims);

// Same, but from raw data: builds the variant's input affinities first
// (conditional for Sne, symmetrized joint for the rest).
RunResult run_data(const Matrix& data, const VariantSpec& variant, const BandwidthSpec& bw,
                   const OptimizerConfig& cfg, std::size_t dims);

} // namespace tsne
