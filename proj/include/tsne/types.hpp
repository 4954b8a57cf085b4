#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsne/matrix.hpp"

namespace tsne {

// ---------------------------------------------------------------------------
// Method selection
// ---------------------------------------------------------------------------

enum class Variant { Sne, SymmetricSne, Tsne, TsneGeneralDof };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name); // sne | ssne | tsne | tsne-gdof

struct VariantSpec {
    Variant method = Variant::Tsne;
    // Degrees of freedom of the heavy-tailed embedding kernel. Only consulted
    // for TsneGeneralDof; the plain t-SNE kernel is the dof = 1 case.
    int dof = 1;
    // When set, the optimizer re-tunes dof by a unit step against the sign of
    // the dof gradient after every position update, starting from max(1, h-1).
    bool adaptive_dof = false;
};

// ---------------------------------------------------------------------------
// Probability matrices
// ---------------------------------------------------------------------------

// Conditional: every row is a distribution (rows sum to 1, zero diagonal).
// JointAsymmetric: rows each sum to 1 but the matrix need not be symmetric;
//   this is what the per-row embedding softmax produces.
// JointSymmetric: one distribution over ordered pairs (total sum 1) with
//   exact symmetry, p(i,j) == p(j,i) bit for bit.
enum class ProbKind { Conditional, JointAsymmetric, JointSymmetric };

const char* prob_kind_name(ProbKind k);

struct CheckReport {
    bool ok = true;
    std::string violation; // first violated invariant, empty when ok
};

CheckReport validate_data(const Matrix& m);      // n >= 2, d >= 1, all finite
CheckReport validate_embedding(const Matrix& m); // n >= 1, h >= 1, all finite
CheckReport validate_probability(const Matrix& m, ProbKind kind);

// Affinity matrix tagged with its normalization discipline. Construction
// validates, so holding one of these means the invariants held at build time.
class ProbabilityMatrix {
  public:
    ProbabilityMatrix(Matrix values, ProbKind kind);

    const Matrix& values() const { return values_; }
    ProbKind kind() const { return kind_; }
    std::size_t n() const { return values_.rows(); }

  private:
    Matrix values_;
    ProbKind kind_;
};

// ---------------------------------------------------------------------------
// Optimizer configuration and run trace
// ---------------------------------------------------------------------------

struct OptimizerConfig {
    double learning_rate = 100.0;
    int max_iters = 160;
    double convergence_tol = 0.0; // 0 disables the gradient-norm stop

    bool use_momentum = true;
    double momentum_initial = 0.5;
    double momentum_late = 0.8;
    int momentum_switch_iter = 250;

    double exaggeration_factor = 4.0;
    int exaggeration_iters = 10;

    double jitter_std = 0.0;
    int jitter_iters = 0;

    std::uint64_t seed = 0;
};

// The defaults used throughout: learning rate 0.1 for Sne and 100 for the
// other three; momentum for the two exponential-kernel methods only; jitter
// (std 0.1, first 50 iterations) for Sne only; early exaggeration (factor 4,
// first 10 iterations) for the heavy-tailed methods only.
OptimizerConfig default_config(const VariantSpec& variant);

struct IterationRecord {
    int iter = 0;
    double cost = 0.0;          // safe KL against the unexaggerated p
    double grad_inf_norm = 0.0; // max |gradient entry|
    int dof = 1;                // dof in effect for this iteration's update
    bool exaggeration = false;
    bool jitter = false;
};

using RunTrace = std::vector<IterationRecord>;

} // namespace tsne
