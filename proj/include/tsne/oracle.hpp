#pragma once

#include <functional>
#include <vector>

#include "tsne/landmark.hpp"
#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

// Brute-force reference implementations used by the tests and the gradcheck
// subcommand. Everything in here is written directly from the defining
// formulas, independent of the main modules, so a bug would have to appear
// twice (in different shapes) to go unnoticed.
namespace tsne::oracle {

// Central finite differences of an arbitrary scalar function of the
// embedding, one coordinate at a time.
Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& at,
                   double step = 1e-5);

struct GradCheck {
    double max_rel_err = 0.0;
    std::size_t worst_row = 0, worst_col = 0;
};

// Entrywise |a - n| / max(|a|, |n|, 1e-8), maximized over the matrix.
GradCheck compare_gradients(const Matrix& analytic, const Matrix& numeric);

// Direct-formula embedding affinities (long double accumulation, no
// stabilizing shifts — fine at test scale).
Matrix naive_affinities(const Matrix& embedding, const VariantSpec& variant);

// General-dof kernel with the dof treated as a real number; this is what the
// finite-difference check of the dof gradient differentiates through.
Matrix naive_gdof_affinities(const Matrix& embedding, double dof);

// Plain sum_{i != j, p > 0} p log(p/q) in long double.
double naive_kl(const Matrix& p, const Matrix& q);

// Exact first-arrival probabilities for the landmark random walk: landmarks
// other than `start` are absorbing, every other node (including `start`
// itself) steps uniformly over its k out-neighbors. Returns one entry per
// landmark, aligned with `landmarks` (the start position gets 0). Dense
// linear solve, meant for graphs up to a couple hundred nodes.
std::vector<double> absorbing_chain_probs(const KnnGraph& graph,
                                          const std::vector<std::size_t>& landmarks,
                                          std::size_t start);

} // namespace tsne::oracle
