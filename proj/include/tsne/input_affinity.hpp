#pragma once

#include <span>
#include <vector>

#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

namespace tsne {

// How the per-point Gaussian bandwidths are chosen.
struct BandwidthSpec {
    enum class Mode { FixedSigma, Perplexity };

    Mode mode = Mode::FixedSigma;
    double value = 1.0; // sigma^2 in FixedSigma mode, target perplexity otherwise
    int search_iters = 50;
    double search_tol = 1e-5; // on the achieved perplexity 2^H

    static BandwidthSpec fixed(double sigma_sq) {
        return {Mode::FixedSigma, sigma_sq, 50, 1e-5};
    }
    static BandwidthSpec perplexity(double target) {
        return {Mode::Perplexity, target, 50, 1e-5};
    }
};

// All-pairs squared Euclidean distances; zero diagonal, symmetric.
Matrix pairwise_sq_distances(const Matrix& data);

// One row of conditional affinities from a row of squared distances: a
// softmax over -d/(2 sigma^2) with the self entry excluded and forced to 0.
// Shifted by the row maximum before exponentiation, so it is stable for any
// bandwidth.
std::vector<double> conditional_row(std::span<const double> sq_dist_row, std::size_t self,
                                    double sigma_sq);

// Perplexity 2^H (H in bits) of the conditional row at the given bandwidth.
double row_perplexity(std::span<const double> sq_dist_row, std::size_t self, double sigma_sq);

// Bisection on log sigma^2 for the bandwidth whose conditional row hits the
// target perplexity. Throws NumericError (reporting the achieved perplexity)
// when the target cannot be met on this row.
double search_bandwidth(std::span<const double> sq_dist_row, std::size_t self,
                        double target_perplexity, int iters = 50, double tol = 1e-5);

// Full conditional affinity matrix; one independent row per point.
ProbabilityMatrix conditional_affinities(const Matrix& data, const BandwidthSpec& bw);
ProbabilityMatrix conditional_affinities_from_distances(const Matrix& sq_dists,
                                                        const BandwidthSpec& bw);

// (C + C^T) / (2n). Each off-diagonal pair is computed once and mirrored, so
// the result is symmetric bit for bit.
ProbabilityMatrix joint_symmetric(const ProbabilityMatrix& conditional);

} // namespace tsne
