#pragma once

#include <cstdint>
#include <vector>

#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

namespace tsne {

// m distinct indices drawn uniformly without replacement, returned sorted.
std::vector<std::size_t> sample_landmarks(std::size_t n, std::size_t m, std::uint64_t seed);

// Directed k-nearest-neighbor graph, exact brute force. Neighbors are ordered
// by (squared distance, index), so distance ties resolve to the lower index.
struct KnnGraph {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::size_t> neighbors; // n * k, row-major
};

KnnGraph build_knn(const Matrix& data, std::size_t k);

// Conditional affinities between landmarks, estimated by uniform random walks
// over the kNN graph: from every landmark run walks_per_landmark walks,
// absorbing at the first *other* landmark reached; walks still unabsorbed
// after max_steps steps are discarded (and excluded from the denominator).
// Each landmark draws from its own stream (seed, stream = position), so the
// estimate does not depend on scheduling order.
struct WalkEstimate {
    std::vector<std::size_t> landmarks;
    ProbabilityMatrix conditional; // m x m, row i = distribution from landmark i
    std::uint64_t walks_per_landmark = 0;
};

WalkEstimate random_walk_affinities(const KnnGraph& graph,
                                    const std::vector<std::size_t>& landmarks,
                                    std::uint64_t walks_per_landmark,
                                    std::uint64_t max_steps, std::uint64_t seed);

// Full landmark pipeline: sample landmarks, estimate their affinities by
// random walks, symmetrize, embed the landmarks with the optimizer, then
// place every non-landmark point through a kernel map fitted on the
// landmarks. Works for the joint-affinity variants (ssne, tsne, tsne-gdof).
struct LandmarkResult {
    std::vector<std::size_t> landmarks;
    Matrix landmark_embedding; // m x dims
    Matrix full_embedding;     // n x dims
    RunTrace trace;
    bool rank_deficient = false;
};

struct LandmarkParams {
    std::size_t landmarks = 0;       // m, required
    std::size_t knn = 20;            // k
    std::uint64_t walks = 10000;     // per landmark
    std::uint64_t max_steps = 0;     // 0 -> 10 * n
    double gamma = 0.5;              // kernel map width factor
};

LandmarkResult landmark_embed(const Matrix& data, const LandmarkParams& params,
                              const VariantSpec& variant, const OptimizerConfig& cfg,
                              std::size_t dims);

} // namespace tsne
