#include "tsne/landmark.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tsne/errors.hpp"
#include "tsne/input_affinity.hpp"
#include "tsne/kernel_map.hpp"
#include "tsne/optimizer.hpp"
#include "tsne/rng.hpp"

namespace tsne {

namespace {
// Stream ids deriving the independent RNG streams from one user seed.
constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kWalkStreamBase = 2;
} // namespace

std::vector<std::size_t> sample_landmarks(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m > n)
        throw DataError("sample_landmarks: need 1 <= m <= n, got m = " + std::to_string(m) +
                        ", n = " + std::to_string(n));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Pcg32 rng(seed, kSampleStream);
    // Partial Fisher-Yates: the first m slots end up a uniform sample.
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + rng.next_below(std::uint32_t(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

KnnGraph build_knn(const Matrix& data, std::size_t k) {
    CheckReport r = validate_data(data);
    if (!r.ok) throw DataError(r.violation);
    const std::size_t n = data.rows();
    if (k < 1 || k >= n)
        throw DataError("build_knn: need 1 <= k < n, got k = " + std::to_string(k) +
                        ", n = " + std::to_string(n));

    Matrix d2 = pairwise_sq_distances(data);
    KnnGraph g{n, k, std::vector<std::size_t>(n * k)};
    std::vector<std::pair<double, std::size_t>> order(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) order[w++] = {d2(i, j), j};
        // Pair comparison: distance first, index breaks ties low.
        std::partial_sort(order.begin(), order.begin() + std::ptrdiff_t(k), order.end());
        for (std::size_t t = 0; t < k; ++t) g.neighbors[i * k + t] = order[t].second;
    }
    return g;
}

WalkEstimate random_walk_affinities(const KnnGraph& graph,
                                    const std::vector<std::size_t>& landmarks,
                                    std::uint64_t walks_per_landmark, std::uint64_t max_steps,
                                    std::uint64_t seed) {
    const std::size_t n = graph.n, m = landmarks.size(), k = graph.k;
    if (m < 2) throw DataError("random walks: need at least 2 landmarks");
    if (walks_per_landmark == 0) throw DataError("random walks: need at least 1 walk");
    std::vector<int> mark(n, -1);
    for (std::size_t a = 0; a < m; ++a) {
        if (landmarks[a] >= n) throw DataError("random walks: landmark index out of range");
        if (mark[landmarks[a]] != -1) throw DataError("random walks: duplicate landmark");
        mark[landmarks[a]] = int(a);
    }

    Matrix est(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t start = landmarks[a];
        Pcg32 rng(seed, kWalkStreamBase + a);
        std::vector<std::uint64_t> credit(m, 0);
        std::uint64_t completed = 0;
        for (std::uint64_t w = 0; w < walks_per_landmark; ++w) {
            std::size_t v = start;
            for (std::uint64_t s = 0; s < max_steps; ++s) {
                v = graph.neighbors[v * k + rng.next_below(std::uint32_t(k))];
                if (mark[v] >= 0 && v != start) {
                    ++credit[std::size_t(mark[v])];
                    ++completed;
                    break;
                }
            }
            // Walks that ran out of steps are dropped entirely.
        }
        if (completed == 0)
            throw NumericError("random walks: every walk from landmark " +
                               std::to_string(start) + " was discarded (" +
                               std::to_string(walks_per_landmark) + " walks, max " +
                               std::to_string(max_steps) + " steps)");
        for (std::size_t b = 0; b < m; ++b)
            est(a, b) = double(credit[b]) / double(completed);
    }
    return {landmarks, ProbabilityMatrix(std::move(est), ProbKind::Conditional),
            walks_per_landmark};
}

LandmarkResult landmark_embed(const Matrix& data, const LandmarkParams& params,
                              const VariantSpec& variant, const OptimizerConfig& cfg,
                              std::size_t dims) {
    CheckReport r = validate_data(data);
    if (!r.ok) throw DataError(r.violation);
    if (variant.method == Variant::Sne)
        throw DataError("landmark pipeline needs a joint-affinity variant "
                        "(ssne, tsne or tsne-gdof)");
    const std::size_t n = data.rows(), m = params.landmarks;
    if (m < 2 || m > n)
        throw DataError("landmark pipeline: need 2 <= m <= n, got m = " + std::to_string(m));

    LandmarkResult out;
    out.landmarks = sample_landmarks(n, m, cfg.seed);

    KnnGraph graph = build_knn(data, params.knn);
    std::uint64_t max_steps = params.max_steps ? params.max_steps : 10 * std::uint64_t(n);
    WalkEstimate walks =
        random_walk_affinities(graph, out.landmarks, params.walks, max_steps, cfg.seed);

    RunResult embedded = run(joint_symmetric(walks.conditional), variant, cfg, dims);
    out.landmark_embedding = embedded.embedding;
    out.trace = std::move(embedded.trace);

    if (m == n) {
        // Every point is a landmark: nothing left to place.
        out.full_embedding = out.landmark_embedding;
        return out;
    }

    Matrix lm_data(m, data.cols());
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < data.cols(); ++j)
            lm_data(a, j) = data(out.landmarks[a], j);

    KernelMap map = fit(lm_data, out.landmark_embedding, params.gamma);
    out.rank_deficient = map.rank_deficient;

    std::vector<char> is_landmark(n, 0);
    for (std::size_t a : out.landmarks) is_landmark[a] = 1;
    std::vector<std::size_t> rest;
    rest.reserve(n - m);
    for (std::size_t i = 0; i < n; ++i)
        if (!is_landmark[i]) rest.push_back(i);

    Matrix rest_data(rest.size(), data.cols());
    for (std::size_t t = 0; t < rest.size(); ++t)
        for (std::size_t j = 0; j < data.cols(); ++j) rest_data(t, j) = data(rest[t], j);
    Matrix placed = transform(map, rest_data);

    out.full_embedding = Matrix(n, dims);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t l = 0; l < dims; ++l)
            out.full_embedding(out.landmarks[a], l) = out.landmark_embedding(a, l);
    for (std::size_t t = 0; t < rest.size(); ++t)
        for (std::size_t l = 0; l < dims; ++l)
            out.full_embedding(rest[t], l) = placed(t, l);
    return out;
}

} // namespace tsne
