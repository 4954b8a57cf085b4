#include "tsne/input_affinity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tsne/errors.hpp"
#include "tsne/simd.hpp"

namespace tsne {

Matrix pairwise_sq_distances(const Matrix& data) {
    CheckReport r = validate_data(data);
    if (!r.ok) throw DataError(r.violation);

    const auto& k = simd::active();
    const std::size_t n = data.rows(), d = data.cols();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = k.squared_distance(data.row(i), data.row(j), d);
            out(i, j) = v;
            out(j, i) = v;
        }
    return out;
}

std::vector<double> conditional_row(std::span<const double> sq_dist_row, std::size_t self,
                                    double sigma_sq) {
    const std::size_t n = sq_dist_row.size();
    if (n < 2) throw DataError("conditional_row: need at least 2 points");
    if (self >= n) throw DataError("conditional_row: self index out of range");
    if (!(sigma_sq > 0.0)) throw DataError("conditional_row: sigma^2 must be positive");

    // Exponents -d/(2 sigma^2), then shift by the off-diagonal max so the
    // largest term is exp(0) and the normalizer can never underflow to 0.
    std::vector<double> row(n);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == self) continue;
        double e = -sq_dist_row[j] / (2.0 * sigma_sq);
        if (!std::isfinite(e) && e != -std::numeric_limits<double>::infinity())
            throw NumericError("conditional_row: non-finite exponent");
        row[j] = e;
        if (e > m) m = e;
    }
    // sigma^2 overflowed to inf: all exponents are -0, the row comes out
    // uniform, which is the correct limit.
    if (m == -std::numeric_limits<double>::infinity()) m = 0.0;

    for (std::size_t j = 0; j < n; ++j) row[j] = (j == self) ? 0.0 : std::exp(row[j] - m);
    double denom = compensated_sum(row.data(), n);
    if (!(denom > 0.0)) throw NumericError("conditional_row: normalizer underflowed");
    for (std::size_t j = 0; j < n; ++j) row[j] /= denom;
    return row;
}

namespace {

// Entropy in bits of the conditional row at the given bandwidth.
double row_entropy_bits(std::span<const double> sq_dist_row, std::size_t self,
                        double sigma_sq) {
    std::vector<double> p = conditional_row(sq_dist_row, self, sigma_sq);
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

} // namespace

double row_perplexity(std::span<const double> sq_dist_row, std::size_t self, double sigma_sq) {
    return std::exp2(row_entropy_bits(sq_dist_row, self, sigma_sq));
}

double search_bandwidth(std::span<const double> sq_dist_row, std::size_t self,
                        double target_perplexity, int iters, double tol) {
    if (!(target_perplexity >= 1.0))
        throw DataError("search_bandwidth: target perplexity must be >= 1");
    const double target_h = std::log2(target_perplexity);

    // Bisection on log sigma^2. Entropy is monotone in the bandwidth, so a
    // straddling bracket pins the answer; expand additively (in log space)
    // when the initial bracket does not straddle. The caps keep exp() away
    // from 0 on the low side; overflow to inf on the high side is fine (the
    // row degrades gracefully to uniform).
    double lo = -40.0, hi = 40.0;
    auto h_at = [&](double log_s2) {
        return row_entropy_bits(sq_dist_row, self, std::exp(log_s2));
    };
    for (int e = 0; e < 16 && h_at(lo) > target_h && lo > -680.0; ++e) lo -= 40.0;
    for (int e = 0; e < 16 && h_at(hi) < target_h && hi < 680.0; ++e) hi += 40.0;

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < iters; ++it) {
        mid = 0.5 * (lo + hi);
        double h = h_at(mid);
        if (std::abs(std::exp2(h) - target_perplexity) <= tol) break;
        (h < target_h ? lo : hi) = mid;
    }

    // The bracket may not have straddled at all (constant-entropy rows,
    // saturated targets); what matters is where we ended up.
    double best = mid;
    for (double cand : {lo, hi})
        if (std::abs(std::exp2(h_at(cand)) - target_perplexity) <
            std::abs(std::exp2(h_at(best)) - target_perplexity))
            best = cand;

    double sigma_sq = std::exp(best);
    double achieved = std::exp2(h_at(best));
    if (std::abs(achieved - target_perplexity) > tol)
        throw NumericError("search_bandwidth: target perplexity " +
                           std::to_string(target_perplexity) +
                           " unreachable on this row; achieved " + std::to_string(achieved));
    return sigma_sq;
}

ProbabilityMatrix conditional_affinities(const Matrix& data, const BandwidthSpec& bw) {
    return conditional_affinities_from_distances(pairwise_sq_distances(data), bw);
}

ProbabilityMatrix conditional_affinities_from_distances(const Matrix& sq_dists,
                                                        const BandwidthSpec& bw) {
    const std::size_t n = sq_dists.rows();
    if (n != sq_dists.cols() || n < 2)
        throw DataError("conditional affinities: need a square distance matrix, n >= 2");
    if (bw.mode == BandwidthSpec::Mode::Perplexity && bw.value > double(n - 1) + bw.search_tol)
        throw DataError("target perplexity " + std::to_string(bw.value) +
                        " exceeds n - 1 = " + std::to_string(n - 1));

    Matrix p(n, n);
    // Rows are fully independent; each one reads a distance row and writes
    // its own output row, so this loop can be parallelized as is.
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> drow(sq_dists.row(i), n);
        double s2 = bw.mode == BandwidthSpec::Mode::FixedSigma
                        ? bw.value
                        : search_bandwidth(drow, i, bw.value, bw.search_iters, bw.search_tol);
        std::vector<double> prow = conditional_row(drow, i, s2);
        for (std::size_t j = 0; j < n; ++j) p(i, j) = prow[j];
    }
    return {std::move(p), ProbKind::Conditional};
}

ProbabilityMatrix joint_symmetric(const ProbabilityMatrix& conditional) {
    if (conditional.kind() != ProbKind::Conditional)
        throw DataError("joint_symmetric expects a conditional matrix");
    const Matrix& c = conditional.values();
    const std::size_t n = c.rows();
    const double denom = 2.0 * double(n);
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = (c(i, j) + c(j, i)) / denom;
            out(i, j) = v;
            out(j, i) = v;
        }
    return {std::move(out), ProbKind::JointSymmetric};
}

} // namespace tsne
