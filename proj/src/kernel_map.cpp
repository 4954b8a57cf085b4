#include "tsne/kernel_map.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "tsne/errors.hpp"
#include "tsne/simd.hpp"
#include "tsne/types.hpp"

namespace tsne {

std::vector<double> kernel_widths(const Matrix& train_data, double gamma) {
    CheckReport r = validate_data(train_data);
    if (!r.ok) throw DataError(r.violation);
    if (!(gamma > 0.0)) throw DataError("kernel map: gamma must be positive");

    const auto& k = simd::active();
    const std::size_t n = train_data.rows(), d = train_data.cols();
    std::vector<double> widths(n);
    for (std::size_t j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t who = j;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            double v = k.squared_distance(train_data.row(j), train_data.row(i), d);
            if (v < best) {
                best = v;
                who = i;
            }
        }
        if (best == 0.0)
            throw DataError("kernel map: training points " + std::to_string(j) + " and " +
                            std::to_string(who) + " coincide; widths would be zero");
        widths[j] = gamma * std::sqrt(best);
    }
    return widths;
}

Matrix build_kernel_rows(const Matrix& queries, const Matrix& train_data,
                         const std::vector<double>& widths) {
    const std::size_t nq = queries.rows(), n = train_data.rows(), d = train_data.cols();
    if (queries.cols() != d)
        throw DataError("kernel map: query dimensionality " + std::to_string(queries.cols()) +
                        " does not match training data (" + std::to_string(d) + ")");
    if (widths.size() != n) throw DataError("kernel map: one width per training point required");

    const auto& k = simd::active();
    Matrix out(nq, n);
    std::vector<double> e(n);
    for (std::size_t i = 0; i < nq; ++i) {
        // Columns carry different widths, so the stabilizing shift is the max
        // over the already-scaled exponents.
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = -k.squared_distance(queries.row(i), train_data.row(j), d) /
                   (2.0 * widths[j] * widths[j]);
            if (e[j] > m) m = e[j];
        }
        for (std::size_t j = 0; j < n; ++j) out(i, j) = std::exp(e[j] - m);
        double denom = compensated_sum(out.row(i), n);
        for (std::size_t j = 0; j < n; ++j) out(i, j) /= denom;
    }
    return out;
}

KernelMap fit(const Matrix& train_data, const Matrix& train_embedding, double gamma) {
    const std::size_t n = train_data.rows();
    if (n == 0 || train_data.cols() == 0) throw DataError("kernel map: empty training data");
    if (train_embedding.rows() != n)
        throw DataError("kernel map: embedding row count does not match training data");
    CheckReport r = validate_embedding(train_embedding);
    if (!r.ok) throw DataError(r.violation);

    KernelMap map;
    map.train_data = train_data;
    map.gamma = gamma;

    if (n == 1) {
        // Single training point: its kernel row is [1] whatever the width,
        // and the least-squares coefficients are the embedding itself.
        map.widths = {1.0};
        map.coeffs = train_embedding;
        return map;
    }

    map.widths = kernel_widths(train_data, gamma);
    Matrix kk = build_kernel_rows(train_data, train_data, map.widths);

    // Rank-revealing orthogonal solve; minimum-norm solution when the kernel
    // matrix is numerically rank-deficient.
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        K(kk.data(), Eigen::Index(n), Eigen::Index(n));
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        Y(train_embedding.data(), Eigen::Index(n), Eigen::Index(train_embedding.cols()));

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(K);
    map.rank_deficient = cod.rank() < Eigen::Index(n);
    Eigen::MatrixXd A = cod.solve(Y);

    map.coeffs = Matrix(n, train_embedding.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < train_embedding.cols(); ++l)
            map.coeffs(i, l) = A(Eigen::Index(i), Eigen::Index(l));
    return map;
}

Matrix transform(const KernelMap& map, const Matrix& queries) {
    if (map.coeffs.size() == 0) throw DataError("kernel map: transform before fit");
    Matrix kq = build_kernel_rows(queries, map.train_data, map.widths);
    const auto& k = simd::active();
    const std::size_t nq = queries.rows(), n = map.train_data.rows(),
                      h = map.coeffs.cols();
    Matrix ct = transposed(map.coeffs); // h x n: each output component contiguous
    Matrix out(nq, h);
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t l = 0; l < h; ++l) out(i, l) = k.dot(kq.row(i), ct.row(l), n);
    return out;
}

} // namespace tsne
