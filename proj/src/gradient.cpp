#include "tsne/gradient.hpp"

#include <cmath>
#include <vector>

#include "tsne/embedding_kernel.hpp"
#include "tsne/errors.hpp"
#include "tsne/simd.hpp"

namespace tsne {

namespace {

void check_shapes(const Matrix& emb, const Matrix& p, const Matrix& q) {
    const std::size_t n = emb.rows();
    if (p.rows() != n || p.cols() != n || q.rows() != n || q.cols() != n)
        throw DataError("gradient: p and q must be n x n for an n-point embedding");
}

// Shared accumulation: given per-row coefficients c_ij (zero diagonal),
// g_i = pref * (y_i * sum_j c_ij - sum_j c_ij y_j). The embedding transpose
// puts each component contiguous in memory, so the inner sums are plain dot
// products over rows of c.
Matrix accumulate(const Matrix& emb, double pref,
                  const std::vector<std::vector<double>>& c) {
    const auto& k = simd::active();
    const std::size_t n = emb.rows(), h = emb.cols();
    Matrix yt = transposed(emb);
    Matrix g(n, h);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ci = c[i].data();
        double rowsum = k.sum(ci, n);
        for (std::size_t l = 0; l < h; ++l)
            g(i, l) = pref * (emb(i, l) * rowsum - k.dot(ci, yt.row(l), n));
    }
    return g;
}

} // namespace

double safe_kl_cost(const Matrix& p, const Matrix& q) {
    const std::size_t n = p.rows();
    if (p.cols() != n || q.rows() != n || q.cols() != n)
        throw DataError("safe_kl_cost: matrices must be square and same size");
    constexpr double kFloor = 1e-12;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double pij = p(i, j);
            if (pij <= 0.0) continue; // exact zero contribution
            double qij = q(i, j);
            cost += pij * (std::log(std::max(pij, kFloor)) - std::log(std::max(qij, kFloor)));
        }
    return cost;
}

double safe_kl_cost(const ProbabilityMatrix& p, const ProbabilityMatrix& q) {
    return safe_kl_cost(p.values(), q.values());
}

Matrix grad_sne(const Matrix& emb, const Matrix& p, const Matrix& q) {
    check_shapes(emb, p, q);
    const std::size_t n = emb.rows();
    // Both orientations contribute: c_ij = (p_ij + p_ji) - (q_ij + q_ji).
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[i][j] = (p(i, j) + p(j, i)) - (q(i, j) + q(j, i));
    return accumulate(emb, 2.0, c);
}

Matrix grad_symmetric_sne(const Matrix& emb, const Matrix& p, const Matrix& q) {
    check_shapes(emb, p, q);
    const auto& k = simd::active();
    const std::size_t n = emb.rows();
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) k.diff(p.row(i), q.row(i), c[i].data(), n);
    return accumulate(emb, 4.0, c);
}

namespace {

Matrix grad_heavy_tailed(const Matrix& emb, const Matrix& p, const Matrix& q, double dof,
                         double pref) {
    const auto& k = simd::active();
    const std::size_t n = emb.rows();
    Matrix z2 = embedding_sq_distances(emb);
    std::vector<double> w(n);
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        k.inv_one_plus_scaled(z2.row(i), 1.0 / dof, w.data(), n);
        k.diff_times(p.row(i), q.row(i), w.data(), c[i].data(), n);
        c[i][i] = 0.0;
    }
    return accumulate(emb, pref, c);
}

} // namespace

Matrix grad_tsne(const Matrix& emb, const Matrix& p, const Matrix& q) {
    check_shapes(emb, p, q);
    return grad_heavy_tailed(emb, p, q, 1.0, 4.0);
}

Matrix grad_tsne_general(const Matrix& emb, const Matrix& p, const Matrix& q, int dof) {
    check_shapes(emb, p, q);
    if (dof < 1) throw DataError("degrees of freedom must be >= 1");
    return grad_heavy_tailed(emb, p, q, double(dof), (2.0 * dof + 2.0) / dof);
}

double grad_dof(const Matrix& emb, const Matrix& p, const Matrix& q, int dof) {
    check_shapes(emb, p, q);
    if (dof < 1) throw DataError("degrees of freedom must be >= 1");
    const double d = dof;
    Matrix z2 = embedding_sq_distances(emb);
    const std::size_t n = emb.rows();
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double r = z2(i, j);
            double term = -(1.0 + d) * r / (2.0 * d * d * (1.0 + r / d)) +
                          0.5 * std::log1p(r / d);
            g += term * (p(i, j) - q(i, j));
        }
    return g;
}

Matrix gradient(const Matrix& emb, const Matrix& p, const Matrix& q,
                const VariantSpec& variant) {
    switch (variant.method) {
        case Variant::Sne: return grad_sne(emb, p, q);
        case Variant::SymmetricSne: return grad_symmetric_sne(emb, p, q);
        case Variant::Tsne: return grad_tsne(emb, p, q);
        case Variant::TsneGeneralDof: return grad_tsne_general(emb, p, q, variant.dof);
    }
    throw DataError("unknown variant");
}

} // namespace tsne
