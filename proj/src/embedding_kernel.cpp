#include "tsne/embedding_kernel.hpp"

#include <cmath>
#include <limits>

#include "tsne/errors.hpp"
#include "tsne/simd.hpp"

namespace tsne {

Matrix embedding_sq_distances(const Matrix& embedding) {
    CheckReport r = validate_embedding(embedding);
    if (!r.ok) throw NumericError(r.violation);
    if (embedding.rows() < 2) throw DataError("embedding affinities: need at least 2 points");

    const auto& k = simd::active();
    const std::size_t n = embedding.rows(), h = embedding.cols();
    Matrix z2(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = k.squared_distance(embedding.row(i), embedding.row(j), h);
            z2(i, j) = v;
            z2(j, i) = v;
        }
    return z2;
}

namespace {

// Upper triangle -> both triangles, then divide everything by the
// off-diagonal total. Used by all three globally-normalized kernels.
ProbabilityMatrix normalize_symmetric(Matrix w) {
    const std::size_t n = w.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) w(j, i) = w(i, j);
    double total = compensated_sum(w.data(), w.size());
    if (!(total > 0.0)) throw NumericError("embedding affinities: normalizer underflowed");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = w(i, j) / total;
            w(i, j) = v;
            w(j, i) = v;
        }
    return {std::move(w), ProbKind::JointSymmetric};
}

ProbabilityMatrix sne_affinities(const Matrix& z2) {
    const std::size_t n = z2.rows();
    Matrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        // Per-row softmax of -z^2, shifted by the off-diagonal row max.
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && -z2(i, j) > m) m = -z2(i, j);
        for (std::size_t j = 0; j < n; ++j)
            q(i, j) = (j == i) ? 0.0 : std::exp(-z2(i, j) - m);
        double denom = compensated_sum(q.row(i), n);
        if (!(denom > 0.0)) throw NumericError("embedding affinities: row normalizer underflowed");
        for (std::size_t j = 0; j < n; ++j) q(i, j) /= denom;
    }
    return {std::move(q), ProbKind::JointAsymmetric};
}

ProbabilityMatrix ssne_affinities(const Matrix& z2) {
    const std::size_t n = z2.rows();
    // One global shift (the smallest off-diagonal z^2) keeps the largest
    // kernel value at exp(0).
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (z2(i, j) < m) m = z2(i, j);
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) w(i, j) = std::exp(m - z2(i, j));
    return normalize_symmetric(std::move(w));
}

ProbabilityMatrix tsne_affinities(const Matrix& z2) {
    const std::size_t n = z2.rows();
    const auto& k = simd::active();
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        k.inv_one_plus_scaled(z2.row(i), 1.0, w.row(i), n);
        for (std::size_t j = 0; j <= i; ++j) w(i, j) = 0.0; // keep upper triangle only
    }
    return normalize_symmetric(std::move(w));
}

ProbabilityMatrix general_dof_affinities(const Matrix& z2, int dof) {
    const std::size_t n = z2.rows();
    const double exponent = -0.5 * (double(dof) + 1.0);
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            w(i, j) = std::pow(1.0 + z2(i, j) / double(dof), exponent);
    return normalize_symmetric(std::move(w));
}

} // namespace

ProbabilityMatrix embedding_affinities(const Matrix& embedding, const VariantSpec& variant) {
    Matrix z2 = embedding_sq_distances(embedding);
    switch (variant.method) {
        case Variant::Sne: return sne_affinities(z2);
        case Variant::SymmetricSne: return ssne_affinities(z2);
        case Variant::Tsne: return tsne_affinities(z2);
        case Variant::TsneGeneralDof:
            if (variant.dof < 1) throw DataError("degrees of freedom must be >= 1");
            // dof 1 is exactly the Tsne kernel; share the code path so the
            // two variants agree bitwise.
            return variant.dof == 1 ? tsne_affinities(z2)
                                    : general_dof_affinities(z2, variant.dof);
    }
    throw DataError("unknown variant");
}

} // namespace tsne
