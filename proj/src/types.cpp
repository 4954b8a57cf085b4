#include "tsne/types.hpp"

#include <cmath>

#include "tsne/errors.hpp"

namespace tsne {

namespace {
constexpr double kSumTol = 1e-12;

std::string at(std::size_t i, std::size_t j) {
    return " at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}
} // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Sne: return "sne";
        case Variant::SymmetricSne: return "ssne";
        case Variant::Tsne: return "tsne";
        case Variant::TsneGeneralDof: return "tsne-gdof";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "sne") return Variant::Sne;
    if (name == "ssne") return Variant::SymmetricSne;
    if (name == "tsne") return Variant::Tsne;
    if (name == "tsne-gdof") return Variant::TsneGeneralDof;
    throw DataError("unknown variant '" + name + "' (expected sne, ssne, tsne or tsne-gdof)");
}

const char* prob_kind_name(ProbKind k) {
    switch (k) {
        case ProbKind::Conditional: return "conditional";
        case ProbKind::JointAsymmetric: return "joint-asymmetric";
        case ProbKind::JointSymmetric: return "joint-symmetric";
    }
    return "?";
}

CheckReport validate_data(const Matrix& m) {
    if (m.rows() < 2) return {false, "data matrix needs at least 2 rows, got " +
                                         std::to_string(m.rows())};
    if (m.cols() < 1) return {false, "data matrix needs at least 1 column"};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j))) return {false, "non-finite data entry" + at(i, j)};
    return {};
}

CheckReport validate_embedding(const Matrix& m) {
    if (m.rows() < 1 || m.cols() < 1) return {false, "embedding matrix is empty"};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j)))
                return {false, "non-finite embedding entry" + at(i, j)};
    return {};
}

CheckReport validate_probability(const Matrix& m, ProbKind kind) {
    const std::size_t n = m.rows();
    if (n != m.cols()) return {false, "probability matrix must be square"};
    if (n < 2) return {false, "probability matrix needs at least 2 rows"};

    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != 0.0) return {false, "nonzero diagonal entry" + at(i, i)};
        for (std::size_t j = 0; j < n; ++j) {
            double v = m(i, j);
            if (!std::isfinite(v)) return {false, "non-finite entry" + at(i, j)};
            if (v < 0.0) return {false, "negative entry (non-negativity violated)" + at(i, j)};
        }
    }

    if (kind == ProbKind::JointSymmetric) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (m(i, j) != m(j, i))
                    return {false, "symmetry violated" + at(i, j)};
        double total = compensated_sum(m.data(), m.size());
        if (std::abs(total - 1.0) > kSumTol)
            return {false, "total sum is " + std::to_string(total) + ", expected 1"};
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double s = compensated_sum(m.row(i), n);
            if (std::abs(s - 1.0) > kSumTol)
                return {false, "row " + std::to_string(i) + " sums to " +
                                   std::to_string(s) + ", expected 1 (row normalization)"};
        }
    }
    return {};
}

ProbabilityMatrix::ProbabilityMatrix(Matrix values, ProbKind kind)
    : values_(std::move(values)), kind_(kind) {
    CheckReport r = validate_probability(values_, kind_);
    if (!r.ok)
        throw DataError(std::string(prob_kind_name(kind_)) + " matrix invalid: " + r.violation);
}

OptimizerConfig default_config(const VariantSpec& variant) {
    OptimizerConfig cfg;
    switch (variant.method) {
        case Variant::Sne:
            cfg.learning_rate = 0.1;
            cfg.use_momentum = true;
            cfg.jitter_std = 0.1;
            cfg.jitter_iters = 50;
            cfg.exaggeration_iters = 0;
            break;
        case Variant::SymmetricSne:
            cfg.learning_rate = 100.0;
            cfg.use_momentum = true;
            cfg.exaggeration_iters = 0;
            break;
        case Variant::Tsne:
        case Variant::TsneGeneralDof:
            cfg.learning_rate = 100.0;
            cfg.use_momentum = false;
            cfg.exaggeration_iters = 10;
            break;
    }
    return cfg;
}

} // namespace tsne
