#include "tsne/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsne/embedding_kernel.hpp"
#include "tsne/errors.hpp"
#include "tsne/gradient.hpp"
#include "tsne/simd.hpp"

namespace tsne {

double momentum(int iter, const OptimizerConfig& cfg) {
    return iter < cfg.momentum_switch_iter ? cfg.momentum_initial : cfg.momentum_late;
}

Matrix init_embedding(std::size_t n, std::size_t dims, Pcg32& rng) {
    if (n < 2 || dims < 1) throw DataError("init_embedding: need n >= 2 and dims >= 1");
    Matrix y(n, dims);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < dims; ++l) y(i, l) = 1e-2 * rng.next_gaussian();
    return y;
}

Matrix init_embedding(std::size_t n, std::size_t dims, std::uint64_t seed) {
    Pcg32 rng(seed);
    return init_embedding(n, dims, rng);
}

IterationRecord step(OptimizerState& st, const Matrix& grad_p, const ProbabilityMatrix& report_p,
                     const VariantSpec& variant, const OptimizerConfig& cfg, bool exaggerated) {
    const auto& k = simd::active();
    const std::size_t total = st.y.size();

    VariantSpec effective = variant;
    effective.dof = st.dof;

    double cost;
    Matrix g;
    try {
        ProbabilityMatrix q = embedding_affinities(st.y, effective);
        cost = safe_kl_cost(report_p.values(), q.values());
        g = gradient(st.y, grad_p, q.values(), effective);
    } catch (const NumericError& e) {
        throw NumericError("iteration " + std::to_string(st.iter) + ": " + e.what());
    }
    if (!g.all_finite())
        throw NumericError("iteration " + std::to_string(st.iter) + ": non-finite gradient");

    double alpha = cfg.use_momentum ? momentum(st.iter, cfg) : 0.0;
    // dy <- -lr * g + alpha * dy, then y <- y + dy
    k.scale(st.dy.data(), alpha, st.dy.data(), total);
    k.axpy(-cfg.learning_rate, g.data(), st.dy.data(), total);
    k.axpy(1.0, st.dy.data(), st.y.data(), total);

    bool jittered = st.iter < cfg.jitter_iters && cfg.jitter_std > 0.0;
    if (jittered)
        for (std::size_t i = 0; i < total; ++i)
            st.y.data()[i] += cfg.jitter_std * st.rng.next_gaussian();

    IterationRecord rec{st.iter,  cost,       k.max_abs(g.data(), total),
                        st.dof,   exaggerated, jittered};
    ++st.iter;
    return rec;
}

RunResult run(const ProbabilityMatrix& p, const VariantSpec& variant,
              const OptimizerConfig& cfg, std::size_t dims) {
    const bool wants_conditional = variant.method == Variant::Sne;
    if (wants_conditional && p.kind() != ProbKind::Conditional)
        throw DataError("sne expects conditional input affinities");
    if (!wants_conditional && p.kind() != ProbKind::JointSymmetric)
        throw DataError(std::string(variant_name(variant.method)) +
                        " expects joint-symmetric input affinities");
    if (cfg.learning_rate <= 0.0) throw DataError("learning rate must be positive");
    if (cfg.max_iters < 0) throw DataError("max_iters must be >= 0");

    // One stream per run: the init draws first, jitter continues from there.
    const std::size_t n = p.n();
    Pcg32 rng(cfg.seed);
    Matrix y0 = init_embedding(n, dims, rng);
    OptimizerState st(std::move(y0), /*dof0=*/1, rng);

    const bool adaptive = variant.method == Variant::TsneGeneralDof && variant.adaptive_dof;
    if (variant.method == Variant::TsneGeneralDof)
        st.dof = adaptive ? std::max(1, int(dims) - 1) : variant.dof;

    // Early exaggeration works on a scaled copy; p itself is never touched,
    // so switching back after the window is exact.
    const bool exaggerate = cfg.exaggeration_iters > 0 && cfg.exaggeration_factor != 1.0;
    Matrix p_ex;
    if (exaggerate) {
        p_ex = Matrix(n, n);
        simd::active().scale(p.values().data(), cfg.exaggeration_factor, p_ex.data(),
                             p_ex.size());
    }

    RunResult out{st.y, {}};
    out.trace.reserve(std::size_t(cfg.max_iters));
    for (int t = 0; t < cfg.max_iters; ++t) {
        bool ex = exaggerate && t < cfg.exaggeration_iters;
        const Matrix& grad_p = ex ? p_ex : p.values();
        IterationRecord rec = step(st, grad_p, p, variant, cfg, ex);
        out.trace.push_back(rec);

        if (adaptive) {
            VariantSpec effective = variant;
            effective.dof = st.dof;
            ProbabilityMatrix q = embedding_affinities(st.y, effective);
            double gd = grad_dof(st.y, grad_p, q.values(), st.dof);
            int sign = gd > 0.0 ? 1 : (gd < 0.0 ? -1 : 0);
            st.dof = std::max(1, st.dof - sign);
        }

        if (cfg.convergence_tol > 0.0 && rec.grad_inf_norm < cfg.convergence_tol) break;
    }
    out.embedding = st.y;
    return out;
}

RunResult run_data(const Matrix& data, const VariantSpec& variant, const BandwidthSpec& bw,
                   const OptimizerConfig& cfg, std::size_t dims) {
    CheckReport r = validate_data(data);
    if (!r.ok) throw DataError(r.violation);
    ProbabilityMatrix cond = conditional_affinities(data, bw);
    if (variant.method == Variant::Sne) return run(cond, variant, cfg, dims);
    return run(joint_symmetric(cond), variant, cfg, dims);
}

} // namespace tsne
