#include "tsne/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "tsne/errors.hpp"

namespace tsne::oracle {

Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& at,
                   double step) {
    Matrix g(at.rows(), at.cols());
    Matrix x = at;
    for (std::size_t i = 0; i < at.rows(); ++i)
        for (std::size_t j = 0; j < at.cols(); ++j) {
            double orig = x(i, j);
            x(i, j) = orig + step;
            double fp = f(x);
            x(i, j) = orig - step;
            double fm = f(x);
            x(i, j) = orig;
            g(i, j) = (fp - fm) * (0.5 / step);
        }
    return g;
}

GradCheck compare_gradients(const Matrix& analytic, const Matrix& numeric) {
    if (analytic.rows() != numeric.rows() || analytic.cols() != numeric.cols())
        throw DataError("compare_gradients: shape mismatch");
    GradCheck out;
    for (std::size_t i = 0; i < analytic.rows(); ++i)
        for (std::size_t j = 0; j < analytic.cols(); ++j) {
            double a = analytic(i, j), n = numeric(i, j);
            double rel = std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-8});
            if (rel > out.max_rel_err) {
                out.max_rel_err = rel;
                out.worst_row = i;
                out.worst_col = j;
            }
        }
    return out;
}

namespace {

long double sqdist(const Matrix& y, std::size_t i, std::size_t j) {
    long double s = 0.0L;
    for (std::size_t l = 0; l < y.cols(); ++l) {
        long double d = (long double)y(i, l) - (long double)y(j, l);
        s += d * d;
    }
    return s;
}

} // namespace

Matrix naive_affinities(const Matrix& y, const VariantSpec& variant) {
    const std::size_t n = y.rows();
    Matrix q(n, n);
    if (variant.method == Variant::Sne) {
        for (std::size_t i = 0; i < n; ++i) {
            long double denom = 0.0L;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom += expl(-sqdist(y, i, j));
            for (std::size_t j = 0; j < n; ++j)
                q(i, j) = (j == i) ? 0.0 : double(expl(-sqdist(y, i, j)) / denom);
        }
        return q;
    }
    long double denom = 0.0L;
    auto weight = [&](std::size_t i, std::size_t j) -> long double {
        long double r = sqdist(y, i, j);
        switch (variant.method) {
            case Variant::SymmetricSne: return expl(-r);
            case Variant::Tsne: return 1.0L / (1.0L + r);
            case Variant::TsneGeneralDof:
                return powl(1.0L + r / variant.dof, -0.5L * (variant.dof + 1));
            default: return 0.0L;
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) denom += weight(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) q(i, j) = double(weight(i, j) / denom);
    return q;
}

Matrix naive_gdof_affinities(const Matrix& y, double dof) {
    const std::size_t n = y.rows();
    Matrix q(n, n);
    long double denom = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) denom += powl(1.0L + sqdist(y, i, j) / dof, -0.5L * (dof + 1.0L));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                q(i, j) =
                    double(powl(1.0L + sqdist(y, i, j) / dof, -0.5L * (dof + 1.0L)) / denom);
    return q;
}

double naive_kl(const Matrix& p, const Matrix& q) {
    long double c = 0.0L;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (i == j) continue;
            long double pij = p(i, j);
            if (pij > 0.0L) c += pij * logl(pij / (long double)q(i, j));
        }
    return double(c);
}

std::vector<double> absorbing_chain_probs(const KnnGraph& graph,
                                          const std::vector<std::size_t>& landmarks,
                                          std::size_t start) {
    const std::size_t n = graph.n, k = graph.k, m = landmarks.size();
    if (m < 2) throw DataError("absorbing chain: need at least 2 landmarks");

    // Position of each landmark, -1 for ordinary nodes; start is transient.
    std::vector<int> mark(n, -1);
    std::size_t start_pos = m;
    for (std::size_t a = 0; a < m; ++a) {
        mark[landmarks[a]] = int(a);
        if (landmarks[a] == start) start_pos = a;
    }
    if (start_pos == m) throw DataError("absorbing chain: start must be a landmark");

    std::vector<std::size_t> transient;
    std::vector<int> tidx(n, -1);
    for (std::size_t v = 0; v < n; ++v)
        if (mark[v] < 0 || v == start) {
            tidx[v] = int(transient.size());
            transient.push_back(v);
        }

    // (I - T) U = B with T the transient-to-transient step matrix and B the
    // one-step absorption mass into each absorbing landmark.
    const std::size_t t = transient.size(), na = m - 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(Eigen::Index(t), Eigen::Index(t));
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(Eigen::Index(t), Eigen::Index(na));
    const double p_step = 1.0 / double(k);
    for (std::size_t r = 0; r < t; ++r) {
        std::size_t v = transient[r];
        for (std::size_t s = 0; s < k; ++s) {
            std::size_t w = graph.neighbors[v * k + s];
            if (mark[w] >= 0 && w != start) {
                std::size_t col = std::size_t(mark[w]);
                if (col > start_pos) --col; // compact column index skipping start
                B(Eigen::Index(r), Eigen::Index(col)) += p_step;
            } else {
                A(Eigen::Index(r), Eigen::Index(tidx[w])) -= p_step;
            }
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::MatrixXd U = lu.solve(B);
    // A singular system (walks trapped in a component with no reachable
    // absorbing landmark) can surface as a non-finite solution, so the
    // residual test must not let NaN slip through a '>' comparison.
    if (!U.allFinite() || (A * U - B).cwiseAbs().maxCoeff() > 1e-8)
        throw NumericError("absorbing chain: singular system (disconnected graph?)");

    Eigen::Index srow = Eigen::Index(tidx[start]);
    double total = U.row(srow).sum();
    if (std::abs(total - 1.0) > 1e-8)
        throw NumericError("absorbing chain: walks from landmark " + std::to_string(start) +
                           " reach the other landmarks with probability " +
                           std::to_string(total) + " < 1 (unreachable landmark)");

    std::vector<double> out(m, 0.0);
    for (std::size_t a = 0, col = 0; a < m; ++a) {
        if (a == start_pos) continue;
        out[a] = U(srow, Eigen::Index(col++));
    }
    return out;
}

} // namespace tsne::oracle
