#pragma once

#include <vector>

#include "tsne/matrix.hpp"

namespace tsne {

// Per-training-point Gaussian widths: sigma_j = gamma * (distance from x_j to
// its nearest other training point). Throws DataError naming the indices if
// two training points coincide.
std::vector<double> kernel_widths(const Matrix& train_data, double gamma);

// Row-normalized kernel rows K(i, j) = k(q_i, x_j) / sum_l k(q_i, x_l) with
// k(q, x_j) = exp(-||q - x_j||^2 / (2 sigma_j^2)). Rows are shifted by their
// max exponent before exponentiation, so they are stable for any widths.
Matrix build_kernel_rows(const Matrix& queries, const Matrix& train_data,
                         const std::vector<double>& widths);

// Linear map from kernel rows to embedding coordinates, fitted by least
// squares. rank_deficient flags a kernel matrix whose numerical rank fell
// short of n; the stored coefficients are then the minimum-norm solution.
struct KernelMap {
    Matrix train_data;
    std::vector<double> widths;
    Matrix coeffs; // n x h
    double gamma = 0.5;
    bool rank_deficient = false;
};

KernelMap fit(const Matrix& train_data, const Matrix& train_embedding, double gamma = 0.5);

// Embed new points: kernel rows against the training set times the fitted
// coefficients.
Matrix transform(const KernelMap& map, const Matrix& queries);

} // namespace tsne
