#pragma once

// Dense matrix of the discretized band operator, built from the closed form
// e^{i eta y - i t eta^2} rather than the FFT path.

#include <Eigen/Dense>

#include <cmath>

#include "slab/band.hpp"

namespace oracle {

// Rows (lab point, time) weighted by sqrt(h w_m); columns scaled so that
// coefficient vectors carry the L^2 norm of the comoving datum.
inline Eigen::MatrixXcd dense_band_operator(const slab::BandOperator& op) {
    const int n = op.n(), M = op.samples();
    const int K = static_cast<int>(op.modes());
    const double h = op.spacing();
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(n) * M, K);
    for (int m = 0; m < M; ++m) {
        const double t = op.times()[m];
        const double w = std::sqrt(h * op.weights()[m]);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < K; ++k) {
                const double e = op.eta(k);
                A(static_cast<Eigen::Index>(m) * n + j, k) = w * std::polar(1.0, e * j * h - t * e * e) / std::sqrt(h * n);
            }
    }
    return A;
}

}  // namespace oracle
