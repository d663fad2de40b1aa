#pragma once

// Independent reference computations used as test oracles. These are direct
// nested sums written from the defining formulas; they share no code with the
// library kernels beyond the grid description.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "slab/grid.hpp"

namespace oracle {

using slab::cplx;

inline std::vector<cplx> random_values(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(nd(rng), nd(rng));
    return v;
}

// h^d sum_j f(y_j) e^{-i <y_j, xi_k>} for every FFT-ordered frequency index.
inline std::vector<cplx> forward_dft(const slab::GridSpec& g, const std::vector<cplx>& f) {
    const int n = g.n();
    std::vector<cplx> out(g.size());
    const double h = g.spacing();
    if (g.dim() == 1) {
        for (int k = 0; k < n; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += f[j] * std::exp(cplx(0.0, -g.coord(j) * g.freq(k)));
            out[k] = s * h;
        }
        return out;
    }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) {
            cplx s = 0.0;
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2)
                    s += f[j1 * n + j2] *
                         std::exp(cplx(0.0, -(g.coord(j1) * g.freq(k1) + g.coord(j2) * g.freq(k2))));
            out[k1 * n + k2] = s * h * h;
        }
    return out;
}

// (2 pi)^{-d} sum_k F(xi_k) e^{i <x_j, xi_k>} (2 pi / L)^d.
inline std::vector<cplx> inverse_dft(const slab::GridSpec& g, const std::vector<cplx>& F) {
    const int n = g.n();
    std::vector<cplx> out(g.size());
    const double w = 1.0 / g.extent();
    if (g.dim() == 1) {
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += F[k] * std::exp(cplx(0.0, g.coord(j) * g.freq(k)));
            out[j] = s * w;
        }
        return out;
    }
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) {
            cplx s = 0.0;
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = 0; k2 < n; ++k2)
                    s += F[k1 * n + k2] *
                         std::exp(cplx(0.0, g.coord(j1) * g.freq(k1) + g.coord(j2) * g.freq(k2)));
            out[j1 * n + j2] = s * w * w;
        }
    return out;
}

inline double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / (den > 0.0 ? den : 1.0));
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Nested-sum mixed norm: inner trapezoid in t (times given), outer Riemann in x.
// Infinite exponents are passed as negative values.
inline double mixed_norm(const std::vector<std::vector<cplx>>& u_by_time, const std::vector<double>& t,
                         double cell, double q, double r) {
    const std::size_t M = t.size();
    const std::size_t G = u_by_time[0].size();
    double outer = 0.0;
    for (std::size_t j = 0; j < G; ++j) {
        double inner;
        if (r < 0) {
            inner = 0.0;
            for (std::size_t m = 0; m < M; ++m) inner = std::max(inner, std::abs(u_by_time[m][j]));
        } else {
            double s = 0.0;
            for (std::size_t m = 0; m + 1 < M; ++m)
                s += 0.5 * (t[m + 1] - t[m]) *
                     (std::pow(std::abs(u_by_time[m][j]), r) + std::pow(std::abs(u_by_time[m + 1][j]), r));
            inner = std::pow(s, 1.0 / r);
        }
        if (q < 0)
            outer = std::max(outer, inner);
        else
            outer += std::pow(inner, q) * cell;
    }
    return q < 0 ? outer : std::pow(outer, 1.0 / q);
}

}  // namespace oracle
