#include "slab/propagator.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "slab/fourier.hpp"

namespace slab {

std::vector<double> uniform_times(const Interval& I, int M) {
    if (M < 2) throw std::invalid_argument("uniform_times: need at least two samples");
    std::vector<double> t(M);
    const double dt = I.length() / (M - 1);
    for (int m = 0; m < M; ++m) t[m] = I.lo + m * dt;
    t.back() = I.hi;
    return t;
}

int time_samples_for_band(double lambda, const Interval& I, int cap) {
    const double need = 8.0 * lambda * lambda * I.length() / (2.0 * pi);
    int M = std::max(2, static_cast<int>(std::ceil(need)) + 1);
    if (M > cap) throw std::invalid_argument("time_samples_for_band: sample budget exceeded");
    return M;
}

namespace {

std::vector<cplx> symbol_table(const GridSpec& g, double t) {
    const auto r = frequency_norms(g);
    std::vector<cplx> tab(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) tab[i] = std::polar(1.0, -t * r[i] * r[i]);
    return tab;
}

}  // namespace

SampledField evolve_spectral_at(const SampledField& f, double t) {
    if (t == 0.0) return f;
    return apply_multiplier_table(f, symbol_table(f.grid, t));
}

SpaceTimeField evolve_spectral(const SampledField& f, const std::vector<double>& times,
                               const Interval& I, Exec exec) {
    if (times.empty()) throw std::invalid_argument("evolve_spectral: empty time list");
    f.validate();
    const std::size_t G = f.grid.size();
    const std::ptrdiff_t M = static_cast<std::ptrdiff_t>(times.size());
    std::vector<cplx> out(G * times.size());
    SampledField fh = f;
    dft_inplace(fh.values.data(), f.grid.dim(), f.grid.n(), -1);
    const auto r = frequency_norms(f.grid);
    const double scale = 1.0 / static_cast<double>(G);
    auto one = [&](std::ptrdiff_t m) {
        cplx* dst = out.data() + m * G;
        const double t = times[m];
        for (std::size_t i = 0; i < G; ++i) dst[i] = fh.values[i] * std::polar(scale, -t * r[i] * r[i]);
        dft_inplace(dst, f.grid.dim(), f.grid.n(), +1);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t m = 0; m < M; ++m) one(m);
    } else {
        for (std::ptrdiff_t m = 0; m < M; ++m) one(m);
    }
    return SpaceTimeField(f.grid, times, I, std::move(out));
}

namespace {

// 1D kernel sum along one axis: out[i] = sum_j K[i-j] in[j] with stride.
void kernel_axis(const std::vector<cplx>& K, const cplx* in, cplx* out, int n, std::size_t stride) {
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += K[i - j + n - 1] * in[j * stride];
        out[i * stride] = s;
    }
}

}  // namespace

SampledField evolve_kernel(const SampledField& f, double t, Exec exec, std::vector<std::string>* warnings) {
    if (t == 0.0) throw std::invalid_argument("evolve_kernel: t = 0 is singular");
    f.validate();
    const GridSpec& g = f.grid;
    const int n = g.n();
    const double h = g.spacing();
    const int d = g.dim();

    if (warnings) {
        double total = 0.0, edge = 0.0;
        for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
            const double e = std::norm(f.values[idx]);
            total += e;
            bool near = false;
            std::size_t rem = idx;
            for (int a = 0; a < d; ++a) {
                const int i = static_cast<int>(rem % n);
                rem /= n;
                if (i < 2 || i >= n - 2) near = true;
            }
            if (near) edge += e;
        }
        if (total > 0.0 && std::sqrt(edge / total) > 1e-6) {
            std::ostringstream os;
            os << "evolve_kernel: relative mass " << std::sqrt(edge / total)
               << " within two cells of the cube boundary";
            warnings->push_back(os.str());
        }
    }

    // Per-axis factor (4 pi i t)^{-1/2} h e^{i (k h)^2 / 4t}, k = i - j.
    const cplx pref = std::pow(cplx(0.0, 4.0 * pi * t), -0.5) * h;
    std::vector<cplx> K(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k) {
        const double dx = k * h;
        K[k + n - 1] = pref * std::polar(1.0, dx * dx / (4.0 * t));
    }

    SampledField out = SampledField::zeros(g);
    if (d == 1) {
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < n; ++i) {
                cplx s = 0.0;
                for (int j = 0; j < n; ++j) s += K[i - j + n - 1] * f.values[j];
                out.values[i] = s;
            }
        } else {
            kernel_axis(K, f.values.data(), out.values.data(), n, 1);
        }
        return out;
    }
    // Separable kernel: apply along axis 1 (contiguous), then axis 0.
    std::vector<cplx> tmp(g.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int a = 0; a < n; ++a)
            kernel_axis(K, f.values.data() + static_cast<std::size_t>(a) * n, tmp.data() + static_cast<std::size_t>(a) * n, n, 1);
#pragma omp parallel for schedule(static)
        for (int b = 0; b < n; ++b) kernel_axis(K, tmp.data() + b, out.values.data() + b, n, n);
    } else {
        for (int a = 0; a < n; ++a)
            kernel_axis(K, f.values.data() + static_cast<std::size_t>(a) * n, tmp.data() + static_cast<std::size_t>(a) * n, n, 1);
        for (int b = 0; b < n; ++b) kernel_axis(K, tmp.data() + b, out.values.data() + b, n, n);
    }
    return out;
}

namespace {

// Evaluates the trigonometric interpolant with DFT coefficients in_hat at the
// points scale * x_i; the Nyquist mode is split as a cosine.
void interp_axis(const GridSpec& g, double scale, const cplx* in_hat, cplx* out, std::size_t stride) {
    const int n = g.n();
    const double L = g.extent();
    for (int i = 0; i < n; ++i) {
        const double x = g.coord(i) * scale;
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) {
            const int ks = g.signed_index(k);
            const double xi = 2.0 * pi / L * ks;
            if (ks == -n / 2)
                s += in_hat[k * stride] * std::cos(xi * (x + 0.5 * L));
            else
                s += in_hat[k * stride] * std::polar(1.0, xi * (x + 0.5 * L));
        }
        out[i * stride] = s / static_cast<double>(n);
    }
}

}  // namespace

SampledField dilate(const SampledField& f, double scale, Exec exec) {
    f.validate();
    const GridSpec& g = f.grid;
    const int n = g.n();
    std::vector<cplx> hat = f.values;
    SampledField out = SampledField::zeros(g);
    if (g.dim() == 1) {
        dft_inplace(hat.data(), 1, n, -1);
        interp_axis(g, scale, hat.data(), out.values.data(), 1);
        return out;
    }
    // Separable: transform and interpolate axis 1 (contiguous), then axis 0.
    std::vector<cplx> tmp(g.size());
    auto rows = [&](std::ptrdiff_t a) {
        std::vector<cplx> row(hat.begin() + a * n, hat.begin() + (a + 1) * n);
        dft_inplace(row.data(), 1, n, -1);
        interp_axis(g, scale, row.data(), tmp.data() + a * n, 1);
    };
    auto cols = [&](std::ptrdiff_t b) {
        std::vector<cplx> col(n);
        for (int a = 0; a < n; ++a) col[a] = tmp[static_cast<std::size_t>(a) * n + b];
        dft_inplace(col.data(), 1, n, -1);
        std::vector<cplx> res(n);
        interp_axis(g, scale, col.data(), res.data(), 1);
        for (int a = 0; a < n; ++a) out.values[static_cast<std::size_t>(a) * n + b] = res[a];
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t a = 0; a < n; ++a) rows(a);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < n; ++b) cols(b);
    } else {
        for (std::ptrdiff_t a = 0; a < n; ++a) rows(a);
        for (std::ptrdiff_t b = 0; b < n; ++b) cols(b);
    }
    return out;
}

RescaledDatum time_rescale(const SampledField& f, double lambda, double b, const ExponentTriple& t) {
    if (!(lambda > 1.0)) throw std::invalid_argument("time_rescale: lambda must exceed 1");
    const double lo = 1.0 / ((8.0 * lambda) * (8.0 * lambda));
    if (!(b > lo && b <= 1.0)) throw std::invalid_argument("time_rescale: b outside ((8 lambda)^-2, 1]");
    const double sb = std::sqrt(b);
    const int d = f.grid.dim();
    RescaledDatum out;
    out.b = b;
    out.field = (b == 1.0) ? f : dilate(f, sb);
    const double ir = t.r.reciprocal_d(), iq = t.q.reciprocal_d(), ip = t.p.reciprocal_d();
    out.time_factor = std::pow(b, ir);
    out.space_factor = std::pow(sb, d * iq);
    out.lemma_factor = std::pow(sb, -d * (ip - iq) + 2.0 * ir);
    return out;
}

}  // namespace slab
