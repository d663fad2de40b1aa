#include "slab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <tuple>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace slab {

namespace {

struct PlanKey {
    int dim, n, sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(dim, n, sign) < std::tie(o.dim, o.n, o.sign);
    }
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        PlanKey key{dim, n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = dim == 1 ? n : static_cast<std::size_t>(n) * n;
        fftw_complex* buf = fftw_alloc_complex(total);
        // ESTIMATE planning is deterministic, so repeated runs are bit-identical.
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan p = dim == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, flags)
                               : fftw_plan_dft_2d(n, n, buf, buf, sign, flags);
        fftw_free(buf);
        if (!p) throw std::runtime_error("FFTW plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

// (-1)^{sum of indices}: the phase e^{i xi L/2} from the grid origin at -L/2.
double parity(const GridSpec& g, std::size_t idx) {
    int s = 0;
    if (g.dim() == 1) {
        s = static_cast<int>(idx);
    } else {
        s = static_cast<int>(idx / g.n()) + static_cast<int>(idx % g.n());
    }
    return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

void dft_inplace(cplx* data, int dim, int n, int sign) {
    fftw_plan p = cache().get(dim, n, sign);
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, d, d);
}

SampledField forward_transform(const SampledField& f) {
    if (f.side != Side::space) throw std::invalid_argument("forward_transform: field is not space-side");
    SampledField out = f;
    out.side = Side::frequency;
    dft_inplace(out.values.data(), f.grid.dim(), f.grid.n(), FFTW_FORWARD);
    const double vol = f.grid.cell_volume();
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= vol * parity(f.grid, i);
    return out;
}

SampledField inverse_transform(const SampledField& fhat) {
    if (fhat.side != Side::frequency)
        throw std::invalid_argument("inverse_transform: field is not frequency-side");
    SampledField out = fhat;
    out.side = Side::space;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= parity(fhat.grid, i);
    dft_inplace(out.values.data(), fhat.grid.dim(), fhat.grid.n(), FFTW_BACKWARD);
    const double scale = 1.0 / std::pow(fhat.grid.extent(), fhat.grid.dim());
    for (auto& z : out.values) z *= scale;
    return out;
}

std::vector<double> frequency_vectors(const GridSpec& g) {
    std::vector<double> out(g.size() * g.dim());
    if (g.dim() == 1) {
        for (int k = 0; k < g.n(); ++k) out[k] = g.freq(k);
    } else {
        std::size_t idx = 0;
        for (int a = 0; a < g.n(); ++a)
            for (int b = 0; b < g.n(); ++b, ++idx) {
                out[2 * idx] = g.freq(a);
                out[2 * idx + 1] = g.freq(b);
            }
    }
    return out;
}

std::vector<double> frequency_norms(const GridSpec& g) {
    auto v = frequency_vectors(g);
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) s += v[i * g.dim() + a] * v[i * g.dim() + a];
        out[i] = std::sqrt(s);
    }
    return out;
}

SampledField apply_multiplier_table(const SampledField& f, const std::vector<cplx>& table) {
    if (f.side != Side::space) throw std::invalid_argument("apply_multiplier: field is not space-side");
    if (table.size() != f.grid.size()) throw std::invalid_argument("apply_multiplier: table size mismatch");
    SampledField out = f;
    dft_inplace(out.values.data(), f.grid.dim(), f.grid.n(), FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= table[i] * scale;
    dft_inplace(out.values.data(), f.grid.dim(), f.grid.n(), FFTW_BACKWARD);
    return out;
}

SampledField apply_multiplier(const SampledField& f, const Multiplier& m) {
    const auto xi = frequency_vectors(f.grid);
    std::vector<cplx> table(f.grid.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = m(&xi[i * f.grid.dim()]);
        if (!std::isfinite(table[i].real()) || !std::isfinite(table[i].imag()))
            throw std::invalid_argument("apply_multiplier: multiplier is not finite on the grid");
    }
    return apply_multiplier_table(f, table);
}

double lp_phi(double r) {
    r = std::abs(r);
    if (r <= 4.0 / 3.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return smooth_step((2.0 - r) / (2.0 - 4.0 / 3.0));
}

double lp_psi(int k, double r) {
    if (k < 1) throw std::invalid_argument("lp_psi: k must be >= 1");
    return lp_phi(std::ldexp(r, -k)) - lp_phi(std::ldexp(r, 1 - k));
}

int lp_max_index(const GridSpec& g) {
    int k = 0;
    while (std::ldexp(1.0, k + 2) < g.nyquist()) ++k;
    return k;
}

std::vector<double> lp_window(const GridSpec& g, int k) {
    const int K = lp_max_index(g);
    if (k < 0 || k > K) throw std::invalid_argument("littlewood_paley: k too large for grid");
    const auto r = frequency_norms(g);
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (k >= 1) {
            w[i] = lp_psi(k, r[i]);
        } else {
            double s = 0.0;
            for (int j = 1; j <= K; ++j) s += lp_psi(j, r[i]);
            w[i] = 1.0 - s;
        }
    }
    return w;
}

SampledField littlewood_paley_project(const SampledField& f, int k) {
    const auto w = lp_window(f.grid, k);
    std::vector<cplx> table(w.begin(), w.end());
    return apply_multiplier_table(f, table);
}

}  // namespace slab
