#include "slab/band.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fftw3.h>

#include "slab/fourier.hpp"
#include "slab/propagator.hpp"

namespace slab {

void BandOptions::validate() const {
    if (!(carrier > 0.0) || !(half_width > 0.0) || !(half_width < carrier))
        throw std::invalid_argument("BandOptions: need 0 < half_width < carrier");
    if (!(margin >= 0.0)) throw std::invalid_argument("BandOptions: margin must be non-negative");
    if (points < 0) throw std::invalid_argument("BandOptions: points must be non-negative");
}

double abs_pow_from_norm(double norm2, double r) {
    if (r == 2.0) return norm2;
    if (r == 4.0) return norm2 * norm2;
    const double half = 0.5 * r;
    if (half == std::floor(half) && half <= 16.0) {
        double out = 1.0;
        for (int i = 0; i < static_cast<int>(half); ++i) out *= norm2;
        return out;
    }
    return norm2 > 0.0 ? std::pow(norm2, half) : 0.0;
}

namespace {

long long next_pow2(long long v) {
    long long p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Phase steps are re-anchored with an exact evaluation this often.
constexpr std::size_t kAnchor = 256;

}  // namespace

BandOperator::BandOperator(double lambda, const Interval& I, const BandOptions& opt)
    : lambda_(lambda), I_(I), opt_(opt) {
    opt.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("BandOperator: lambda must be positive");
    if (!(I.length() >= 0.0)) throw std::invalid_argument("BandOperator: interval must be ordered");
    kappa_ = opt.carrier * lambda;
    w_ = opt.half_width * lambda;
    const double len = I.length();
    if (len > 0.0) {
        const int M = time_samples_for_band(lambda, I, opt.time_cap);
        times_ = uniform_times(I, M);
        weights_ = trapezoid_weights(times_);
        dt_ = len / (M - 1);
        h_ = 2.0 * kappa_ * dt_;
    } else {
        times_ = {I.lo};
        weights_ = {1.0};
        h_ = 1.0 / lambda;
    }
    if (!(pi / h_ >= 2.0 * w_)) throw std::invalid_argument("BandOperator: comoving grid does not resolve the band");
    const double need = (2.0 * kappa_ * len + opt.margin * lambda) / h_;
    const long long n_min = std::max<long long>(8, static_cast<long long>(std::ceil(need - 1e-9)));
    if (opt.points > 0) {
        if (opt.points < n_min)
            throw std::invalid_argument("BandOperator: grid override smaller than the transport distance (need " +
                                        std::to_string(n_min) + ")");
        n_ = opt.points;
    } else {
        n_ = static_cast<int>(next_pow2(n_min));
    }
    const double L = h_ * n_;
    for (int k = 0; k < n_; ++k) {
        const int s = k < n_ / 2 ? k : k - n_;
        const double e = 2.0 * pi * s / L;
        if (std::abs(e) <= w_ * (1.0 + 1e-12)) {
            eta_.push_back(e);
            index_.push_back(k);
        }
    }
    if (eta_.empty()) throw std::invalid_argument("BandOperator: band contains no grid frequency");
    for (double e : eta_) step_.push_back(std::polar(1.0, -dt_ * e * e));
}

std::vector<cplx> BandOperator::synthesize(const std::vector<cplx>& c) const {
    if (c.size() != modes()) throw std::invalid_argument("BandOperator: coefficient count mismatch");
    std::vector<cplx> g(n_, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) g[index_[k]] = c[k];
    dft_inplace(g.data(), 1, n_, FFTW_BACKWARD);
    return g;
}

std::vector<cplx> BandOperator::analyze(const std::vector<cplx>& g) const {
    if (g.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("BandOperator: sample count mismatch");
    std::vector<cplx> buf = g;
    dft_inplace(buf.data(), 1, n_, FFTW_FORWARD);
    std::vector<cplx> c(modes());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = buf[index_[k]] / static_cast<double>(n_);
    return c;
}

double BandOperator::data_norm(const std::vector<cplx>& c, const Exponent& p) const {
    const auto g = synthesize(c);
    return lebesgue_norm(g.data(), g.size(), h_, p);
}

void BandOperator::slice(const std::vector<cplx>& c, std::size_t m, std::vector<cplx>& phase,
                         std::vector<cplx>& buf) const {
    const std::size_t K = modes();
    if (m % kAnchor == 0) {
        for (std::size_t k = 0; k < K; ++k) phase[k] = std::polar(1.0, -times_[m] * eta_[k] * eta_[k]);
    } else {
        for (std::size_t k = 0; k < K; ++k) phase[k] *= step_[k];
    }
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < K; ++k) buf[index_[k]] = c[k] * phase[k];
    dft_inplace(buf.data(), 1, n_, FFTW_BACKWARD);
}

struct BandOperator::Pass {
    std::vector<double> inner;  // sum_m w_m |u|^r, or max_m |u| for r = inf
    std::vector<int> argmax;    // r = inf only
};

BandOperator::Pass BandOperator::forward_pass(const std::vector<cplx>& c, const Exponent& r) const {
    if (c.size() != modes()) throw std::invalid_argument("BandOperator: coefficient count mismatch");
    Pass out;
    out.inner.assign(lab_points(), 0.0);
    const bool rinf = r.is_infinite();
    const double rv = rinf ? 0.0 : r.value();
    if (rinf) out.argmax.assign(lab_points(), 0);
    std::vector<cplx> phase(modes()), buf(n_);
    for (std::size_t m = 0; m < times_.size(); ++m) {
        slice(c, m, phase, buf);
        double* acc = out.inner.data() + m;
        if (rinf) {
            int* arg = out.argmax.data() + m;
            for (int j = 0; j < n_; ++j) {
                const double a = std::abs(buf[j]);
                if (a > acc[j]) {
                    acc[j] = a;
                    arg[j] = static_cast<int>(m);
                }
            }
        } else {
            const double wm = weights_[m];
            for (int j = 0; j < n_; ++j) acc[j] += wm * abs_pow_from_norm(std::norm(buf[j]), rv);
        }
    }
    return out;
}

double BandOperator::image_norm(const std::vector<cplx>& c, const Exponent& q, const Exponent& r) const {
    const Pass p = forward_pass(c, r);
    const double inv_r = r.is_infinite() ? 1.0 : 1.0 / r.value();
    if (q.is_infinite()) {
        double best = 0.0;
        for (double v : p.inner) best = std::max(best, v);
        return r.is_infinite() ? best : std::pow(best, inv_r);
    }
    const double e = q.value() * inv_r;
    double acc = 0.0;
    for (double v : p.inner) acc += v > 0.0 ? std::pow(v, e) : 0.0;
    return std::pow(acc * h_, 1.0 / q.value());
}

double BandOperator::ratio(const std::vector<cplx>& c, const ExponentTriple& t) const {
    const double den = data_norm(c, t.p);
    if (!(den > 0.0)) return 0.0;
    return image_norm(c, t.q, t.r) / den;
}

std::vector<cplx> BandOperator::dual_pullback(const std::vector<cplx>& c, const Exponent& q,
                                              const Exponent& r) const {
    const Pass p = forward_pass(c, r);
    const bool rinf = r.is_infinite(), qinf = q.is_infinite();
    const double rv = rinf ? 0.0 : r.value();
    const std::size_t P = lab_points();
    // S_i = ||u(x_i, .)||_r, scaled by its maximum.
    std::vector<double> S(P);
    for (std::size_t i = 0; i < P; ++i) S[i] = rinf ? p.inner[i] : std::pow(p.inner[i], 1.0 / rv);
    std::size_t istar = 0;
    for (std::size_t i = 1; i < P; ++i)
        if (S[i] > S[istar]) istar = i;
    const double smax = S[istar];
    std::vector<double> F(P, 0.0);
    if (smax > 0.0) {
        if (qinf) {
            F[istar] = 1.0;
        } else {
            const double e = rinf ? q.value() - 1.0 : q.value() - rv;
            for (std::size_t i = 0; i < P; ++i) F[i] = S[i] > 0.0 ? std::pow(S[i] / smax, e) : 0.0;
        }
    }
    const std::size_t K = modes();
    std::vector<cplx> G(K, 0.0), phase(K), buf(n_);
    for (std::size_t m = 0; m < times_.size(); ++m) {
        slice(c, m, phase, buf);
        const double* f = F.data() + m;
        if (rinf) {
            const int* arg = p.argmax.data() + m;
            for (int j = 0; j < n_; ++j) {
                const double a = std::abs(buf[j]);
                buf[j] = (f[j] > 0.0 && arg[j] == static_cast<int>(m) && a > 0.0) ? f[j] * buf[j] / a : cplx(0.0, 0.0);
            }
        } else {
            const double wm = weights_[m];
            for (int j = 0; j < n_; ++j) {
                const double n2 = std::norm(buf[j]);
                const double mag = (f[j] > 0.0 && n2 > 0.0) ? wm * f[j] * abs_pow_from_norm(n2, rv - 2.0) : 0.0;
                buf[j] *= mag;
            }
        }
        dft_inplace(buf.data(), 1, n_, FFTW_FORWARD);
        for (std::size_t k = 0; k < K; ++k) G[k] += std::conj(phase[k]) * buf[index_[k]];
    }
    return G;
}

std::vector<cplx> BandOperator::duality_map(const std::vector<cplx>& G, const Exponent& p) const {
    if (!p.is_infinite() && p.rational() == Rational(2)) return G;
    auto g = synthesize(G);
    if (p.is_infinite()) {
        for (auto& z : g) {
            const double a = std::abs(z);
            z = a > 0.0 ? z / a : cplx(0.0, 0.0);
        }
    } else if (p.rational() == Rational(1)) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < g.size(); ++j)
            if (std::abs(g[j]) > std::abs(g[best])) best = j;
        const double a = std::abs(g[best]);
        std::vector<cplx> delta(g.size(), 0.0);
        if (a > 0.0) delta[best] = g[best] / a;
        g = std::move(delta);
    } else {
        const double e = p.conjugate().value() - 2.0;
        for (auto& z : g) {
            const double n2 = std::norm(z);
            z *= n2 > 0.0 ? std::pow(n2, 0.5 * e) : 0.0;
        }
    }
    return analyze(g);
}

std::vector<cplx> BandOperator::normalized(const std::vector<cplx>& c, const Exponent& p) const {
    const double nrm = data_norm(c, p);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::invalid_argument("BandOperator: datum has zero or non-finite norm");
    std::vector<cplx> out = c;
    for (auto& z : out) z /= nrm;
    return out;
}

std::vector<cplx> band_focusing(const BandOperator& op, double t_focus) {
    const double k = op.kappa(), L = op.extent();
    std::vector<cplx> c(op.modes());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = op.eta(i);
        c[i] = bump(e / op.half_width()) * std::polar(1.0, t_focus * (k + e) * (k + e) - 0.5 * e * L);
    }
    return c;
}

std::vector<cplx> band_knapp(const BandOperator& op, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("band_knapp: eps must be positive");
    std::vector<cplx> c(op.modes());
    const double L = op.extent();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = op.eta(i);
        c[i] = bump((e + op.half_width() - eps) / eps) * std::polar(1.0, -0.5 * e * L);
    }
    bool any = false;
    for (const auto& z : c) any = any || z != cplx(0.0, 0.0);
    if (!any) throw std::invalid_argument("band_knapp: eps below the frequency spacing");
    return c;
}

std::vector<cplx> band_plate(const BandOperator& op, double length) {
    if (!(length > 0.0)) throw std::invalid_argument("band_plate: length must be positive");
    std::vector<cplx> g(op.n());
    const double L = op.extent();
    for (int j = 0; j < op.n(); ++j) g[j] = bump((j * op.spacing() - 0.5 * L) / length);
    return op.analyze(g);
}

std::vector<cplx> band_random(const BandOperator& op, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<cplx> c(op.modes());
    for (auto& z : c) {
        const double a = nd(rng);
        const double b = nd(rng);
        z = cplx(a, b);
    }
    return c;
}

}  // namespace slab
