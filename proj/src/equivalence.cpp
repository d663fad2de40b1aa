#include "slab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fftw3.h>

#include "slab/band.hpp"
#include "slab/fourier.hpp"

namespace slab {

namespace {

long long next_pow2(long long v) {
    long long p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

ScaledExtensionOperator::ScaledExtensionOperator(double lambda, const Exponent& q, int pad, double s_step)
    : lambda_(lambda), q_(q) {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("ScaledExtensionOperator: lambda must exceed 1");
    if (pad < 4 || (pad & (pad - 1)) != 0) throw std::invalid_argument("ScaledExtensionOperator: pad must be a power of two >= 4");
    if (!(s_step > 0.0) || s_step > 0.5) throw std::invalid_argument("ScaledExtensionOperator: s_step must lie in (0, 0.5]");
    // Largest eta is 24 lambda; keep it below 0.8 of the Nyquist frequency pi m.
    m_ = static_cast<int>(next_pow2(static_cast<long long>(std::ceil(1.25 * 24.0 * lambda / pi))));
    n_ = pad * m_;
    const int S = static_cast<int>(std::ceil(lambda / s_step));
    for (int k = 0; k <= S; ++k) s_.push_back(lambda + lambda * k / S);
    s_weight_ = trapezoid_weights(s_);
}

double ScaledExtensionOperator::data_norm(const std::vector<cplx>& f, const Exponent& p) const {
    if (f.size() != size()) throw std::invalid_argument("ScaledExtensionOperator: sample count mismatch");
    if (p.is_infinite()) {
        double mx = 0.0;
        for (const auto& z : f) mx = std::max(mx, std::abs(z));
        return mx;
    }
    const double pv = p.value();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double w = (j == 0 || j + 1 == f.size()) ? 0.5 / m_ : 1.0 / m_;
        acc += w * std::pow(std::abs(f[j]), pv);
    }
    return std::pow(acc, 1.0 / pv);
}

void ScaledExtensionOperator::transform(const std::vector<cplx>& f, double s, std::vector<cplx>& buf) const {
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    for (int j = 0; j <= 2 * m_; ++j) {
        const double y = coord(j);
        const double w = (j == 0 || j == 2 * m_) ? 0.5 / m_ : 1.0 / m_;
        buf[(j - m_ + n_) % n_] = w * f[j] * std::polar(1.0, s * y * y);
    }
    dft_inplace(buf.data(), 1, n_, FFTW_FORWARD);
}

namespace {

// Signed FFT indices k with 3s <= |eta_k| <= 12s on a grid of extent L.
template <class F>
void for_region(int n, double L, double s, F&& body) {
    const double de = 2.0 * pi / L;
    const int klo = static_cast<int>(std::ceil(3.0 * s / de)), khi = static_cast<int>(std::floor(12.0 * s / de));
    for (int k = klo; k <= khi; ++k) {
        body(k);
        body(n - k);
    }
}

}  // namespace

double ScaledExtensionOperator::image_norm(const std::vector<cplx>& f) const {
    if (f.size() != size()) throw std::invalid_argument("ScaledExtensionOperator: sample count mismatch");
    const double L = static_cast<double>(n_) / m_, de = 2.0 * pi / L;
    std::vector<cplx> buf(n_);
    double acc = 0.0;
    const bool qinf = q_.is_infinite();
    const double qv = qinf ? 0.0 : q_.value();
    for (std::size_t k = 0; k < s_.size(); ++k) {
        transform(f, s_[k], buf);
        double slice = 0.0;
        for_region(n_, L, s_[k], [&](int i) {
            if (qinf) slice = std::max(slice, std::abs(buf[i]));
            else slice += abs_pow_from_norm(std::norm(buf[i]), qv);
        });
        if (qinf) acc = std::max(acc, slice);
        else acc += s_weight_[k] * (lambda_ / s_[k]) * de * slice;
    }
    return qinf ? acc : std::pow(acc, 1.0 / qv);
}

double ScaledExtensionOperator::ratio(const std::vector<cplx>& f, const Exponent& p) const {
    const double den = data_norm(f, p);
    if (!(den > 0.0)) return 0.0;
    return image_norm(f) / den;
}

std::vector<cplx> ScaledExtensionOperator::pullback(const std::vector<cplx>& f) const {
    const double L = static_cast<double>(n_) / m_;
    std::vector<cplx> buf(n_), G(size(), 0.0);
    const bool qinf = q_.is_infinite();
    const double qv = qinf ? 0.0 : q_.value();
    std::size_t s_star = 0;
    int k_star = -1;
    if (qinf) {
        double best = -1.0;
        for (std::size_t k = 0; k < s_.size(); ++k) {
            transform(f, s_[k], buf);
            for_region(n_, L, s_[k], [&](int i) {
                if (std::abs(buf[i]) > best) {
                    best = std::abs(buf[i]);
                    s_star = k;
                    k_star = i;
                }
            });
        }
    }
    for (std::size_t k = 0; k < s_.size(); ++k) {
        if (qinf && k != s_star) continue;
        transform(f, s_[k], buf);
        std::vector<cplx> W(n_, 0.0);
        const double scale = qinf ? 1.0 : s_weight_[k] * (lambda_ / s_[k]) * (2.0 * pi / L);
        for_region(n_, L, s_[k], [&](int i) {
            const double n2 = std::norm(buf[i]);
            if (n2 == 0.0) return;
            if (qinf) {
                if (i == k_star) W[i] = buf[i] / std::sqrt(n2);
            } else {
                W[i] = scale * abs_pow_from_norm(n2, qv - 2.0) * buf[i];
            }
        });
        dft_inplace(W.data(), 1, n_, FFTW_BACKWARD);
        for (int j = 0; j <= 2 * m_; ++j) {
            const double y = coord(j);
            G[j] += W[(j - m_ + n_) % n_] * std::polar(1.0, -s_[k] * y * y);
        }
    }
    return G;
}

std::vector<cplx> ScaledExtensionOperator::duality_map(const std::vector<cplx>& G, const Exponent& p) const {
    std::vector<cplx> g = G;
    if (p.is_infinite()) {
        for (auto& z : g) z = std::abs(z) > 0.0 ? z / std::abs(z) : cplx(0.0, 0.0);
    } else if (p.rational() == Rational(1)) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < g.size(); ++j)
            if (std::abs(g[j]) > std::abs(g[best])) best = j;
        std::vector<cplx> delta(g.size(), 0.0);
        if (std::abs(g[best]) > 0.0) delta[best] = g[best] / std::abs(g[best]);
        g = std::move(delta);
    } else if (!(p.rational() == Rational(2))) {
        const double e = p.conjugate().value() - 2.0;
        for (auto& z : g) {
            const double n2 = std::norm(z);
            z *= n2 > 0.0 ? std::pow(n2, 0.5 * e) : 0.0;
        }
    }
    return g;
}

BallSamples ScaledExtensionOperator::as_ball_samples(const std::vector<cplx>& f) const {
    return BallSamples(1, 2 * m_ + 1, f);
}

ExtensionSide extension_side(double lambda, const Exponent& p, const Exponent& q, double beta,
                             const SearchBudget& budget) {
    budget.validate();
    const ScaledExtensionOperator op(lambda, q);
    ExtensionSide out;
    bool found = false;
    std::vector<cplx> best;
    double best_v = -1.0;
    auto normalized = [&](std::vector<cplx> f) {
        const double nrm = op.data_norm(f, p);
        if (!(nrm > 0.0)) throw std::runtime_error("extension_side: zero datum");
        for (auto& z : f) z /= nrm;
        return f;
    };
    auto consider = [&](const std::string& name, const std::vector<cplx>& f, double v) {
        if (!std::isfinite(v)) return;
        auto it = out.strategy_breakdown.find(name);
        if (it == out.strategy_breakdown.end()) out.strategy_breakdown[name] = v;
        else it->second = std::max(it->second, v);
        if (!found || v > best_v) {
            found = true;
            best_v = v;
            best = f;
            out.strategy = name;
        }
    };
    const int n = static_cast<int>(op.size());
    if (budget.extremizers) {
        for (double a : {0.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0}) {
            std::vector<cplx> f(n);
            for (int j = 0; j < n; ++j) f[j] = bump(op.coord(j)) * std::polar(1.0, a * lambda * op.coord(j));
            f = normalized(f);
            consider("modulated", f, op.ratio(f, p));
        }
        std::vector<cplx> ball(n, 0.0);
        const double r0 = 1.0 / (100.0 * lambda);
        for (int j = 0; j < n; ++j)
            if (std::abs(op.coord(j)) <= r0) ball[j] = 1.0;
        ball = normalized(ball);
        consider("small_ball", ball, op.ratio(ball, p));
    }
    std::mt19937_64 rng(budget.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int k = 0; k < budget.random_trials; ++k) {
        std::vector<cplx> f(n);
        for (auto& z : f) {
            const double a = nd(rng);
            const double b = nd(rng);
            z = cplx(a, b);
        }
        f = normalized(f);
        consider("random", f, op.ratio(f, p));
    }
    if (!found) throw std::runtime_error("extension_side: no finite evaluation within the budget");
    if (budget.ascent_iters > 0) {
        std::vector<cplx> f = best;
        double value = best_v;
        for (int it = 1; it <= budget.ascent_iters; ++it) {
            auto cand = op.duality_map(op.pullback(f), p);
            if (!(op.data_norm(cand, p) > 0.0)) break;
            cand = normalized(cand);
            bool accepted = false;
            double next = value;
            std::vector<cplx> trial = cand;
            for (int half = 0; half <= 3; ++half) {
                if (half > 0) {
                    trial = f;
                    const double tau = std::ldexp(1.0, -half);
                    for (std::size_t j = 0; j < trial.size(); ++j) trial[j] += tau * (cand[j] - f[j]);
                    trial = normalized(trial);
                }
                const double v = op.ratio(trial, p);
                if (!std::isfinite(v)) throw std::runtime_error("extension_side: non-finite ratio at iterate " + std::to_string(it));
                if (v >= value) {
                    next = v;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            const double gain = (next - value) / value;
            f = std::move(trial);
            value = next;
            if (gain <= budget.tol) break;
        }
        consider("ascent", f, value);
    }
    const double scale = std::pow(lambda, -beta);
    for (auto& [k, v] : out.strategy_breakdown) v *= scale;
    out.value = best_v * scale;
    out.witness = best;
    return out;
}

EquivalenceResult equivalence_ratio(double lambda, const Exponent& p, const Exponent& q, double beta,
                                    const SearchBudget& budget) {
    ExponentTriple t;
    t.p = p;
    t.q = q;
    t.r = q;
    t.d = 1;
    t.validate();
    EquivalenceResult res;
    res.lambda = lambda;
    res.gamma = (1.0 - p.reciprocal_d() - q.reciprocal_d()) - 2.0 * q.reciprocal_d() + 2.0 * beta;
    res.extension = extension_side(lambda, p, q, beta, budget).value;
    const auto band = estimate_band_norm(standard_band(lambda), lambda, t, Interval{-1.0, 1.0}, budget);
    res.schrodinger = std::pow(lambda, -res.gamma) * band.value;
    if (!(res.extension > 0.0) || !(res.schrodinger > 0.0))
        throw std::runtime_error("equivalence_ratio: a side of the ratio is zero");
    res.ratio = res.extension / res.schrodinger;
    return res;
}

}  // namespace slab
