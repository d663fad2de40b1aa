#include "slab/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fftw3.h>

#include "slab/fourier.hpp"

namespace slab {

void check_bilinear_pair(double N, const Disc& a, const Disc& b) {
    for (const Disc* d : {&a, &b}) {
        if (!(d->radius > 0.0)) throw std::invalid_argument("bilinear pair: disc radius must be positive");
        if (std::hypot(d->center[0] - N, d->center[1]) + d->radius > 4.0 + 1e-12)
            throw std::invalid_argument("bilinear pair: disc leaves {|xi - N e_1| <= 4}");
    }
    const double gap = std::hypot(a.center[0] - b.center[0], a.center[1] - b.center[1]) - a.radius - b.radius;
    if (gap < 1.0 - 1e-12) throw std::invalid_argument("bilinear pair: supports are not 1-separated");
}

void BilinearOptions::validate() const {
    if (!(spacing > 0.0) || spacing > 0.5) throw std::invalid_argument("BilinearOptions: spacing must lie in (0, 0.5]");
    if (!(margin >= 0.0)) throw std::invalid_argument("BilinearOptions: margin must be non-negative");
}

namespace {

long long next_pow2(long long v) {
    long long p = 1;
    while (p < v) p <<= 1;
    return p;
}

std::vector<cplx> step_toward(const std::vector<cplx>& a, const std::vector<cplx>& b, double tau) {
    std::vector<cplx> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + tau * (b[k] - a[k]);
    return out;
}

}  // namespace

BilinearOperator::BilinearOperator(double N, double rho, const BilinearOptions& opt) : N_(N), rho_(rho) {
    opt.validate();
    if (!(N > 1.0) || !std::isfinite(N)) throw std::invalid_argument("BilinearOperator: N must exceed 1");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("BilinearOperator: rho must be positive");
    const long long steps = static_cast<long long>(std::ceil(2.0 * N * rho / opt.spacing - 1e-9));
    h_ = 2.0 * N * rho / steps;
    const double need = (16.0 * rho + opt.margin) / h_;
    n_ = static_cast<int>(next_pow2(static_cast<long long>(std::ceil(need))));
    times_.resize(steps + 1);
    for (long long m = 0; m <= steps; ++m) times_[m] = rho * static_cast<double>(m) / steps;
    weights_ = trapezoid_weights(times_);
}

double BilinearOperator::freq(int k) const {
    const int s = k < n_ / 2 ? k : k - n_;
    return 2.0 * pi * s / (n_ * h_);
}

std::vector<int> BilinearOperator::modes(const Disc& d) const {
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (std::hypot(freq(a) + N_ - d.center[0], freq(b) - d.center[1]) <= d.radius) out.push_back(a * n_ + b);
    if (out.empty()) throw std::invalid_argument("BilinearOperator: disc contains no grid frequency");
    return out;
}

std::vector<cplx> BilinearOperator::synthesize(const Disc& d, const std::vector<cplx>& c) const {
    const auto idx = modes(d);
    if (c.size() != idx.size()) throw std::invalid_argument("BilinearOperator: coefficient count mismatch");
    std::vector<cplx> g(static_cast<std::size_t>(n_) * n_, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) g[idx[k]] = c[k];
    dft_inplace(g.data(), 2, n_, FFTW_BACKWARD);
    return g;
}

std::vector<cplx> BilinearOperator::analyze(const Disc& d, const std::vector<cplx>& g) const {
    const auto idx = modes(d);
    std::vector<cplx> buf = g;
    dft_inplace(buf.data(), 2, n_, FFTW_FORWARD);
    std::vector<cplx> c(idx.size());
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (std::size_t k = 0; k < idx.size(); ++k) c[k] = buf[idx[k]] * scale;
    return c;
}

double BilinearOperator::data_norm(const Disc& d, const std::vector<cplx>& c, const Exponent& p) const {
    const auto g = synthesize(d, c);
    return lebesgue_norm(g.data(), g.size(), h_ * h_, p);
}

void BilinearOperator::slice(const Disc&, const std::vector<int>& idx, const std::vector<cplx>& c, double t,
                             std::vector<cplx>& buf) const {
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double a = freq(idx[k] / n_), b = freq(idx[k] % n_);
        buf[idx[k]] = c[k] * std::polar(1.0, -t * (a * a + b * b));
    }
    dft_inplace(buf.data(), 2, n_, FFTW_BACKWARD);
}

namespace {

void require_finite(const Exponent& q, const Exponent& r) {
    if (q.is_infinite() || r.is_infinite())
        throw std::invalid_argument("BilinearOperator: q and r must be finite");
}

}  // namespace

double BilinearOperator::product_norm(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2,
                                      const std::vector<cplx>& c2, const Exponent& q, const Exponent& r) const {
    require_finite(q, r);
    const auto i1 = modes(d1), i2 = modes(d2);
    if (c1.size() != i1.size() || c2.size() != i2.size())
        throw std::invalid_argument("BilinearOperator: coefficient count mismatch");
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    const double rh = 0.5 * r.value();
    std::vector<double> acc((n_ + times_.size() - 1) * n_, 0.0);
    std::vector<cplx> u1(nn), u2(nn);
    for (std::size_t m = 0; m < times_.size(); ++m) {
        slice(d1, i1, c1, times_[m], u1);
        slice(d2, i2, c2, times_[m], u2);
        double* a = acc.data() + m * n_;
        for (std::size_t j = 0; j < nn; ++j) a[j] += weights_[m] * abs_pow_from_norm(std::norm(u1[j] * u2[j]), rh);
    }
    const double e = q.value() / r.value();
    double s = 0.0;
    for (double v : acc) s += v > 0.0 ? std::pow(v, e) : 0.0;
    return std::pow(s * h_ * h_, 2.0 / q.value());
}

double BilinearOperator::ratio(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2,
                               const std::vector<cplx>& c2, const ExponentTriple& t) const {
    const double den = data_norm(d1, c1, t.p) * data_norm(d2, c2, t.p);
    if (!(den > 0.0)) return 0.0;
    return product_norm(d1, c1, d2, c2, t.q, t.r) / den;
}

std::vector<cplx> BilinearOperator::pullback_first(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2,
                                                   const std::vector<cplx>& c2, const Exponent& q,
                                                   const Exponent& r) const {
    require_finite(q, r);
    const auto i1 = modes(d1), i2 = modes(d2);
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    const double rh = 0.5 * r.value();
    std::vector<double> acc((n_ + times_.size() - 1) * n_, 0.0);
    std::vector<cplx> u1(nn), u2(nn);
    for (std::size_t m = 0; m < times_.size(); ++m) {
        slice(d1, i1, c1, times_[m], u1);
        slice(d2, i2, c2, times_[m], u2);
        double* a = acc.data() + m * n_;
        for (std::size_t j = 0; j < nn; ++j) a[j] += weights_[m] * abs_pow_from_norm(std::norm(u1[j] * u2[j]), rh);
    }
    double amax = 0.0;
    for (double v : acc) amax = std::max(amax, v);
    const double e = q.value() / r.value() - 1.0;
    std::vector<double> F(acc.size(), 0.0);
    if (amax > 0.0)
        for (std::size_t i = 0; i < acc.size(); ++i) F[i] = acc[i] > 0.0 ? std::pow(acc[i] / amax, e) : 0.0;
    std::vector<cplx> G(i1.size(), 0.0);
    for (std::size_t m = 0; m < times_.size(); ++m) {
        slice(d1, i1, c1, times_[m], u1);
        slice(d2, i2, c2, times_[m], u2);
        const double* f = F.data() + m * n_;
        for (std::size_t j = 0; j < nn; ++j) {
            const cplx P = u1[j] * u2[j];
            const double n2 = std::norm(P);
            const double mag = (f[j] > 0.0 && n2 > 0.0) ? weights_[m] * f[j] * abs_pow_from_norm(n2, rh - 2.0) : 0.0;
            u1[j] = mag * P * std::conj(u2[j]);
        }
        dft_inplace(u1.data(), 2, n_, FFTW_FORWARD);
        for (std::size_t k = 0; k < i1.size(); ++k) {
            const double a = freq(i1[k] / n_), b = freq(i1[k] % n_);
            G[k] += std::polar(1.0, times_[m] * (a * a + b * b)) * u1[i1[k]];
        }
    }
    return G;
}

std::vector<cplx> BilinearOperator::duality_map(const Disc& d, const std::vector<cplx>& G, const Exponent& p) const {
    if (!p.is_infinite() && p.rational() == Rational(2)) return G;
    auto g = synthesize(d, G);
    if (p.is_infinite()) {
        for (auto& z : g) {
            const double a = std::abs(z);
            z = a > 0.0 ? z / a : cplx(0.0, 0.0);
        }
    } else if (p.rational() == Rational(1)) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < g.size(); ++j)
            if (std::abs(g[j]) > std::abs(g[best])) best = j;
        std::vector<cplx> delta(g.size(), 0.0);
        if (std::abs(g[best]) > 0.0) delta[best] = g[best] / std::abs(g[best]);
        g = std::move(delta);
    } else {
        const double e = p.conjugate().value() - 2.0;
        for (auto& z : g) {
            const double n2 = std::norm(z);
            z *= n2 > 0.0 ? std::pow(n2, 0.5 * e) : 0.0;
        }
    }
    return analyze(d, g);
}

namespace {

std::vector<cplx> bump_coeffs(const BilinearOperator& op, const Disc& d, std::array<double, 2> offset) {
    const auto idx = op.modes(d);
    const int n = op.n();
    const double L = n * op.spacing();
    std::vector<cplx> c(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const int ka = idx[k] / n, kb = idx[k] % n;
        const double a = 2.0 * pi * (ka < n / 2 ? ka : ka - n) / L;
        const double b = 2.0 * pi * (kb < n / 2 ? kb : kb - n) / L;
        const double r = std::hypot(a + op.frequency() - d.center[0], b - d.center[1]) / d.radius;
        c[k] = bump(r) * std::polar(1.0, -(a * (0.5 * L + offset[0]) + b * (0.5 * L + offset[1])));
    }
    return c;
}

std::vector<cplx> normalize(const BilinearOperator& op, const Disc& d, std::vector<cplx> c, const Exponent& p) {
    const double nrm = op.data_norm(d, c, p);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::runtime_error("lambda_bilinear: datum has zero or non-finite norm");
    for (auto& z : c) z /= nrm;
    return c;
}

}  // namespace

BilinearEstimate lambda_bilinear(double N, double rho, const ExponentTriple& t, const SearchBudget& budget,
                                 const BilinearOptions& opt) {
    budget.validate();
    t.validate();
    if (t.d != 2) throw std::invalid_argument("lambda_bilinear: implemented for d = 2");
    if (t.q.is_infinite() || t.r.is_infinite()) throw std::invalid_argument("lambda_bilinear: q and r must be finite");
    const BilinearOperator op(N, rho, opt);

    BilinearEstimate est;
    bool found = false;
    auto consider = [&](const std::string& name, const BilinearWitness& w, double v) {
        if (!std::isfinite(v)) return;
        auto it = est.strategy_breakdown.find(name);
        if (it == est.strategy_breakdown.end()) est.strategy_breakdown[name] = v;
        else it->second = std::max(it->second, v);
        if (!found || v > est.value) {
            found = true;
            est.value = v;
            est.witness.strategy = name;
            est.pair = w;
        }
    };
    auto make = [&](const Disc& a, const Disc& b, std::array<double, 2> o1, std::array<double, 2> o2) {
        check_bilinear_pair(N, a, b);
        BilinearWitness w{a, b, {}, {}};
        w.c1 = normalize(op, a, bump_coeffs(op, a, o1), t.p);
        w.c2 = normalize(op, b, bump_coeffs(op, b, o2), t.p);
        return w;
    };

    if (budget.extremizers) {
        auto w = make(Disc{{N - 2.5, 0.0}, 1.5}, Disc{{N + 2.5, 0.0}, 1.5}, {0.0, 0.0}, {0.0, 0.0});
        consider("bump_pair", w, op.ratio(w.d1, w.c1, w.d2, w.c2, t));
    }
    std::mt19937_64 rng(budget.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < budget.random_trials; ++k) {
        Disc a, b;
        for (int tries = 0;; ++tries) {
            if (tries > 10000) throw std::runtime_error("lambda_bilinear: could not draw a separated pair");
            a.radius = 0.5 + U(rng);
            b.radius = 0.5 + U(rng);
            const double ra = (4.0 - a.radius) * std::sqrt(U(rng)), ta = 2.0 * pi * U(rng);
            const double rb = (4.0 - b.radius) * std::sqrt(U(rng)), tb = 2.0 * pi * U(rng);
            a.center = {N + ra * std::cos(ta), ra * std::sin(ta)};
            b.center = {N + rb * std::cos(tb), rb * std::sin(tb)};
            try {
                check_bilinear_pair(N, a, b);
                break;
            } catch (const std::invalid_argument&) {
            }
        }
        const std::array<double, 2> o1{2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0};
        const std::array<double, 2> o2{2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0};
        auto w = make(a, b, o1, o2);
        consider("random", w, op.ratio(w.d1, w.c1, w.d2, w.c2, t));
    }
    if (!found) throw std::runtime_error("lambda_bilinear: no finite evaluation within the budget");

    est.converged = true;
    if (budget.ascent_iters > 0) {
        BilinearWitness w = est.pair;
        double value = est.value;
        bool converged = false;
        for (int it = 1; it <= budget.ascent_iters && !converged; ++it) {
            ++est.iterations;
            const double before = value;
            for (int factor = 0; factor < 2; ++factor) {
                Disc& dm = factor == 0 ? w.d1 : w.d2;
                Disc& df = factor == 0 ? w.d2 : w.d1;
                std::vector<cplx>& cm = factor == 0 ? w.c1 : w.c2;
                const std::vector<cplx>& cf = factor == 0 ? w.c2 : w.c1;
                auto G = op.pullback_first(dm, cm, df, cf, t.q, t.r);
                auto cand = op.duality_map(dm, G, t.p);
                if (!(op.data_norm(dm, cand, t.p) > 0.0)) continue;
                cand = normalize(op, dm, cand, t.p);
                for (int half = 0; half <= 3; ++half) {
                    auto trial = half == 0 ? cand : normalize(op, dm, step_toward(cm, cand, std::ldexp(1.0, -half)), t.p);
                    BilinearWitness tw = w;
                    (factor == 0 ? tw.c1 : tw.c2) = trial;
                    const double v = op.ratio(tw.d1, tw.c1, tw.d2, tw.c2, t);
                    if (!std::isfinite(v)) throw std::runtime_error("lambda_bilinear: non-finite ratio at iterate " + std::to_string(it));
                    if (v >= value) {
                        cm = std::move(trial);
                        value = v;
                        break;
                    }
                }
            }
            if (!(value > before * (1.0 + budget.tol))) converged = true;
        }
        est.converged = converged;
        consider("ascent", w, value);
    }
    return est;
}

double evaluate_bilinear_witness(const BilinearWitness& w, double N, double rho, const ExponentTriple& t,
                                 const BilinearOptions& opt) {
    check_bilinear_pair(N, w.d1, w.d2);
    const BilinearOperator op(N, rho, opt);
    return op.ratio(w.d1, w.c1, w.d2, w.c2, t);
}

}  // namespace slab
