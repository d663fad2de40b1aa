#include "slab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slab/fourier.hpp"

namespace slab {

void MixedNormSpec::validate() const {
    if (!q.is_infinite() && q.rational() < Rational(1)) throw std::invalid_argument("MixedNormSpec: q < 1");
    if (!r.is_infinite() && r.rational() < Rational(1)) throw std::invalid_argument("MixedNormSpec: r < 1");
    if (!(interval.hi > interval.lo)) throw std::invalid_argument("MixedNormSpec: empty interval");
}

void ExponentTriple::validate() const {
    for (const Exponent* e : {&p, &q, &r})
        if (!e->is_infinite() && e->rational() < Rational(2))
            throw std::invalid_argument("ExponentTriple: exponents must be >= 2");
    if (d < 1) throw std::invalid_argument("ExponentTriple: dimension must be positive");
}

std::string ExponentTriple::str() const {
    std::ostringstream os;
    os << "(" << p.str() << "," << q.str() << "," << r.str() << ")";
    return os.str();
}

double lebesgue_norm(const cplx* v, std::size_t n, double cell, const Exponent& p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
        return m;
    }
    const double pv = p.value();
    double s = 0.0;
    if (pv == 2.0) {
        for (std::size_t i = 0; i < n; ++i) s += std::norm(v[i]);
        return std::sqrt(s * cell);
    }
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(v[i]), pv);
    return std::pow(s * cell, 1.0 / pv);
}

double lebesgue_norm(const SampledField& f, const Exponent& p) {
    return lebesgue_norm(f.values.data(), f.values.size(), f.grid.cell_volume(), p);
}

std::vector<double> trapezoid_weights(const std::vector<double>& t) {
    const std::size_t m = t.size();
    std::vector<double> w(m, 0.0);
    if (m < 2) return w;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double h = 0.5 * (t[i + 1] - t[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

namespace {

double inner_norm(const SpaceTimeField& u, std::size_t j, const Exponent& r,
                  const std::vector<double>& w) {
    const std::size_t G = u.grid.size();
    const std::size_t M = u.times.size();
    if (r.is_infinite()) {
        double m = 0.0;
        for (std::size_t k = 0; k < M; ++k) m = std::max(m, std::abs(u.values[k * G + j]));
        return m;
    }
    const double rv = r.value();
    double s = 0.0;
    for (std::size_t k = 0; k < M; ++k) s += w[k] * std::pow(std::abs(u.values[k * G + j]), rv);
    return std::pow(s, 1.0 / rv);
}

}  // namespace

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec, Exec exec) {
    spec.validate();
    for (double t : u.times)
        if (!spec.interval.contains(t)) throw std::invalid_argument("mixed_norm: time outside interval");
    if (!spec.r.is_infinite() && u.times.size() < 2)
        throw std::invalid_argument("mixed_norm: need at least 2 time samples for finite r");
    const auto w = trapezoid_weights(u.times);
    const std::size_t G = u.grid.size();
    std::vector<double> S(G);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(G); ++j)
            S[j] = inner_norm(u, static_cast<std::size_t>(j), spec.r, w);
    } else {
        for (std::size_t j = 0; j < G; ++j) S[j] = inner_norm(u, j, spec.r, w);
    }
    if (spec.q.is_infinite()) return *std::max_element(S.begin(), S.end());
    const double qv = spec.q.value();
    double s = 0.0;
    for (double v : S) s += std::pow(v, qv);
    return std::pow(s * u.grid.cell_volume(), 1.0 / qv);
}

double besov_norm(const SampledField& f, const Exponent& p, double alpha, const Exponent& nu) {
    const int K = lp_max_index(f.grid);
    {
        // Energy the partition cannot see: frequencies where phi(xi/2^K) < 1.
        auto fh = forward_transform(f);
        const auto r = frequency_norms(f.grid);
        double total = 0.0, lost = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double e = std::norm(fh.values[i]);
            total += e;
            if (lp_phi(std::ldexp(r[i], -K)) < 1.0) lost += e;
        }
        if (total > 0.0 && std::sqrt(lost / total) > 1e-8)
            throw std::invalid_argument("besov_norm: band truncation loses more than 1e-8 of the mass");
    }
    std::vector<double> blocks;
    for (int k = 0; k <= K; ++k)
        blocks.push_back(std::exp2(k * alpha) * lebesgue_norm(littlewood_paley_project(f, k), p));
    if (nu.is_infinite()) return *std::max_element(blocks.begin(), blocks.end());
    const double nv = nu.value();
    double s = 0.0;
    for (double b : blocks) s += std::pow(b, nv);
    return std::pow(s, 1.0 / nv);
}

double sobolev_norm(const SampledField& f, const Exponent& p, double alpha) {
    const int d = f.grid.dim();
    auto g = apply_multiplier(f, [alpha, d](const double* xi) {
        double s = 1.0;
        for (int a = 0; a < d; ++a) s += xi[a] * xi[a];
        return cplx(std::pow(s, 0.5 * alpha), 0.0);
    });
    return lebesgue_norm(g, p);
}

Rational alpha_critical(const ExponentTriple& t) {
    return Rational(t.d) * (Rational(1) - t.p.reciprocal() - t.q.reciprocal()) -
           Rational(2) * t.r.reciprocal();
}

Rational alpha_planar(const Exponent& p, const Exponent& r) {
    return Rational(2) * (Rational(1) - Rational(2) * p.reciprocal()) - Rational(2) * r.reciprocal();
}

Rational tao_exponent(int d) { return Rational(2 * (d + 3), d + 1); }

Rational q_star_gamma(int d, const Rational& q0) {
    if (d < 1) throw std::invalid_argument("q_star: dimension must be positive");
    if (!(q0 > Rational(2) && q0 <= tao_exponent(d)))
        throw std::invalid_argument("q_star: q0 must lie in (2, 2(d+3)/(d+1)]");
    const Rational num = Rational(1) / q0 - Rational(d + 1, 2 * (d + 3));
    const Rational den = Rational(d + 1, 2 * d) - Rational(d + 2, d) / q0;
    if (den == Rational(0))
        throw std::invalid_argument("q_star: gamma is singular at q0 = 2(d+2)/(d+1)");
    return num / den;
}

Rational q_star(int d, const Rational& q0) {
    return tao_exponent(d) * (Rational(1) - q_star_gamma(d, q0));
}

PredictedExponents predicted_exponents_1d(const ExponentTriple& t) {
    t.validate();
    if (t.d != 1) throw std::invalid_argument("predicted_exponents_1d: d must be 1");
    const Rational ip = t.p.reciprocal(), iq = t.q.reciprocal(), ir = t.r.reciprocal();
    const Rational half(1, 2);
    // Larger exponent <=> smaller reciprocal.
    const bool r_le_p = ir >= ip, p_le_q = ip >= iq, p_lt_r = ip > ir, r_le_q = ir >= iq;
    const Rational scaling = Rational(1) - ip - iq - Rational(2) * ir;
    if (r_le_p && p_le_q) {
        if (iq + ir >= half) return {iq - ip, half - ir, "i-log"};
        return {scaling, Rational(0), "i-scaling"};
    }
    if (p_lt_r && r_le_q) {
        if (Rational(2) * iq + ir >= Rational(1) - ip) return {iq - ir, Rational(0), "ii-knapp"};
        return {scaling, Rational(0), "ii-scaling"};
    }
    throw std::invalid_argument("predicted_exponents_1d: triple " + t.str() +
                                " is outside r <= p <= q and p < r <= q");
}

}  // namespace slab
