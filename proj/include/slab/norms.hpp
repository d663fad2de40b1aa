#pragma once

#include <string>
#include <vector>

#include "slab/grid.hpp"
#include "slab/rational.hpp"

namespace slab {

struct MixedNormSpec {
    Exponent q{2};
    Exponent r{2};
    Interval interval{0.0, 1.0};

    void validate() const;
};

struct ExponentTriple {
    Exponent p{2};
    Exponent q{2};
    Exponent r{2};
    int d = 1;

    void validate() const;
    std::string str() const;
};

// (sum |f|^p h^d)^{1/p}; max for p = inf.
double lebesgue_norm(const SampledField& f, const Exponent& p);
double lebesgue_norm(const cplx* v, std::size_t n, double cell, const Exponent& p);

// Trapezoid weights for a strictly increasing sample list (endpoints halved).
std::vector<double> trapezoid_weights(const std::vector<double>& times);

// Inner L^r over the time samples (trapezoid), outer L^q over grid points.
double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec, Exec exec = Exec::parallel);

// (sum_k 2^{k alpha nu} ||P_k f||_p^nu)^{1/nu}; nu = inf gives the sup.
double besov_norm(const SampledField& f, const Exponent& p, double alpha, const Exponent& nu);
double sobolev_norm(const SampledField& f, const Exponent& p, double alpha);

// d(1 - 1/p - 1/q) - 2/r, exact.
Rational alpha_critical(const ExponentTriple& t);
// 2(1 - 2/p) - 2/r: the 2D threshold for q = p.
Rational alpha_planar(const Exponent& p, const Exponent& r);

Rational tao_exponent(int d);
Rational q_star_gamma(int d, const Rational& q0);
Rational q_star(int d, const Rational& q0);

struct PredictedExponents {
    Rational a;  // power of lambda
    Rational b;  // power of log lambda
    std::string regime;
};

PredictedExponents predicted_exponents_1d(const ExponentTriple& t);

}  // namespace slab
