#pragma once

#include <map>
#include <string>
#include <vector>

#include "slab/extension.hpp"
#include "slab/normlab.hpp"

namespace slab {

// E f(s xi / lambda, s) over A(lambda) x [lambda, 2 lambda], d = 1, with the
// L^q_xi L^q_s norm evaluated slice by slice: for fixed s, xi = lambda eta / s
// turns the xi integral into an integral over 3s <= |eta| <= 12s with weight
// lambda / s, and eta runs over the FFT grid of the zero-padded samples.
// Samples sit on y_j = -1 + j / m, j = 0..2m, with trapezoid weights.
class ScaledExtensionOperator {
public:
    ScaledExtensionOperator(double lambda, const Exponent& q, int pad = 16, double s_step = 0.25);

    double lambda() const { return lambda_; }
    int half_samples() const { return m_; }
    std::size_t size() const { return static_cast<std::size_t>(2 * m_ + 1); }
    double spacing() const { return 1.0 / m_; }
    double coord(int j) const { return -1.0 + static_cast<double>(j) / m_; }

    double data_norm(const std::vector<cplx>& f, const Exponent& p) const;
    double image_norm(const std::vector<cplx>& f) const;
    double ratio(const std::vector<cplx>& f, const Exponent& p) const;
    // Gradient direction of the image norm in the trapezoid inner product.
    std::vector<cplx> pullback(const std::vector<cplx>& f) const;
    std::vector<cplx> duality_map(const std::vector<cplx>& G, const Exponent& p) const;

    BallSamples as_ball_samples(const std::vector<cplx>& f) const;

private:
    void transform(const std::vector<cplx>& f, double s, std::vector<cplx>& buf) const;

    double lambda_ = 0.0;
    Exponent q_;
    int m_ = 0, n_ = 0;
    std::vector<double> s_, s_weight_;
};

struct ExtensionSide {
    double value = 0.0;  // lambda^{-beta} times the best ratio
    std::map<std::string, double> strategy_breakdown;
    std::vector<cplx> witness;
    std::string strategy;
};

// Best datum on the unit L^p ball of [-1, 1]: modulated bumps e^{i a y} bump(y),
// small balls, seeded random samples, then ascent from the best of those.
ExtensionSide extension_side(double lambda, const Exponent& p, const Exponent& q, double beta,
                             const SearchBudget& budget);

struct EquivalenceResult {
    double lambda = 0.0;
    double gamma = 0.0;
    double extension = 0.0;    // side (i)
    double schrodinger = 0.0;  // side (ii): lambda^{-gamma} times the band estimate on [-1, 1]
    double ratio = 0.0;
};

// gamma = d(1 - 1/p - 1/q) - 2/q + 2 beta with r = q, d = 1.
EquivalenceResult equivalence_ratio(double lambda, const Exponent& p, const Exponent& q, double beta,
                                    const SearchBudget& budget);

}  // namespace slab
