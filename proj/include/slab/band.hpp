#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slab/grid.hpp"
#include "slab/norms.hpp"

namespace slab {

// Sub-band for 1D band norms: frequencies kappa +- w with kappa = carrier * lambda
// and w = half_width * lambda.
struct BandOptions {
    double carrier = 1.5;
    double half_width = 0.25;
    double margin = 1.0;  // comoving cube length exceeds 2 kappa |I| by margin * lambda
    int points = 0;       // comoving grid size; 0 picks the smallest admissible power of two
    int time_cap = 1 << 20;

    void validate() const;
};

// U f on I for f^ supported in [kappa - w, kappa + w], d = 1.
//
// With f = e^{i kappa x} g, |Uf(x, t)| = |V g(x - 2 kappa t, t)| where V has
// symbol e^{-it eta^2} on |eta| <= w. The comoving field V g lives on a periodic
// grid y_j = j h; times are t_m = I.lo + m dt with 2 kappa dt = h, so lab point
// i at time m reads comoving index i - m. Lab points run over n + M - 1 cells,
// one period of g placed on the line. M follows time_samples_for_band.
//
// Data are band coefficients c_k with g_j = sum_k c_k e^{i eta_k y_j}.
// All evaluations are sequential and bitwise deterministic.
class BandOperator {
public:
    BandOperator(double lambda, const Interval& I, const BandOptions& opt = {});

    double lambda() const { return lambda_; }
    double kappa() const { return kappa_; }
    double half_width() const { return w_; }
    const Interval& interval() const { return I_; }
    const BandOptions& options() const { return opt_; }
    int n() const { return n_; }
    int samples() const { return static_cast<int>(times_.size()); }
    double spacing() const { return h_; }
    double extent() const { return h_ * n_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t modes() const { return eta_.size(); }
    double eta(std::size_t k) const { return eta_[k]; }
    int mode_index(std::size_t k) const { return index_[k]; }
    std::size_t lab_points() const { return static_cast<std::size_t>(n_) + times_.size() - 1; }

    std::vector<cplx> synthesize(const std::vector<cplx>& c) const;
    // Orthogonal projection of comoving samples onto the band.
    std::vector<cplx> analyze(const std::vector<cplx>& g) const;

    double data_norm(const std::vector<cplx>& c, const Exponent& p) const;
    // ||U f||_{L^q_x L^r_t(I)} over the lab points.
    double image_norm(const std::vector<cplx>& c, const Exponent& q, const Exponent& r) const;
    double ratio(const std::vector<cplx>& c, const ExponentTriple& t) const;

    // U* applied to the duality weight of U f, as band coefficients (scale free).
    std::vector<cplx> dual_pullback(const std::vector<cplx>& c, const Exponent& q, const Exponent& r) const;
    // Band projection of |g|^{p'-2} g for g = synthesize(G).
    std::vector<cplx> duality_map(const std::vector<cplx>& G, const Exponent& p) const;

    std::vector<cplx> normalized(const std::vector<cplx>& c, const Exponent& p) const;

private:
    struct Pass;
    void slice(const std::vector<cplx>& c, std::size_t m, std::vector<cplx>& phase,
               std::vector<cplx>& buf) const;
    Pass forward_pass(const std::vector<cplx>& c, const Exponent& r) const;

    double lambda_ = 0.0, kappa_ = 0.0, w_ = 0.0, h_ = 0.0, dt_ = 0.0;
    int n_ = 0;
    Interval I_;
    BandOptions opt_;
    std::vector<double> times_, weights_, eta_;
    std::vector<int> index_;
    std::vector<cplx> step_;
};

// |z|^r from |z|^2, with integer powers by multiplication.
double abs_pow_from_norm(double norm2, double r);

// Data families as band coefficients.
// e^{i t_focus (kappa + eta)^2} bump(eta / w): focuses at the cube centre at t_focus.
std::vector<cplx> band_focusing(const BandOperator& op, double t_focus);
// bump((eta + w - eps) / eps): one packet at the slow edge of the band.
std::vector<cplx> band_knapp(const BandOperator& op, double eps);
// Band projection of bump((y - L/2) / length).
std::vector<cplx> band_plate(const BandOperator& op, double length);
// Independent standard complex Gaussian coefficients.
std::vector<cplx> band_random(const BandOperator& op, std::mt19937_64& rng);

}  // namespace slab
