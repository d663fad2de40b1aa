#pragma once

#include <array>
#include <vector>

#include "slab/normlab.hpp"

namespace slab {

// Frequency disc {|xi - center| <= radius} in the plane.
struct Disc {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;
};

// Admissible pair: both discs inside {|xi - N e_1| <= 4} and at distance >= 1.
void check_bilinear_pair(double N, const Disc& a, const Disc& b);

struct BilinearOptions {
    double spacing = 0.25;  // comoving grid spacing (upper bound)
    double margin = 8.0;    // cube length beyond the dispersive spread 16 rho

    void validate() const;
};

// U f_1 U f_2 on [0, rho] for f_i^ supported near N e_1, d = 2. With
// f_i = e^{i N x_1} g_i both factors move with velocity 2N e_1; the comoving
// fields live on a periodic n x n grid and lab point (a, b) at time m reads
// comoving (a - m, b), with 2N dt = h. Only moduli enter, so dt resolves the
// envelope rather than the carrier phase.
class BilinearOperator {
public:
    BilinearOperator(double N, double rho, const BilinearOptions& opt = {});

    double frequency() const { return N_; }
    double rho() const { return rho_; }
    int n() const { return n_; }
    int samples() const { return static_cast<int>(times_.size()); }
    double spacing() const { return h_; }

    // Grid indices and comoving frequencies inside a disc given in lab frequencies.
    std::vector<int> modes(const Disc& d) const;

    double data_norm(const Disc& d, const std::vector<cplx>& c, const Exponent& p) const;
    // ||U f_1 U f_2||_{L^{q/2}_x L^{r/2}_t[0, rho]}; q, r finite.
    double product_norm(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2, const std::vector<cplx>& c2,
                        const Exponent& q, const Exponent& r) const;
    double ratio(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2, const std::vector<cplx>& c2,
                 const ExponentTriple& t) const;
    // U* of the duality weight with respect to the first factor.
    std::vector<cplx> pullback_first(const Disc& d1, const std::vector<cplx>& c1, const Disc& d2,
                                     const std::vector<cplx>& c2, const Exponent& q, const Exponent& r) const;
    std::vector<cplx> duality_map(const Disc& d, const std::vector<cplx>& G, const Exponent& p) const;

    std::vector<cplx> synthesize(const Disc& d, const std::vector<cplx>& c) const;
    std::vector<cplx> analyze(const Disc& d, const std::vector<cplx>& g) const;

private:
    void slice(const Disc& d, const std::vector<int>& idx, const std::vector<cplx>& c, double t,
               std::vector<cplx>& buf) const;
    double freq(int k) const;

    double N_ = 0.0, rho_ = 0.0, h_ = 0.0;
    int n_ = 0;
    std::vector<double> times_, weights_;
};

struct BilinearWitness {
    Disc d1, d2;
    std::vector<cplx> c1, c2;
};

struct BilinearEstimate : NormEstimate {
    BilinearWitness pair;
};

// Lower bound for Lambda_{p,q,r}(N, rho) in d = 2: the centred bump pair,
// seeded random separated bump pairs, and alternating ascent on each factor
// from the best of those.
BilinearEstimate lambda_bilinear(double N, double rho, const ExponentTriple& t, const SearchBudget& budget,
                                 const BilinearOptions& opt = {});

double evaluate_bilinear_witness(const BilinearWitness& w, double N, double rho, const ExponentTriple& t,
                                 const BilinearOptions& opt = {});

}  // namespace slab
