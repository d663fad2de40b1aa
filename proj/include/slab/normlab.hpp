#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slab/band.hpp"
#include "slab/grid.hpp"
#include "slab/norms.hpp"

namespace slab {

struct SearchBudget {
    bool extremizers = true;
    int random_trials = 2;
    int ascent_iters = 10;
    double tol = 1e-4;
    std::uint64_t seed = 1234567;

    void validate() const;
};

// Datum realizing a reported value; enough to rebuild the operator.
struct Witness {
    std::string strategy;
    double lambda = 0.0;
    Interval interval;
    BandOptions options;
    ExponentTriple triple;
    std::vector<cplx> coeffs;
};

struct NormEstimate {
    double value = 0.0;
    std::map<std::string, double> strategy_breakdown;
    int iterations = 0;
    bool converged = false;
    Witness witness;

    std::string best_strategy() const { return witness.strategy; }
};

struct AscentResult {
    std::vector<cplx> coeffs;
    std::vector<double> ratios;  // accepted iterates, starting with the initial datum
    int iterations = 0;
    bool converged = false;
};

// Generalized power iteration for ||U f||_{L^q L^r} / ||f||_p on the band.
// A candidate replaces f_k only if the ratio does not decrease; otherwise the
// step toward it is halved (three times at most) before stopping.
AscentResult duality_ascent(const BandOperator& op, const std::vector<cplx>& f0, const ExponentTriple& t,
                            int max_iters, double tol);

// Lower bound for sup ||U f||_{L^q L^r(I)} / ||f||_p over f^ supported in the
// band, d = 1. The sub-band of op must sit where the window equals 1.
// Strategies: extremizer families (focusing, knapp, plate), seeded random
// trials, and ascent from the best family member and from every random trial
// that beats all earlier ones. value is the maximum over all of them.
NormEstimate estimate_band_norm(const FrequencyWindow& band, double lambda, const ExponentTriple& t,
                                const Interval& I, const SearchBudget& budget, const BandOptions& opt = {});

double evaluate_witness(const Witness& w);

std::string serialize_witness(const Witness& w);
Witness parse_witness(const std::string& text);

struct PowerLogFit {
    double a = 0.0;  // power of lambda
    double b = 0.0;  // power of log lambda
    double c = 0.0;  // log of the constant
    double residual = 0.0;  // root-mean-square in log coordinates
};

// Least squares of log v against (log lambda, log log lambda, 1). With
// fixed_b the log exponent is held and only (a, c) are fitted.
PowerLogFit fit_power_log(const std::vector<std::pair<double, double>>& points,
                          std::optional<double> fixed_b = std::nullopt);

struct ScalingRun {
    ExponentTriple triple;
    std::vector<std::pair<double, NormEstimate>> points;
    PowerLogFit fitted;

    void validate() const;
};

// One estimate per lambda (window: sharp annulus [lambda/5, 15 lambda]);
// cells run in parallel under Exec::parallel and give identical results.
ScalingRun sweep_band_norms(const ExponentTriple& t, const std::vector<double>& lambdas, const Interval& I,
                            const SearchBudget& budget, std::optional<double> fixed_b = std::nullopt,
                            Exec exec = Exec::parallel, const BandOptions& opt = {});

FrequencyWindow standard_band(double lambda);

}  // namespace slab
