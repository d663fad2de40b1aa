#pragma once

#include <string>
#include <vector>

#include "slab/grid.hpp"
#include "slab/norms.hpp"

namespace slab {

// M uniform samples covering I including both endpoints (M >= 2).
std::vector<double> uniform_times(const Interval& I, int M);
// Smallest M with M >= 8 lambda^2 |I| / (2 pi) (and M >= 2), capped.
int time_samples_for_band(double lambda, const Interval& I, int cap = 1 << 20);

// e^{it Delta} f = (e^{-it|xi|^2} f^)^v at one time.
SampledField evolve_spectral_at(const SampledField& f, double t);
SpaceTimeField evolve_spectral(const SampledField& f, const std::vector<double>& times,
                               const Interval& I, Exec exec = Exec::parallel);

// (4 pi i t)^{-d/2} int e^{i|x-y|^2/4t} f(y) dy by the trapezoid rule on the
// grid, treating f as supported in the cube (no periodic images). Appends a
// warning if f carries relative mass above 1e-6 within two cells of the edge.
SampledField evolve_kernel(const SampledField& f, double t, Exec exec = Exec::parallel,
                           std::vector<std::string>* warnings = nullptr);

struct RescaledDatum {
    SampledField field;     // f(b^{1/2} x) on the same grid
    double b = 1.0;
    double time_factor = 1.0;   // b^{1/r}
    double space_factor = 1.0;  // (sqrt b)^{d/q}, from x = sqrt(b) x'
    double lemma_factor = 1.0;  // (sqrt b)^{-d(1/p-1/q)+2/r}
};

// Transports a norm over t in [b/2, b] to one over s in [1/2, 1]:
// ||(int_{b/2}^{b} |Uf|^r)^{1/r}||_q
//   = time_factor * space_factor * ||(int_{1/2}^{1} |U f(sqrt(b).)|^r)^{1/r}||_q.
// The rescaled datum is evaluated by trigonometric interpolation.
RescaledDatum time_rescale(const SampledField& f, double lambda, double b, const ExponentTriple& t);

// Evaluates the trigonometric interpolant of f at x * scale for every grid x.
SampledField dilate(const SampledField& f, double scale, Exec exec = Exec::parallel);

}  // namespace slab
