#pragma once

#include <functional>
#include <vector>

#include "slab/grid.hpp"

namespace slab {

// In-place unnormalized DFT of a dim-dimensional n^dim array (FFTW sign
// convention: sign = -1 forward, +1 backward). Plans are cached per shape and
// creation is serialized, so concurrent callers are safe.
void dft_inplace(cplx* data, int dim, int n, int sign);

// f^(xi) = int f(y) e^{-i<y,xi>} dy discretized on the grid; the frequency-side
// field uses FFT index order.
SampledField forward_transform(const SampledField& f);
// Inverse with the (2 pi)^{-d} factor.
SampledField inverse_transform(const SampledField& fhat);

// Frequency vector per FFT index (dim entries per sample, axis 0 first).
std::vector<double> frequency_vectors(const GridSpec& g);
std::vector<double> frequency_norms(const GridSpec& g);

using Multiplier = std::function<cplx(const double* xi)>;

// (m f^)^v computed spectrally; throws if m is non-finite at a grid frequency.
SampledField apply_multiplier(const SampledField& f, const Multiplier& m);
// Same, with the multiplier already tabulated on the FFT index grid.
SampledField apply_multiplier_table(const SampledField& f, const std::vector<cplx>& table);

// Littlewood-Paley partition: phi = 1 on |xi| <= 4/3, 0 for |xi| >= 2;
// psi_k(xi) = phi(xi/2^k) - phi(xi/2^{k-1}) for k >= 1.
double lp_phi(double r);
double lp_psi(int k, double r);
// Largest k with 2^{k+1} below the grid Nyquist frequency.
int lp_max_index(const GridSpec& g);
// Window values of P_k on the grid; P_0 = 1 - sum_{k=1}^{K} psi_k.
std::vector<double> lp_window(const GridSpec& g, int k);
SampledField littlewood_paley_project(const SampledField& f, int k);

}  // namespace slab
