#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "idregret/grid.hpp"

namespace idregret::fft {

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2pi i jk/n}. n must be a
/// power of two.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in);

/// Unnormalized backward DFT, X_k = sum_j x_j e^{+2pi i jk/n}.
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& in);

/// Signed FFT frequency index: k for k < n/2, k - n otherwise.
inline long long signed_index(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long long>(k)
                     : static_cast<long long>(k) - static_cast<long long>(n);
}

/// Angular frequency of FFT bin k on a grid with the given spacing:
/// xi_k = 2 pi k~ / (n h).
double frequency(std::size_t k, std::size_t n, double spacing);

/// Continuum Fourier transform samples f_hat(xi_k) = int f(x) e^{i xi x} dx
/// of a function sampled on a zero-symmetric grid, in FFT bin order.
std::vector<std::complex<double>> spectrum_from_grid(const GriddedFunction& f);

/// Inverse of spectrum_from_grid: recovers grid samples (real part) from
/// continuum Fourier samples in FFT bin order.
std::vector<double> grid_from_spectrum(const std::vector<std::complex<double>>& fhat,
                                       const Grid1D& grid);

}  // namespace idregret::fft
