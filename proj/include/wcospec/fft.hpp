#pragma once

#include <vector>

#include "wcospec/common.hpp"

namespace wcospec {

// In-place complex FFT (FFTW backend, FFTW_ESTIMATE plans, plan cache keyed
// by size).  forward: sum_j x_j e^{-2pi i jk/n}, unnormalized.
void fft_forward(std::vector<complex>& data);
void fft_backward(std::vector<complex>& data);

// DFT coefficients of real grid samples: c_k = (1/M) sum_j g_j e^{-ik theta_j},
// k = 0..M-1, theta_j = 2 pi j / M.
std::vector<complex> dft_coefficients(const std::vector<double>& samples);

// Values p(e^{i theta_j}) on the M-point grid for Taylor/polynomial
// coefficients (ascending powers, padded with zeros).
std::vector<complex> eval_on_circle_grid(const std::vector<complex>& coeffs, std::size_t m);

// Truncated product of two power series: (a*b)[0..n_out].
std::vector<complex> series_multiply(const std::vector<complex>& a,
                                     const std::vector<complex>& b,
                                     std::size_t n_out);

// exp of a power series through degree n_out via the derivative recurrence
// w' = u' w:  w_0 = e^{u_0},  n w_n = sum_{k=1..n} k u_k w_{n-k}.
std::vector<complex> series_exp(const std::vector<complex>& u, std::size_t n_out);

}  // namespace wcospec
