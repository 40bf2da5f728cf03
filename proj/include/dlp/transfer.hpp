#pragma once

#include "dlp/types.hpp"

// Spectral intergrid transfer on equispaced periodic grids.
//
// A length-N vector is identified with its trigonometric interpolant
//   v_j = sum_{k=-N/2}^{N/2-1} c_k exp(i k theta_j),  theta_j = 2 pi j / N,
// with c_k = (1/N) sum_j v_j exp(-i k theta_j). Restriction to M < N points
// keeps the modes k in [-M/2, M/2-1]; prolongation zero-pads. The coarse
// Nyquist mode -M/2 is real for real data and is paired with the fine modes
// +-M/2 (their sum on restriction, an even split on prolongation), which keeps
// real data real and makes R P the identity.

namespace dlp::transfer {

/// Truncate the spectrum of `v` (length N) to `m` points. N/m must be a power of 2.
Vector restrict_to(const Vector& v, int m);

/// Zero-pad the spectrum of `v` (length M) onto `n` points. n/M must be a power of 2.
Vector prolong_to(const Vector& v, int n);

inline Vector restrict_half(const Vector& v) { return restrict_to(v, static_cast<int>(v.size() / 2)); }
inline Vector prolong_double(const Vector& v) { return prolong_to(v, static_cast<int>(v.size() * 2)); }

/// Dense restriction matrix R_N^M (m x n).
Matrix restriction_matrix(int n, int m);
/// Dense prolongation matrix P_M^N (n x m).
Matrix prolongation_matrix(int m, int n);

/// Projection coarse operator R_N^M D P_M^N.
Matrix project_operator(const Matrix& op, int m);

/// Derivative d^order v / d theta^order of the trigonometric interpolant of v.
/// Odd derivatives discard the Nyquist mode.
Vector spectral_derivative(const Vector& v, int order);

/// Complex Fourier coefficients c_k, k = -N/2..N/2-1, stored in that order (index k + N/2).
Eigen::VectorXcd fourier_coefficients(const Vector& v);

}  // namespace dlp::transfer
