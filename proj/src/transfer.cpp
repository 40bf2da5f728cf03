#include "dlp/transfer.hpp"

#include <fftw3.h>

#include <complex>
#include <vector>

namespace dlp::transfer {

namespace {

using Complex = std::complex<double>;

// Normalized half spectrum c_0..c_{N/2} of a real vector.
std::vector<Complex> half_spectrum(const Vector& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> in(v.data(), v.data() + n);
  std::vector<Complex> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (auto& c : out) c /= static_cast<double>(n);
  return out;
}

// Inverse of half_spectrum on an n-point grid. Entry n/2 is the (real) Nyquist coefficient.
Vector synthesize(std::vector<Complex> spec, int n) {
  spec[0].imag(0.0);
  spec[n / 2].imag(0.0);
  Vector v(n);
  fftw_plan plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec.data()), v.data(),
                                        FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return v;
}

void check_ratio(int fine, int coarse, const char* what) {
  if (coarse < 2 || coarse % 2 != 0 || fine % 2 != 0)
    throw ConfigError(std::string(what) + ": grid sizes must be even");
  if (fine < coarse || fine % coarse != 0 || !is_power_of_two(fine / coarse))
    throw ConfigError(std::string(what) + ": size ratio must be a power of 2");
}

}  // namespace

Vector restrict_to(const Vector& v, int m) {
  const int n = static_cast<int>(v.size());
  check_ratio(n, m, "restrict_to");
  if (m == n) return v;
  const auto fine = half_spectrum(v);
  std::vector<Complex> coarse(m / 2 + 1);
  for (int k = 0; k < m / 2; ++k) coarse[k] = fine[k];
  // modes -m/2 and +m/2 of the fine grid alias to the coarse Nyquist mode
  coarse[m / 2] = 2.0 * fine[m / 2].real();
  return synthesize(std::move(coarse), m);
}

Vector prolong_to(const Vector& v, int n) {
  const int m = static_cast<int>(v.size());
  check_ratio(n, m, "prolong_to");
  if (m == n) return v;
  const auto coarse = half_spectrum(v);
  std::vector<Complex> fine(n / 2 + 1, Complex{0.0, 0.0});
  for (int k = 0; k < m / 2; ++k) fine[k] = coarse[k];
  fine[m / 2] = 0.5 * coarse[m / 2].real();
  return synthesize(std::move(fine), n);
}

Matrix restriction_matrix(int n, int m) {
  check_ratio(n, m, "restriction_matrix");
  Matrix r(m, n);
  Vector e = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    r.col(j) = restrict_to(e, m);
    e[j] = 0.0;
  }
  return r;
}

Matrix prolongation_matrix(int m, int n) {
  check_ratio(n, m, "prolongation_matrix");
  Matrix p(n, m);
  Vector e = Vector::Zero(m);
  for (int j = 0; j < m; ++j) {
    e[j] = 1.0;
    p.col(j) = prolong_to(e, n);
    e[j] = 0.0;
  }
  return p;
}

Matrix project_operator(const Matrix& op, int m) {
  const int n = static_cast<int>(op.rows());
  if (op.cols() != n) throw ConfigError("project_operator: operator must be square");
  check_ratio(n, m, "project_operator");
  if (m == n) return op;
  const Matrix p = prolongation_matrix(m, n);
  const Matrix r = restriction_matrix(n, m);
  Matrix dp = op * p;
  return r * dp;
}

Vector spectral_derivative(const Vector& v, int order) {
  const int n = static_cast<int>(v.size());
  if (n < 2 || n % 2 != 0) throw ConfigError("spectral_derivative: length must be even");
  if (order < 0) throw ConfigError("spectral_derivative: negative order");
  auto spec = half_spectrum(v);
  for (int k = 0; k <= n / 2; ++k) {
    Complex factor = std::pow(Complex{0.0, static_cast<double>(k)}, order);
    spec[k] *= factor;
  }
  if (order % 2 == 1) spec[n / 2] = 0.0;
  return synthesize(std::move(spec), n);
}

Eigen::VectorXcd fourier_coefficients(const Vector& v) {
  const int n = static_cast<int>(v.size());
  if (n < 2 || n % 2 != 0) throw ConfigError("fourier_coefficients: length must be even");
  const auto half = half_spectrum(v);
  Eigen::VectorXcd c(n);
  for (int k = -n / 2; k < n / 2; ++k) {
    c[k + n / 2] = k >= 0 ? half[k] : std::conj(half[-k]);
  }
  return c;
}

}  // namespace dlp::transfer
