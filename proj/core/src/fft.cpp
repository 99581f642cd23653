#include "qupid/fft.hpp"

#include <cmath>
#include <cstdint>

namespace qupid {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const Complex w_len(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= w_len;
      }
    }
  }
  if (inverse) {
    for (Complex& x : a) x /= static_cast<double>(n);
  }
}

// Chirp with angle pi * k^2 / n, the k^2 reduced mod 2n in integers so the
// phase stays accurate for large k.
Complex chirp(std::size_t k, std::size_t n, double sign) {
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t k_mod = static_cast<std::uint64_t>(k) % two_n;
  const std::uint64_t k2 = (k_mod * k_mod) % two_n;
  const double angle = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void fft_bluestein(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;

  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  // kl = (k^2 + l^2 - (k-l)^2) / 2 turns the DFT into a convolution
  // against the conjugate chirp.
  std::vector<Complex> u(m, Complex(0.0));
  std::vector<Complex> v(m, Complex(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = a[k] * chirp(k, n, sign);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex c = chirp(k, n, -sign);
    v[k] = c;
    if (k > 0) v[m - k] = c;
  }
  fft_radix2(u, false);
  fft_radix2(v, false);
  for (std::size_t k = 0; k < m; ++k) u[k] *= v[k];
  fft_radix2(u, true);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = u[k] * chirp(k, n, sign);
  }
  if (inverse) {
    for (Complex& x : a) x /= static_cast<double>(n);
  }
}

}  // namespace

void fft(std::vector<Complex>& values, bool inverse) {
  if (values.size() <= 1) return;
  if (is_power_of_two(values.size())) {
    fft_radix2(values, inverse);
  } else {
    fft_bluestein(values, inverse);
  }
}

ComplexMatrix dft2d(const Matrix& masses) {
  const std::size_t r = masses.rows;
  const std::size_t s = masses.cols;
  ComplexMatrix out(r, s);
  for (std::size_t i = 0; i < r * s; ++i) out.data[i] = Complex(masses.data[i]);

  std::vector<Complex> scratch;
  scratch.resize(s);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < s; ++j) scratch[j] = out.at(i, j);
    fft(scratch, false);
    for (std::size_t j = 0; j < s; ++j) out.at(i, j) = scratch[j];
  }
  scratch.resize(r);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < r; ++i) scratch[i] = out.at(i, j);
    fft(scratch, false);
    for (std::size_t i = 0; i < r; ++i) out.at(i, j) = scratch[i];
  }
  return out;
}

ComplexMatrix dft2d(const QuantizedMeasure& measure) { return dft2d(measure.masses); }

}  // namespace qupid
