#pragma once

#include <complex>
#include <vector>

#include "qupid/grid.hpp"

namespace qupid {

using Complex = std::complex<double>;

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Complex& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Complex at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// In-place forward/inverse DFT of arbitrary length: iterative radix-2 when
/// the length is a power of two, Bluestein's chirp-z algorithm otherwise.
/// Forward uses the negative-exponent kernel and no normalization; inverse
/// divides by the length.
void fft(std::vector<Complex>& values, bool inverse);

/// 2-D DFT of the bin masses by row-column decomposition:
/// F[l1][l2] = sum_{i,j} m[i][j] exp(-2*pi*I*(l1*i/r + l2*j/s)),
/// indices 0-based from the grid's first bin.
ComplexMatrix dft2d(const QuantizedMeasure& measure);
ComplexMatrix dft2d(const Matrix& masses);

}  // namespace qupid
