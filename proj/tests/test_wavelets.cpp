#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qupid/rng.hpp"
#include "qupid/wavelets.hpp"

using namespace qupid;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t s) {
  Matrix m(r, s);
  for (double& v : m.data) v = rng.next_double();
  return m;
}

double energy(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.data) sum += v * v;
  return sum;
}

struct NamedFilter {
  WaveletFamily family;
  int order;
};

const NamedFilter kAllFilters[] = {
    {WaveletFamily::Daubechies, 1}, {WaveletFamily::Daubechies, 2},
    {WaveletFamily::Daubechies, 3}, {WaveletFamily::Coiflet, 1},
    {WaveletFamily::Coiflet, 2},    {WaveletFamily::Coiflet, 3},
};

}  // namespace

TEST_CASE("haar lowpass is the normalized averaging filter") {
  const FilterPair haar = wavelet_filters(WaveletFamily::Daubechies, 1);
  REQUIRE(haar.length() == 2);
  CHECK(haar.lowpass[0] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(haar.lowpass[1] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(haar.highpass[0] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(haar.highpass[1] == doctest::Approx(-0.70710678).epsilon(1e-8));
}

TEST_CASE("filter tables satisfy the scaling-filter identities") {
  for (const NamedFilter& nf : kAllFilters) {
    CAPTURE(nf.order);
    const FilterPair f = wavelet_filters(nf.family, nf.order);
    const std::size_t expected_len =
        nf.family == WaveletFamily::Daubechies ? 2 * nf.order : 6 * nf.order;
    CHECK(f.length() == expected_len);

    double sum = 0.0;
    double sq = 0.0;
    for (double h : f.lowpass) {
      sum += h;
      sq += h * h;
    }
    CHECK(sum == doctest::Approx(kSqrt2).epsilon(1e-9));
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-9));

    // Orthonormal even shifts: <h, h(. - 2m)> = 0 for m >= 1.
    for (std::size_t shift = 2; shift < f.length(); shift += 2) {
      double dot = 0.0;
      for (std::size_t k = 0; k + shift < f.length(); ++k) {
        dot += f.lowpass[k] * f.lowpass[k + shift];
      }
      CHECK(std::abs(dot) < 1e-9);
    }

    // Quadrature-mirror relation, exact as stored.
    const std::size_t len = f.length();
    for (std::size_t k = 0; k < len; ++k) {
      const double expected = (k % 2 == 0 ? 1.0 : -1.0) * f.lowpass[len - 1 - k];
      CHECK(f.highpass[k] == expected);
    }
  }
}

TEST_CASE("unsupported orders are rejected") {
  CHECK_THROWS_AS(wavelet_filters(WaveletFamily::Daubechies, 0), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_filters(WaveletFamily::Daubechies, 4), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_filters(WaveletFamily::Coiflet, 4), std::invalid_argument);
}

TEST_CASE("corrupted filter pairs fail validation") {
  FilterPair broken = wavelet_filters(WaveletFamily::Daubechies, 2);
  broken.lowpass[0] += 1e-3;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("daubechies highpass annihilates low-degree monomials") {
  for (int p = 1; p <= 3; ++p) {
    const FilterPair f = wavelet_filters(WaveletFamily::Daubechies, p);
    for (int degree = 0; degree < p; ++degree) {
      for (int offset = 0; offset < 5; ++offset) {
        double dot = 0.0;
        for (std::size_t k = 0; k < f.length(); ++k) {
          dot += f.highpass[k] * std::pow(static_cast<double>(offset) + static_cast<double>(k),
                                          static_cast<double>(degree));
        }
        CHECK(std::abs(dot) < 1e-6);
      }
    }
  }
}

TEST_CASE("haar transform of the constant 2x2 block") {
  Matrix m(2, 2, 1.0);
  const Dwt2Result r = dwt2_single_level(m, wavelet_filters(WaveletFamily::Daubechies, 1));
  REQUIRE(r.approx.rows == 1);
  REQUIRE(r.approx.cols == 1);
  CHECK(r.approx.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(r.detail_horizontal.at(0, 0)) < 1e-12);
  CHECK(std::abs(r.detail_vertical.at(0, 0)) < 1e-12);
  CHECK(std::abs(r.detail_diagonal.at(0, 0)) < 1e-12);
}

TEST_CASE("haar transform of a single corner mass") {
  Matrix m(2, 2, 0.0);
  m.at(0, 0) = 1.0;
  const Dwt2Result r = dwt2_single_level(m, wavelet_filters(WaveletFamily::Daubechies, 1));
  CHECK(std::abs(r.approx.at(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.detail_horizontal.at(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.detail_vertical.at(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.detail_diagonal.at(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("filter bank equals direct inner products") {
  Rng rng(47);
  for (const NamedFilter& nf : kAllFilters) {
    const FilterPair f = wavelet_filters(nf.family, nf.order);
    for (const auto [rows, cols] : {std::pair<std::size_t, std::size_t>{8, 8}, {7, 5}, {16, 10}}) {
      const Matrix x = random_matrix(rng, rows, cols);
      const Dwt2Result got = dwt2_single_level(x, f);
      const Matrix ca = oracle::naive_filter_downsample(x, f.lowpass, f.lowpass);
      const Matrix ch = oracle::naive_filter_downsample(x, f.highpass, f.lowpass);
      const Matrix cv = oracle::naive_filter_downsample(x, f.lowpass, f.highpass);
      const Matrix cd = oracle::naive_filter_downsample(x, f.highpass, f.highpass);
      REQUIRE(got.approx.rows == ca.rows);
      REQUIRE(got.approx.cols == ca.cols);
      for (std::size_t i = 0; i < ca.data.size(); ++i) {
        CHECK(got.approx.data[i] == doctest::Approx(ca.data[i]).epsilon(1e-12).scale(1));
        CHECK(got.detail_horizontal.data[i] == doctest::Approx(ch.data[i]).epsilon(1e-12).scale(1));
        CHECK(got.detail_vertical.data[i] == doctest::Approx(cv.data[i]).epsilon(1e-12).scale(1));
        CHECK(got.detail_diagonal.data[i] == doctest::Approx(cd.data[i]).epsilon(1e-12).scale(1));
      }
    }
  }
}

TEST_CASE("odd axes behave as zero padded") {
  Matrix m(3, 3, 0.0);
  m.at(2, 2) = 1.0;
  const Dwt2Result r = dwt2_single_level(m, wavelet_filters(WaveletFamily::Daubechies, 1));
  CHECK(r.approx.rows == 2);
  CHECK(r.approx.cols == 2);
  // The lone mass sits in a window whose other three taps are padding.
  CHECK(r.approx.at(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("interior-supported signals keep their energy") {
  Rng rng(53);
  for (const NamedFilter& nf : kAllFilters) {
    const FilterPair f = wavelet_filters(nf.family, nf.order);
    const std::size_t len = f.length();
    const std::size_t n = 32;
    Matrix x(n, n, 0.0);
    for (std::size_t i = len; i + len < n; ++i) {
      for (std::size_t j = len; j + len < n; ++j) {
        x.at(i, j) = rng.next_double();
      }
    }
    const Dwt2Result r = dwt2_single_level(x, f);
    const double total = energy(r.approx) + energy(r.detail_horizontal) +
                         energy(r.detail_vertical) + energy(r.detail_diagonal);
    CHECK(total == doctest::Approx(energy(x)).epsilon(1e-8));
  }
}

TEST_CASE("synthesis reconstructs the interior exactly") {
  Rng rng(59);
  for (const NamedFilter& nf : kAllFilters) {
    const FilterPair f = wavelet_filters(nf.family, nf.order);
    const std::size_t len = f.length();
    const std::size_t n = 24;
    const Matrix x = random_matrix(rng, n, n);
    const Dwt2Result coeffs = dwt2_single_level(x, f);
    const Matrix back = idwt2_single_level(coeffs, f, n, n);
    REQUIRE(back.rows == n);
    REQUIRE(back.cols == n);
    for (std::size_t i = len; i + len < n; ++i) {
      for (std::size_t j = len; j + len < n; ++j) {
        CHECK(back.at(i, j) == doctest::Approx(x.at(i, j)).epsilon(1e-9).scale(1));
      }
    }
  }
}

TEST_CASE("transform is linear in the input") {
  Rng rng(61);
  const FilterPair f = wavelet_filters(WaveletFamily::Coiflet, 2);
  const Matrix x = random_matrix(rng, 10, 12);
  const Matrix y = random_matrix(rng, 10, 12);
  Matrix combo(10, 12);
  for (std::size_t i = 0; i < combo.data.size(); ++i) {
    combo.data[i] = 3.0 * x.data[i] + 0.5 * y.data[i];
  }
  const Dwt2Result fx = dwt2_single_level(x, f);
  const Dwt2Result fy = dwt2_single_level(y, f);
  const Dwt2Result fc = dwt2_single_level(combo, f);
  for (std::size_t i = 0; i < fc.approx.data.size(); ++i) {
    CHECK(fc.approx.data[i] ==
          doctest::Approx(3.0 * fx.approx.data[i] + 0.5 * fy.approx.data[i]).epsilon(1e-9).scale(1));
    CHECK(fc.detail_diagonal.data[i] ==
          doctest::Approx(3.0 * fx.detail_diagonal.data[i] + 0.5 * fy.detail_diagonal.data[i])
              .epsilon(1e-9)
              .scale(1));
  }
}
