#include "qupid/wavelets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qupid {

namespace {

// Scaling filters in decomposition order. db2/db3 from the closed forms over
// sqrt(3) and sqrt(10); coiflets Newton-refined from the published tables
// until the orthonormality system is satisfied to machine precision.
const std::vector<double> kDb2{
    -0.12940952255126034, 0.22414386804201339, 0.83651630373780772, 0.4829629131445341};

const std::vector<double> kDb3{
    0.035226291885709533, -0.0854412738820267, -0.13501102001025458,
    0.4598775021184916,   0.80689150931109255, 0.33267055295008263};

const std::vector<double> kCoif1{
    -0.015655728135791927, -0.072732619512526436, 0.38486484686485761,
    0.85257202021160039,   0.33789766245748187,   -0.07273261951252645};

const std::vector<double> kCoif2{
    -0.00072054944552042146, -0.0018232088709129862, 0.005611434819372629,
    0.023680171946853883,    -0.059434418646446482,  -0.076488599078284619,
    0.41700518442326306,     0.81272363544940818,    0.3861100668227464,
    -0.067372554723717962,   -0.04146493678686753,   0.016387336463201081};

const std::vector<double> kCoif3{
    -3.4599773194029451e-05, -7.0983302506513987e-05, 0.00046621695981454141,
    0.0011175187707621846,   -0.0025745176880385147,  -0.0090079761363838079,
    0.015880544863002794,    0.034555027572685845,    -0.082301927104475231,
    -0.07179982161887731,    0.42848347637479034,     0.79377722262656936,
    0.40517690241113286,     -0.061123390003724583,   -0.065771911282299408,
    0.023452696142483843,    0.0077825964258142546,   -0.0037935128644613751};

FilterPair make_pair(const std::vector<double>& lowpass) {
  FilterPair filters;
  filters.lowpass = lowpass;
  const std::size_t len = lowpass.size();
  filters.highpass.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    filters.highpass[k] = sign * lowpass[len - 1 - k];
  }
  filters.validate();
  return filters;
}

// 1-D analysis along contiguous rows of a row-major block.
void analyze_rows(const double* input, std::size_t rows, std::size_t cols,
                  const std::vector<double>& filter, double* output,
                  std::size_t out_cols) {
  const std::size_t len = filter.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = input + i * cols;
    double* out_row = output + i * out_cols;
    for (std::size_t l = 0; l < out_cols; ++l) {
      double acc = 0.0;
      const std::size_t start = 2 * l;
      const std::size_t limit = std::min(len, cols > start ? cols - start : 0);
      for (std::size_t m = 0; m < limit; ++m) acc += row[start + m] * filter[m];
      out_row[l] = acc;
    }
  }
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Matrix analyze_axis1(const Matrix& input, const std::vector<double>& filter) {
  const std::size_t out_cols = (input.cols + 1) / 2;
  Matrix out(input.rows, out_cols);
  analyze_rows(input.data.data(), input.rows, input.cols, filter, out.data.data(), out_cols);
  return out;
}

Matrix analyze_axis0(const Matrix& input, const std::vector<double>& filter) {
  return transpose(analyze_axis1(transpose(input), filter));
}

}  // namespace

void FilterPair::validate() const {
  const std::size_t len = lowpass.size();
  if (len < 2 || len % 2 != 0 || highpass.size() != len) {
    throw std::invalid_argument("filter pair must have matching even lengths");
  }
  constexpr double kTol = 1e-9;
  double sum = 0.0;
  double energy = 0.0;
  for (double h : lowpass) {
    sum += h;
    energy += h * h;
  }
  if (std::abs(sum - std::sqrt(2.0)) > kTol) {
    throw std::invalid_argument("lowpass sum != sqrt(2)");
  }
  if (std::abs(energy - 1.0) > kTol) {
    throw std::invalid_argument("lowpass energy != 1");
  }
  for (std::size_t shift = 2; shift < len; shift += 2) {
    double dot = 0.0;
    for (std::size_t k = 0; k + shift < len; ++k) dot += lowpass[k] * lowpass[k + shift];
    if (std::abs(dot) > kTol) {
      throw std::invalid_argument("lowpass shifts not orthonormal");
    }
  }
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (highpass[k] != sign * lowpass[len - 1 - k]) {
      throw std::invalid_argument("highpass violates quadrature-mirror relation");
    }
  }
}

FilterPair wavelet_filters(WaveletFamily family, int order) {
  if (family == WaveletFamily::Daubechies) {
    switch (order) {
      case 1: {
        const double inv_sqrt2 = std::sqrt(0.5);
        return make_pair({inv_sqrt2, inv_sqrt2});
      }
      case 2: return make_pair(kDb2);
      case 3: return make_pair(kDb3);
      default: break;
    }
    throw std::invalid_argument("unsupported Daubechies order " + std::to_string(order));
  }
  switch (order) {
    case 1: return make_pair(kCoif1);
    case 2: return make_pair(kCoif2);
    case 3: return make_pair(kCoif3);
    default: break;
  }
  throw std::invalid_argument("unsupported Coiflet order " + std::to_string(order));
}

Dwt2Result dwt2_single_level(const Matrix& input, const FilterPair& filters) {
  const Matrix low1 = analyze_axis1(input, filters.lowpass);
  const Matrix high1 = analyze_axis1(input, filters.highpass);
  Dwt2Result out;
  out.approx = analyze_axis0(low1, filters.lowpass);
  out.detail_vertical = analyze_axis0(high1, filters.lowpass);
  out.detail_horizontal = analyze_axis0(low1, filters.highpass);
  out.detail_diagonal = analyze_axis0(high1, filters.highpass);
  return out;
}

Dwt2Result dwt2_single_level(const QuantizedMeasure& measure, const FilterPair& filters) {
  return dwt2_single_level(measure.masses, filters);
}

namespace {

// Adjoint of the analysis correlation: scatter each coefficient back over
// its window.
void synthesize_axis1(const Matrix& coeffs, const std::vector<double>& filter,
                      Matrix& accum) {
  const std::size_t len = filter.size();
  for (std::size_t i = 0; i < coeffs.rows; ++i) {
    for (std::size_t l = 0; l < coeffs.cols; ++l) {
      const double c = coeffs.at(i, l);
      if (c == 0.0) continue;
      const std::size_t start = 2 * l;
      const std::size_t limit = std::min(len, accum.cols > start ? accum.cols - start : 0);
      for (std::size_t m = 0; m < limit; ++m) accum.at(i, start + m) += c * filter[m];
    }
  }
}

Matrix synthesize_axis0_pair(const Matrix& low, const Matrix& high,
                             const FilterPair& filters, std::size_t rows) {
  Matrix accum_t(low.cols, rows);
  const Matrix low_t = transpose(low);
  const Matrix high_t = transpose(high);
  synthesize_axis1(low_t, filters.lowpass, accum_t);
  synthesize_axis1(high_t, filters.highpass, accum_t);
  return transpose(accum_t);
}

}  // namespace

Matrix idwt2_single_level(const Dwt2Result& coeffs, const FilterPair& filters,
                          std::size_t rows, std::size_t cols) {
  // Undo axis 0 first: rebuild the two axis-1 half-band images, then undo axis 1.
  const Matrix low1 = synthesize_axis0_pair(coeffs.approx, coeffs.detail_horizontal,
                                            filters, rows);
  const Matrix high1 = synthesize_axis0_pair(coeffs.detail_vertical, coeffs.detail_diagonal,
                                             filters, rows);
  Matrix out(rows, cols);
  synthesize_axis1(low1, filters.lowpass, out);
  synthesize_axis1(high1, filters.highpass, out);
  return out;
}

}  // namespace qupid
