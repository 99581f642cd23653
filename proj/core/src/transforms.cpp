#include "qupid/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace qupid {

namespace {

constexpr double kPi = 3.14159265358979323846;

int checked_order(int order) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("wavelet order must be 1..3, got " + std::to_string(order));
  }
  return order;
}

}  // namespace

TransformKind TransformKind::daubechies(int order) {
  return {Family::Daubechies, checked_order(order)};
}

TransformKind TransformKind::coiflet(int order) {
  return {Family::Coiflet, checked_order(order)};
}

std::string TransformKind::name() const {
  switch (family) {
    case Family::Identity: return "id";
    case Family::Fourier: return "fft";
    case Family::Daubechies: return "db" + std::to_string(order);
    case Family::Coiflet: return "coif" + std::to_string(order);
  }
  return "?";
}

TransformKind TransformKind::parse(const std::string& name) {
  if (name == "id") return identity();
  if (name == "fft") return fourier();
  if (name.rfind("db", 0) == 0 && name.size() == 3) {
    return daubechies(name[2] - '0');
  }
  if (name.rfind("coif", 0) == 0 && name.size() == 5) {
    return coiflet(name[4] - '0');
  }
  throw std::invalid_argument("unknown transform: " + name);
}

bool operator==(const TransformKind& a, const TransformKind& b) {
  return a.family == b.family && (!a.is_wavelet() || a.order == b.order);
}

FilterPair wavelet_filters(const TransformKind& kind) {
  switch (kind.family) {
    case TransformKind::Family::Daubechies:
      return wavelet_filters(WaveletFamily::Daubechies, kind.order);
    case TransformKind::Family::Coiflet:
      return wavelet_filters(WaveletFamily::Coiflet, kind.order);
    default:
      throw std::invalid_argument("transform " + kind.name() + " has no wavelet filters");
  }
}

std::size_t FeatureLayout::total_length() const {
  std::size_t total = 0;
  for (const FeatureSegment& seg : segments) total += seg.extent();
  return total;
}

std::vector<std::string> FeatureLayout::column_names() const {
  std::vector<std::string> names;
  names.reserve(total_length());
  for (const FeatureSegment& seg : segments) {
    for (std::size_t i = 0; i < seg.rows; ++i) {
      for (std::size_t j = 0; j < seg.cols; ++j) {
        names.push_back(seg.name + "_" + std::to_string(i) + "_" + std::to_string(j));
      }
    }
  }
  return names;
}

FeatureVector transform_identity(const QuantizedMeasure& measure) {
  FeatureVector out;
  out.values = measure.masses.data;
  out.layout.segments = {{"id", measure.masses.rows, measure.masses.cols}};
  return out;
}

FeatureVector transform_fourier(const QuantizedMeasure& measure) {
  const ComplexMatrix spectrum = dft2d(measure);
  FeatureVector out;
  out.values.reserve(2 * spectrum.data.size());
  for (const Complex& c : spectrum.data) out.values.push_back(std::abs(c));
  for (const Complex& c : spectrum.data) {
    if (c.real() == 0.0 && c.imag() == 0.0) {
      out.values.push_back(0.0);
      continue;
    }
    double phase = std::atan2(c.imag(), c.real());
    if (phase <= -kPi) phase = kPi;  // atan2 returns -pi for (-0.0, x<0); range is (-pi, pi]
    out.values.push_back(phase);
  }
  out.layout.segments = {{"mag", spectrum.rows, spectrum.cols},
                         {"phase", spectrum.rows, spectrum.cols}};
  return out;
}

FeatureVector transform_wavelet(const QuantizedMeasure& measure, const TransformKind& kind) {
  const FilterPair filters = wavelet_filters(kind);
  const Dwt2Result coeffs = dwt2_single_level(measure, filters);
  FeatureVector out;
  out.values.reserve(4 * coeffs.approx.size());
  for (const Matrix* block : {&coeffs.detail_horizontal, &coeffs.detail_vertical,
                              &coeffs.detail_diagonal, &coeffs.approx}) {
    out.values.insert(out.values.end(), block->data.begin(), block->data.end());
  }
  const std::size_t rows = coeffs.approx.rows;
  const std::size_t cols = coeffs.approx.cols;
  out.layout.segments = {{"cH", rows, cols}, {"cV", rows, cols},
                         {"cD", rows, cols}, {"cA", rows, cols}};
  return out;
}

FeatureVector apply(const QuantizedMeasure& measure, const TransformKind& kind) {
  switch (kind.family) {
    case TransformKind::Family::Identity: return transform_identity(measure);
    case TransformKind::Family::Fourier: return transform_fourier(measure);
    default: return transform_wavelet(measure, kind);
  }
}

FeatureVector concat_features(const std::vector<FeatureVector>& parts,
                              const std::vector<std::string>& prefixes) {
  if (parts.size() != prefixes.size()) {
    throw std::invalid_argument("concat_features: one prefix per part required");
  }
  FeatureVector out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.values.insert(out.values.end(), parts[i].values.begin(), parts[i].values.end());
    for (FeatureSegment seg : parts[i].layout.segments) {
      seg.name = prefixes[i] + "_" + seg.name;
      out.layout.segments.push_back(seg);
    }
  }
  return out;
}

}  // namespace qupid
