#pragma once

#include <string>
#include <vector>

#include "qupid/fft.hpp"
#include "qupid/grid.hpp"
#include "qupid/wavelets.hpp"

namespace qupid {

/// Which discrete transform turns a quantized measure into features.
/// Wavelet orders run 1..3 for both families; Daubechies(1) is Haar.
struct TransformKind {
  enum class Family { Identity, Fourier, Daubechies, Coiflet };

  Family family = Family::Identity;
  int order = 0;

  static TransformKind identity() { return {Family::Identity, 0}; }
  static TransformKind fourier() { return {Family::Fourier, 0}; }
  static TransformKind daubechies(int order);
  static TransformKind coiflet(int order);

  bool is_wavelet() const {
    return family == Family::Daubechies || family == Family::Coiflet;
  }

  /// CLI spelling: id, fft, db1..db3, coif1..coif3.
  std::string name() const;
  static TransformKind parse(const std::string& name);
};

bool operator==(const TransformKind& a, const TransformKind& b);

FilterPair wavelet_filters(const TransformKind& kind);

/// One named block of a feature vector, an r x c matrix flattened row-major.
struct FeatureSegment {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t extent() const { return rows * cols; }
};

struct FeatureLayout {
  std::vector<FeatureSegment> segments;

  std::size_t total_length() const;
  /// Column names `{segment}_{i}_{j}`, in storage order.
  std::vector<std::string> column_names() const;
};

struct FeatureVector {
  std::vector<double> values;
  FeatureLayout layout;
};

/// Row-major flattening of the masses; segment "id" of length r*s.
FeatureVector transform_identity(const QuantizedMeasure& measure);

/// Magnitudes then phases of the 2-D DFT, each flattened; length 2*r*s.
/// Phases are radians in (-pi, pi], with the phase of zero defined as 0.
FeatureVector transform_fourier(const QuantizedMeasure& measure);

/// Wavelet details and approximation, concatenated [cH, cV, cD, cA].
FeatureVector transform_wavelet(const QuantizedMeasure& measure, const TransformKind& kind);

/// Dispatch on the transform kind.
FeatureVector apply(const QuantizedMeasure& measure, const TransformKind& kind);

/// Concatenates feature vectors, prefixing each one's segment names with
/// `prefixes[i] + "_"` so column names stay unique.
FeatureVector concat_features(const std::vector<FeatureVector>& parts,
                              const std::vector<std::string>& prefixes);

}  // namespace qupid
