#pragma once

#include <filesystem>
#include <limits>
#include <vector>

namespace qupid {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

/// One feature of a persistence diagram: born at `birth`, dead at `death`.
/// `death` may be +inf for an essential class; `birth` is always finite and
/// never exceeds `death`.
struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;

  bool has_infinite_death() const { return death == kInfiniteDeath; }
  double persistence() const { return death - birth; }
};

bool operator==(const DiagramPoint& a, const DiagramPoint& b);

/// Finite multiset of (birth, death) pairs in a fixed homology degree.
/// Multiplicity is represented by repetition; equality compares sorted points.
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
  int degree = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Diagram point after the (b, d) -> (b, d - b) change of coordinates.
struct BPPoint {
  double b = 0.0;  // birth
  double p = 0.0;  // persistence
};

bool operator==(const BPPoint& a, const BPPoint& b);

/// What to do with infinite-death points when converting to
/// birth-persistence coordinates.
struct InfinitePolicy {
  enum class Kind { Drop, ClampTo };
  Kind kind = Kind::Drop;
  double clamp_value = 0.0;

  static InfinitePolicy drop() { return {Kind::Drop, 0.0}; }
  static InfinitePolicy clamp_to(double value) { return {Kind::ClampTo, value}; }
};

/// Maps each finite-death point (b, d) to (b, d - b). Infinite-death points
/// are dropped or clamped to (b, clamp - b) per policy.
///
/// Throws if a clamp value lies below the birth of an infinite-death point
/// (the clamped persistence would be negative).
std::vector<BPPoint> to_birth_persistence(const PersistenceDiagram& diagram,
                                          const InfinitePolicy& policy);

/// Diagram file format: header `birth,death`, one row per point, the literal
/// `inf` for infinite deaths. The homology degree is carried by the filename
/// suffix `_h{k}.csv`.
void save_diagram_csv(const PersistenceDiagram& diagram, const std::filesystem::path& path);
PersistenceDiagram load_diagram_csv(const std::filesystem::path& path, int degree);

/// Extracts k from a `..._h{k}.csv` filename; returns -1 if the suffix is absent.
int degree_from_filename(const std::filesystem::path& path);

}  // namespace qupid
