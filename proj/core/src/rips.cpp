#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qupid/csv.hpp"
#include "qupid/homology.hpp"

namespace qupid {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Returns false if already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

struct Edge {
  double length;
  std::uint32_t u, v;  // u < v

  bool operator<(const Edge& o) const {
    if (length != o.length) return length < o.length;
    if (u != o.u) return u < o.u;
    return v < o.v;
  }
};

std::vector<Edge> all_edges(const PointCloud& cloud, double max_length) {
  const std::size_t n = cloud.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(cloud, i, j);
      if (d <= max_length) {
        edges.push_back({d, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

void PointCloud::push_back(std::initializer_list<double> pt) {
  if (dim == 0) dim = pt.size();
  if (pt.size() != dim) throw std::invalid_argument("point dimension mismatch");
  coords.insert(coords.end(), pt.begin(), pt.end());
}

double euclidean_distance(const PointCloud& cloud, std::size_t i, std::size_t j) {
  const double* a = cloud.point(i);
  const double* b = cloud.point(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < cloud.dim; ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

void save_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path) {
  std::string out;
  const std::size_t n = cloud.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < cloud.dim; ++k) {
      if (k > 0) out += ',';
      out += format_double(cloud.point(i)[k]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

PointCloud load_cloud_csv(const std::filesystem::path& path) {
  PointCloud cloud;
  for (const std::string& line : read_lines(path)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cloud.dim == 0) {
      cloud.dim = cells.size();
    } else if (cells.size() != cloud.dim) {
      throw std::runtime_error("ragged point cloud row in " + path.string());
    }
    for (const std::string& cell : cells) cloud.coords.push_back(parse_double(cell));
  }
  return cloud;
}

PersistenceDiagram rips_h0(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  PersistenceDiagram out;
  out.degree = 0;
  if (n == 0) return out;

  const std::vector<Edge> edges = all_edges(cloud, std::numeric_limits<double>::infinity());
  UnionFind uf(n);
  for (const Edge& e : edges) {
    if (uf.unite(e.u, e.v) && e.length > 0.0) {
      out.points.push_back({0.0, e.length});
    }
  }
  out.points.push_back({0.0, kInfiniteDeath});
  return out;
}

PersistenceDiagram rips_h1(const PointCloud& cloud, double max_scale,
                           std::size_t triangle_budget) {
  if (!(max_scale >= 0.0)) throw std::invalid_argument("max_scale must be non-negative");
  const std::size_t n = cloud.size();
  PersistenceDiagram out;
  out.degree = 1;
  if (n < 3) return out;

  const std::vector<Edge> edges = all_edges(cloud, max_scale);
  const std::size_t n_edges = edges.size();

  // Rank of each edge in filtration order, indexed by vertex pair. Dense
  // matrix when affordable, hash map otherwise.
  constexpr std::uint32_t kNoEdge = 0xffffffffu;
  std::vector<std::uint32_t> dense;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse;
  const bool use_dense = n <= 2048;
  if (use_dense) {
    dense.assign(n * n, kNoEdge);
  } else {
    sparse.reserve(n_edges * 2);
  }
  auto edge_rank = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (a > b) std::swap(a, b);
    if (use_dense) return dense[static_cast<std::size_t>(a) * n + b];
    auto it = sparse.find((static_cast<std::uint64_t>(a) << 32) | b);
    return it == sparse.end() ? kNoEdge : it->second;
  };
  for (std::size_t r = 0; r < n_edges; ++r) {
    const Edge& e = edges[r];
    if (use_dense) {
      dense[static_cast<std::size_t>(e.u) * n + e.v] = static_cast<std::uint32_t>(r);
    } else {
      sparse[(static_cast<std::uint64_t>(e.u) << 32) | e.v] = static_cast<std::uint32_t>(r);
    }
  }

  // Neighbour lists restricted to the truncated complex.
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (const Edge& e : edges) {
    nbrs[e.u].push_back(e.v);
  }
  for (auto& list : nbrs) std::sort(list.begin(), list.end());

  struct Triangle {
    double value;
    std::uint32_t a, b, c;  // a < b < c

    bool operator<(const Triangle& o) const {
      if (value != o.value) return value < o.value;
      if (a != o.a) return a < o.a;
      if (b != o.b) return b < o.b;
      return c < o.c;
    }
  };

  std::vector<Triangle> triangles;
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto& list = nbrs[a];
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const std::uint32_t b = list[i];
        const std::uint32_t c = list[j];
        const std::uint32_t bc = edge_rank(b, c);
        if (bc == kNoEdge) continue;
        const double value = std::max({edges[edge_rank(a, b)].length,
                                       edges[edge_rank(a, c)].length, edges[bc].length});
        triangles.push_back({value, a, b, c});
        if (triangles.size() > triangle_budget) {
          std::ostringstream msg;
          msg << "triangle budget (" << triangle_budget << ") exceeded at scale "
              << format_double(max_scale) << "; retry with max_scale <= "
              << format_double(0.75 * max_scale);
          throw std::runtime_error(msg.str());
        }
      }
    }
  }
  std::sort(triangles.begin(), triangles.end());

  // Standard boundary reduction over Z/2. Columns are sorted edge-rank lists;
  // the pivot is the largest rank. pivot_owner maps an edge rank to the
  // reduced column whose pivot it is.
  std::vector<std::uint32_t> pivot_owner(n_edges, kNoEdge);
  std::vector<std::vector<std::uint32_t>> reduced;
  reduced.reserve(triangles.size());
  std::vector<std::uint32_t> column, merged;

  for (const Triangle& t : triangles) {
    column = {edge_rank(t.a, t.b), edge_rank(t.a, t.c), edge_rank(t.b, t.c)};
    std::sort(column.begin(), column.end());
    while (!column.empty()) {
      const std::uint32_t pivot = column.back();
      const std::uint32_t owner = pivot_owner[pivot];
      if (owner == kNoEdge) break;
      // Symmetric difference with the owning column.
      const std::vector<std::uint32_t>& other = reduced[owner];
      merged.clear();
      std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                    std::back_inserter(merged));
      column.swap(merged);
    }
    if (!column.empty()) {
      const std::uint32_t pivot = column.back();
      pivot_owner[pivot] = static_cast<std::uint32_t>(reduced.size());
      const double birth = edges[pivot].length;
      if (t.value > birth) out.points.push_back({birth, t.value});
    }
    reduced.push_back(column);
  }

  std::sort(out.points.begin(), out.points.end(), [](const DiagramPoint& x, const DiagramPoint& y) {
    return std::tie(x.birth, x.death) < std::tie(y.birth, y.death);
  });
  return out;
}

}  // namespace qupid
