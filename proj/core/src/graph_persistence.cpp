#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qupid/csv.hpp"
#include "qupid/homology.hpp"

namespace qupid {

namespace {

void sort_points(PersistenceDiagram& dgm) {
  std::sort(dgm.points.begin(), dgm.points.end(),
            [](const DiagramPoint& x, const DiagramPoint& y) {
              return std::tie(x.birth, x.death) < std::tie(y.birth, y.death);
            });
}

}  // namespace

void WeightedGraph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v] : edges) {
    if (u >= n_vertices || v >= n_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loops not supported");
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
  }
}

void save_graph(const WeightedGraph& graph, const std::filesystem::path& path) {
  std::string out = std::to_string(graph.n_vertices) + "\n";
  for (const auto& [u, v] : graph.edges) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  write_text_file(path, out);
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  WeightedGraph graph;
  bool have_header = false;
  for (const std::string& line : read_lines(path)) {
    if (line.empty()) continue;
    std::istringstream in(line);
    if (!have_header) {
      if (!(in >> graph.n_vertices)) throw std::runtime_error("bad graph header in " + path.string());
      have_header = true;
      continue;
    }
    std::size_t u = 0, v = 0;
    if (!(in >> u >> v)) throw std::runtime_error("bad edge line in " + path.string());
    graph.edges.emplace_back(u, v);
  }
  if (!have_header) throw std::runtime_error("empty graph file " + path.string());
  graph.validate();
  return graph;
}

Matrix normalized_laplacian(const WeightedGraph& graph) {
  graph.validate();
  const std::size_t n = graph.n_vertices;
  std::vector<double> degree(n, 0.0);
  for (const auto& [u, v] : graph.edges) {
    degree[u] += 1.0;
    degree[v] += 1.0;
  }
  Matrix lap(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    lap.at(v, v) = degree[v] > 0.0 ? 1.0 : 0.0;
  }
  for (const auto& [u, v] : graph.edges) {
    const double w = -1.0 / std::sqrt(degree[u] * degree[v]);
    lap.at(u, v) = w;
    lap.at(v, u) = w;
  }
  return lap;
}

EigenDecomposition jacobi_eigen(const Matrix& symmetric) {
  if (symmetric.rows != symmetric.cols) throw std::invalid_argument("matrix must be square");
  const std::size_t n = symmetric.rows;
  Matrix a = symmetric;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  auto off_norm = [&]() {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) sum += a.at(i, j) * a.at(i, j);
      }
    }
    return std::sqrt(sum);
  };

  constexpr double kTol = 1e-12;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > kTol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double tau = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a.at(p, k);
          const double aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v.at(k, p);
          const double vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * vkq;
          v.at(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (n > 0 && off_norm() > kTol) throw std::runtime_error("eigensolver failed to converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a.at(x, x) < a.at(y, y); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a.at(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors.at(i, k) = v.at(i, order[k]);
  }
  return out;
}

VertexFunction hks(const WeightedGraph& graph, double t) {
  if (t < 0.0) throw std::invalid_argument("diffusion time must be non-negative");
  const std::size_t n = graph.n_vertices;
  const EigenDecomposition eig = jacobi_eigen(normalized_laplacian(graph));
  VertexFunction out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double weight = std::exp(-t * eig.eigenvalues[k]);
    for (std::size_t vtx = 0; vtx < n; ++vtx) {
      const double psi = eig.eigenvectors.at(vtx, k);
      out[vtx] += weight * psi * psi;
    }
  }
  return out;
}

std::vector<double> extend_to_edges(const WeightedGraph& graph, const VertexFunction& f) {
  if (f.size() != graph.n_vertices) throw std::invalid_argument("vertex function size mismatch");
  std::vector<double> out;
  out.reserve(graph.edges.size());
  for (const auto& [u, v] : graph.edges) out.push_back(std::max(f[u], f[v]));
  return out;
}

GraphDiagrams graph_sublevel_persistence(const WeightedGraph& graph, const VertexFunction& f,
                                         EssentialPolicy policy) {
  graph.validate();
  if (f.size() != graph.n_vertices) throw std::invalid_argument("vertex function size mismatch");
  const std::size_t n = graph.n_vertices;

  GraphDiagrams out;
  out.h0.degree = 0;
  out.h1.degree = 1;
  if (n == 0) return out;

  const double f_max = *std::max_element(f.begin(), f.end());
  auto essential_death = [&](double birth) -> double {
    return policy == EssentialPolicy::ClampToExtremum ? std::max(birth, f_max) : kInfiniteDeath;
  };

  struct EdgeEntry {
    double value;
    std::size_t u, v;

    bool operator<(const EdgeEntry& o) const {
      return std::tie(value, u, v) < std::tie(o.value, o.u, o.v);
    }
  };
  std::vector<EdgeEntry> order;
  order.reserve(graph.edges.size());
  for (const auto& [u, v] : graph.edges) {
    const auto [lo, hi] = std::minmax(u, v);
    order.push_back({std::max(f[u], f[v]), lo, hi});
  }
  std::sort(order.begin(), order.end());

  // Union-find where each component remembers its oldest (birth, vertex).
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<double, std::size_t>> oldest(n);  // root -> (birth, vertex)
  for (std::size_t vtx = 0; vtx < n; ++vtx) oldest[vtx] = {f[vtx], vtx};

  for (const EdgeEntry& e : order) {
    const std::size_t ru = find(e.u);
    const std::size_t rv = find(e.v);
    if (ru == rv) {
      // Cycle-closing edge: a degree-1 class is born, never to die.
      if (policy != EssentialPolicy::Drop) {
        out.h1.points.push_back({e.value, essential_death(e.value)});
      }
      continue;
    }
    // Elder rule: the component with the smaller (birth, vertex) survives.
    std::size_t keep = ru, lose = rv;
    if (oldest[lose] < oldest[keep]) std::swap(keep, lose);
    if (e.value > oldest[lose].first) {
      out.h0.points.push_back({oldest[lose].first, e.value});
    }
    parent[lose] = keep;
  }

  if (policy != EssentialPolicy::Drop) {
    for (std::size_t vtx = 0; vtx < n; ++vtx) {
      if (find(vtx) == vtx) {
        out.h0.points.push_back({oldest[vtx].first, essential_death(oldest[vtx].first)});
      }
    }
  }

  sort_points(out.h0);
  sort_points(out.h1);
  return out;
}

GraphDiagrams graph_superlevel_persistence(const WeightedGraph& graph, const VertexFunction& f,
                                           EssentialPolicy policy) {
  VertexFunction neg(f.size());
  std::transform(f.begin(), f.end(), neg.begin(), [](double x) { return -x; });
  GraphDiagrams mirrored = graph_sublevel_persistence(graph, neg, EssentialPolicy::Keep);

  const double f_min = f.empty() ? 0.0 : *std::min_element(f.begin(), f.end());
  auto map_back = [&](const PersistenceDiagram& in, int degree) {
    PersistenceDiagram dgm;
    dgm.degree = degree;
    for (const DiagramPoint& pt : in.points) {
      if (pt.has_infinite_death()) {
        // A class entered at -birth and still alive at the global minimum.
        switch (policy) {
          case EssentialPolicy::Drop:
            break;
          case EssentialPolicy::Keep:
            dgm.points.push_back({-pt.birth, kInfiniteDeath});
            break;
          case EssentialPolicy::ClampToExtremum:
            dgm.points.push_back({std::min(f_min, -pt.birth), -pt.birth});
            break;
        }
      } else {
        dgm.points.push_back({-pt.death, -pt.birth});
      }
    }
    sort_points(dgm);
    return dgm;
  };

  GraphDiagrams out;
  out.h0 = map_back(mirrored.h0, 0);
  out.h1 = map_back(mirrored.h1, 1);
  return out;
}

}  // namespace qupid
