#include "qupid/grid.hpp"

#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qupid/csv.hpp"

namespace qupid {

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

std::string to_string(GridScaling scaling) {
  return scaling == GridScaling::Uniform ? "uniform" : "log";
}

GridScaling grid_scaling_from_string(const std::string& name) {
  if (name == "uniform") return GridScaling::Uniform;
  if (name == "log") return GridScaling::LogScaled;
  throw std::invalid_argument("unknown grid scaling: " + name);
}

void GridSpec::validate() const {
  if (b_edges.empty() || p_edges.empty()) {
    throw std::invalid_argument("grid needs at least one edge per axis");
  }
  for (const auto* edges : {&b_edges, &p_edges}) {
    for (std::size_t i = 1; i < edges->size(); ++i) {
      if ((*edges)[i] <= (*edges)[i - 1]) {
        throw std::invalid_argument("grid edges must be strictly increasing");
      }
    }
  }
  if (scaling == GridScaling::LogScaled && (alpha.first <= 0.0 || alpha.second <= 0.0)) {
    throw std::invalid_argument("log-scaled grid needs positive alpha");
  }
}

bool operator==(const GridSpec& a, const GridSpec& b) {
  return a.b_edges == b.b_edges && a.p_edges == b.p_edges && a.scaling == b.scaling &&
         (a.scaling != GridScaling::LogScaled || a.alpha == b.alpha);
}

std::string grid_to_json(const GridSpec& grid) {
  nlohmann::ordered_json doc;
  doc["b_edges"] = grid.b_edges;
  doc["p_edges"] = grid.p_edges;
  doc["scaling"] = to_string(grid.scaling);
  doc["alpha"] = {grid.alpha.first, grid.alpha.second};
  return doc.dump(2) + "\n";
}

GridSpec grid_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  GridSpec grid;
  grid.b_edges = doc.at("b_edges").get<std::vector<double>>();
  grid.p_edges = doc.at("p_edges").get<std::vector<double>>();
  grid.scaling = grid_scaling_from_string(doc.at("scaling").get<std::string>());
  const auto alpha = doc.at("alpha").get<std::vector<double>>();
  if (alpha.size() != 2) throw std::runtime_error("grid alpha must have two entries");
  grid.alpha = {alpha[0], alpha[1]};
  grid.validate();
  return grid;
}

void save_grid_json(const GridSpec& grid, const std::filesystem::path& path) {
  write_text_file(path, grid_to_json(grid));
}

GridSpec load_grid_json(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::string text;
  for (const auto& line : lines) text += line + "\n";
  return grid_from_json(text);
}

double QuantizedMeasure::total_mass() const {
  return std::accumulate(masses.data.begin(), masses.data.end(), 0.0);
}

}  // namespace qupid
