#include "qupid/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qupid/csv.hpp"

namespace qupid {

bool operator==(const DiagramPoint& a, const DiagramPoint& b) {
  return a.birth == b.birth && a.death == b.death;
}

bool operator==(const BPPoint& a, const BPPoint& b) {
  return a.b == b.b && a.p == b.p;
}

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.degree != b.degree || a.points.size() != b.points.size()) return false;
  auto key = [](const DiagramPoint& pt) { return std::pair(pt.birth, pt.death); };
  auto sa = a.points;
  auto sb = b.points;
  auto by_key = [&](const DiagramPoint& x, const DiagramPoint& y) { return key(x) < key(y); };
  std::sort(sa.begin(), sa.end(), by_key);
  std::sort(sb.begin(), sb.end(), by_key);
  return std::equal(sa.begin(), sa.end(), sb.begin(),
                    [](const DiagramPoint& x, const DiagramPoint& y) { return x == y; });
}

std::vector<BPPoint> to_birth_persistence(const PersistenceDiagram& diagram,
                                          const InfinitePolicy& policy) {
  std::vector<BPPoint> out;
  out.reserve(diagram.points.size());
  for (const DiagramPoint& pt : diagram.points) {
    if (pt.has_infinite_death()) {
      if (policy.kind == InfinitePolicy::Kind::Drop) continue;
      if (policy.clamp_value < pt.birth) {
        throw std::invalid_argument("clamp below birth: clamp value " +
                                    format_double(policy.clamp_value) +
                                    " < birth " + format_double(pt.birth));
      }
      out.push_back({pt.birth, policy.clamp_value - pt.birth});
    } else {
      out.push_back({pt.birth, pt.death - pt.birth});
    }
  }
  return out;
}

void save_diagram_csv(const PersistenceDiagram& diagram, const std::filesystem::path& path) {
  std::string body = "birth,death\n";
  for (const DiagramPoint& pt : diagram.points) {
    body += format_double(pt.birth);
    body += ',';
    body += pt.has_infinite_death() ? "inf" : format_double(pt.death);
    body += '\n';
  }
  write_text_file(path, body);
}

PersistenceDiagram load_diagram_csv(const std::filesystem::path& path, int degree) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "birth,death") {
    throw std::runtime_error("bad diagram file (missing birth,death header): " + path.string());
  }
  PersistenceDiagram diagram;
  diagram.degree = degree;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 2) {
      throw std::runtime_error("bad diagram row in " + path.string() + ": " + lines[i]);
    }
    DiagramPoint pt;
    pt.birth = parse_double(fields[0]);
    pt.death = fields[1] == "inf" ? kInfiniteDeath : parse_double(fields[1]);
    if (pt.birth > pt.death) {
      throw std::runtime_error("birth > death in " + path.string() + ": " + lines[i]);
    }
    diagram.points.push_back(pt);
  }
  return diagram;
}

int degree_from_filename(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto pos = stem.rfind("_h");
  if (pos == std::string::npos || pos + 2 >= stem.size()) return -1;
  int degree = 0;
  for (std::size_t i = pos + 2; i < stem.size(); ++i) {
    if (stem[i] < '0' || stem[i] > '9') return -1;
    degree = degree * 10 + (stem[i] - '0');
  }
  return degree;
}

}  // namespace qupid
