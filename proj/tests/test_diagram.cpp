#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qupid/csv.hpp"
#include "qupid/diagram.hpp"

using namespace qupid;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "qupid_test_diagram";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("birth-persistence change of coordinates") {
  PersistenceDiagram d;
  d.points = {{0.2, 0.5}};
  const auto bp = to_birth_persistence(d, InfinitePolicy::drop());
  REQUIRE(bp.size() == 1);
  CHECK(bp[0].b == 0.2);
  CHECK(bp[0].p == 0.5 - 0.2);
}

TEST_CASE("infinite deaths are dropped or clamped per policy") {
  PersistenceDiagram d;
  d.points = {{0.2, 0.5}, {0.1, kInfiniteDeath}};

  const auto dropped = to_birth_persistence(d, InfinitePolicy::drop());
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0].b == 0.2);

  const auto clamped = to_birth_persistence(d, InfinitePolicy::clamp_to(1.0));
  REQUIRE(clamped.size() == 2);
  CHECK(clamped[1].b == 0.1);
  CHECK(clamped[1].p == 1.0 - 0.1);
}

TEST_CASE("clamp value below an essential birth throws") {
  PersistenceDiagram d;
  d.points = {{0.1, kInfiniteDeath}};
  CHECK_THROWS_AS(to_birth_persistence(d, InfinitePolicy::clamp_to(0.05)),
                  std::invalid_argument);
  try {
    to_birth_persistence(d, InfinitePolicy::clamp_to(0.05));
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("clamp") != std::string::npos);
  }
}

TEST_CASE("conversion preserves cardinality") {
  PersistenceDiagram d;
  d.points = {{0.0, 1.0}, {0.5, 2.0}, {0.25, kInfiniteDeath}, {1.0, kInfiniteDeath}};
  CHECK(to_birth_persistence(d, InfinitePolicy::drop()).size() == 2);
  CHECK(to_birth_persistence(d, InfinitePolicy::clamp_to(3.0)).size() == 4);
}

TEST_CASE("diagram csv round trip with infinite deaths") {
  const fs::path path = temp_dir() / "roundtrip_h1.csv";
  PersistenceDiagram d;
  d.degree = 1;
  d.points = {{0.25, 1.0 / 3.0}, {0.1, kInfiniteDeath}};
  save_diagram_csv(d, path);

  const std::string text = read_text_file(path);
  CHECK(text.rfind("birth,death\n", 0) == 0);
  CHECK(text.find("inf") != std::string::npos);

  const PersistenceDiagram loaded = load_diagram_csv(path, 1);
  CHECK(loaded.degree == 1);
  CHECK(same_multiset(loaded, d));
}

TEST_CASE("empty diagram csv round trip") {
  const fs::path path = temp_dir() / "empty_h0.csv";
  PersistenceDiagram d;
  d.degree = 0;
  save_diagram_csv(d, path);
  const PersistenceDiagram loaded = load_diagram_csv(path, 0);
  CHECK(loaded.empty());
}

TEST_CASE("degree is carried by the filename suffix") {
  CHECK(degree_from_filename("clouds/3_h0.csv") == 0);
  CHECK(degree_from_filename("clouds/3_h1.csv") == 1);
  CHECK(degree_from_filename("something_h12.csv") == 12);
  CHECK(degree_from_filename("plain.csv") == -1);
}

TEST_CASE("same_multiset ignores order and respects multiplicity") {
  PersistenceDiagram a, b;
  a.points = {{0.0, 1.0}, {0.0, 1.0}, {0.5, 2.0}};
  b.points = {{0.5, 2.0}, {0.0, 1.0}, {0.0, 1.0}};
  CHECK(same_multiset(a, b));
  b.points.pop_back();
  CHECK(!same_multiset(a, b));
}

TEST_CASE("point helpers") {
  const DiagramPoint finite{0.5, 2.0};
  CHECK(!finite.has_infinite_death());
  CHECK(finite.persistence() == 1.5);
  const DiagramPoint essential{0.5, kInfiniteDeath};
  CHECK(essential.has_infinite_death());
}
