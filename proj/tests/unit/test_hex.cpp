#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "star/hex.hpp"
#include "star/rng.hpp"
#include "star/terrain.hpp"

using namespace star;
using star::testing::fixture_path;
using star::testing::read_fixture;
using star::testing::read_text;

namespace {

constexpr int kSide = 15;

std::vector<HexCoord> all_cells(int w = kSide, int h = kSide) {
  std::vector<HexCoord> out;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out.push_back({c, r});
  return out;
}

// Distance matrix from the independent BFS oracle, indexed row * 15 + col.
std::vector<int> bfs_matrix() {
  std::istringstream in(read_text(fixture_path("hex_bfs_15x15.txt")));
  std::string line;
  std::vector<int> values;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int v;
    while (row >> v) values.push_back(v);
  }
  return values;
}

TerrainGrid fixture_grid(const nlohmann::json& rows) {
  std::string dump = std::to_string(rows[0].get<std::string>().size()) + " " + std::to_string(rows.size()) + "\n";
  for (const auto& r : rows) dump += r.get<std::string>() + "\n";
  return parse_map(dump);
}

EntryCost terrain_cost(const TerrainGrid& g) {
  return [&g](HexCoord c) -> std::optional<int> {
    if (!g.contains(c)) return std::nullopt;
    return terrain_info(g.at(c)).move_cost;
  };
}

}  // namespace

TEST_CASE("offset and axial forms round-trip") {
  CHECK(offset_to_axial({0, 0}) == AxialCoord{0, 0});
  for (const HexCoord c : all_cells()) {
    CHECK(axial_to_offset(offset_to_axial(c)) == c);
  }
  // Axial neighbours of every cell sit at axial distance 1.
  for (const HexCoord c : all_cells()) {
    const AxialCoord a = offset_to_axial(c);
    for (const HexCoord n : neighbors(c, kSide, kSide)) {
      const AxialCoord b = offset_to_axial(n);
      const int dq = a.q - b.q, dr = a.r - b.r;
      CHECK((std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2 == 1);
    }
  }
}

TEST_CASE("neighbours match the oracle table") {
  const auto table = read_fixture("hex_neighbours_15x15.json");
  REQUIRE(table.size() == kSide * kSide);
  for (const HexCoord c : all_cells()) {
    std::set<std::pair<int, int>> expected, got;
    for (const auto& n : table.at(std::to_string(c.col) + "," + std::to_string(c.row))) {
      expected.insert({n[0].get<int>(), n[1].get<int>()});
    }
    for (const HexCoord n : neighbors(c, kSide, kSide)) got.insert({n.col, n.row});
    CHECK(got == expected);
  }
  CHECK(neighbors({7, 7}, kSide, kSide).size() == 6);
  CHECK(neighbors({0, 0}, kSide, kSide).size() == 3);
}

TEST_CASE("neighbour relation is symmetric") {
  for (const HexCoord a : all_cells()) {
    for (const HexCoord b : neighbors(a, kSide, kSide)) {
      const auto back = neighbors(b, kSide, kSide);
      CHECK(std::find(back.begin(), back.end(), a) != back.end());
      CHECK(hex_distance(a, b) == 1);
    }
  }
}

TEST_CASE("hex_distance equals BFS steps for every pair") {
  const auto matrix = bfs_matrix();
  REQUIRE(matrix.size() == 225u * 225u);
  const auto cells = all_cells();
  int mismatches = 0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j)
      mismatches += hex_distance(cells[i], cells[j]) != matrix[i * cells.size() + j];
  CHECK(mismatches == 0);
  CHECK(hex_distance({0, 0}, {14, 14}) == matrix[224]);
}

TEST_CASE("hex_distance is a metric") {
  Rng rng(11);
  for (int i = 0; i < 10'000; ++i) {
    const HexCoord a{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
    const HexCoord b{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
    const HexCoord c{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
    CHECK(hex_distance(a, c) <= hex_distance(a, b) + hex_distance(b, c));
    CHECK(hex_distance(a, b) == hex_distance(b, a));
    CHECK((hex_distance(a, b) == 0) == (a == b));
  }
}

TEST_CASE("hex_line is contiguous and reversible") {
  const auto cells = all_cells(9, 9);
  for (const HexCoord a : cells) {
    for (const HexCoord b : cells) {
      const auto line = hex_line(a, b);
      REQUIRE(line.size() == static_cast<std::size_t>(hex_distance(a, b) + 1));
      CHECK(line.front() == a);
      CHECK(line.back() == b);
      for (std::size_t i = 1; i < line.size(); ++i) CHECK(hex_distance(line[i - 1], line[i]) == 1);
      auto back = hex_line(b, a);
      std::reverse(back.begin(), back.end());
      CHECK(back == line);
    }
  }
}

TEST_CASE("line_of_sight ignores endpoints and is symmetric") {
  const auto all = [](HexCoord) { return true; };
  CHECK(line_of_sight({3, 3}, {3, 3}, all));
  CHECK(line_of_sight({3, 3}, {4, 3}, all));
  CHECK(line_of_sight({3, 3}, {3, 4}, all));

  // A single mountain between two cells in the same column.
  const HexCoord mountain{4, 5};
  const auto ridge = [&](HexCoord c) { return c == mountain; };
  CHECK_FALSE(line_of_sight({4, 4}, {4, 6}, ridge));
  CHECK(line_of_sight({4, 4}, {4, 6}, [](HexCoord) { return false; }));

  Rng rng(5);
  for (int i = 0; i < 2'000; ++i) {
    std::set<HexCoord> blockers;
    for (int k = 0; k < 10; ++k) blockers.insert({rng.uniform_int(0, 9), rng.uniform_int(0, 9)});
    const auto blocks = [&](HexCoord c) { return blockers.contains(c); };
    const HexCoord a{rng.uniform_int(0, 9), rng.uniform_int(0, 9)};
    const HexCoord b{rng.uniform_int(0, 9), rng.uniform_int(0, 9)};
    CHECK(line_of_sight(a, b, blocks) == line_of_sight(b, a, blocks));
  }
}

TEST_CASE("find_path single steps follow terrain entry cost") {
  TerrainGrid g(5, 5);
  g.set({1, 0}, Terrain::Forest);
  const auto cost = terrain_cost(g);
  const auto plain = find_path({0, 0}, {0, 1}, 5, 5, cost, 1);
  REQUIRE(plain);
  CHECK(plain->steps.size() == 1);
  CHECK(plain->total_cost == 1);
  CHECK_FALSE(find_path({0, 0}, {1, 0}, 5, 5, cost, 1));
  CHECK(find_path({0, 0}, {1, 0}, 5, 5, cost, 2)->total_cost == 2);
  CHECK_FALSE(find_path({2, 2}, {2, 2}, 5, 5, cost, 10));
}

TEST_CASE("find_path agrees with the Dijkstra oracle") {
  const auto fx = read_fixture("paths.json");
  const TerrainGrid g = fixture_grid(fx["map"]);
  const auto cost = terrain_cost(g);
  int checked = 0;
  for (const auto& c : fx["cases"]) {
    const HexCoord start{c["start"][0].get<int>(), c["start"][1].get<int>()};
    const HexCoord goal{c["goal"][0].get<int>(), c["goal"][1].get<int>()};
    const auto p = find_path(start, goal, g.width(), g.height(), cost, 1'000);
    CAPTURE(start);
    CAPTURE(goal);
    if (c["cost"].is_null()) {
      CHECK_FALSE(p);
      continue;
    }
    REQUIRE(p);
    const int expected = c["cost"].get<int>();
    CHECK(p->total_cost == expected);
    int sum = 0;
    HexCoord at = start;
    for (const HexCoord s : p->steps) {
      CHECK(hex_distance(at, s) == 1);
      CHECK(g.at(s) != Terrain::Water);
      sum += *cost(s);
      at = s;
    }
    CHECK(at == goal);
    CHECK(sum == p->total_cost);
    // One point short of the optimum must fail.
    CHECK_FALSE(find_path(start, goal, g.width(), g.height(), cost, expected - 1));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("reachable_cells matches individual path searches") {
  const auto fx = read_fixture("paths.json");
  const TerrainGrid g = fixture_grid(fx["map"]);
  const auto cost = terrain_cost(g);
  for (const int budget : {0, 1, 3, 5}) {
    const auto reach = reachable_cells({2, 2}, g.width(), g.height(), cost, budget);
    std::map<HexCoord, int> got(reach.begin(), reach.end());
    for (int r = 0; r < g.height(); ++r)
      for (int c = 0; c < g.width(); ++c) {
        const HexCoord goal{c, r};
        if (goal == HexCoord{2, 2}) continue;
        const auto p = find_path({2, 2}, goal, g.width(), g.height(), cost, budget);
        CHECK(got.contains(goal) == p.has_value());
        if (p) CHECK(got[goal] == p->total_cost);
      }
  }
}

TEST_CASE("find_path ties resolve identically on repeat") {
  TerrainGrid g(9, 9);
  const auto cost = terrain_cost(g);
  const auto a = find_path({0, 0}, {8, 8}, 9, 9, cost, 100);
  const auto b = find_path({0, 0}, {8, 8}, 9, 9, cost, 100);
  REQUIRE(a);
  CHECK(a->steps == b->steps);
}
