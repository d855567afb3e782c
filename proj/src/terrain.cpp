#include "star/terrain.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace star {
namespace {

constexpr std::array<TerrainInfo, kTerrainCount> kTable = {{
    {"plain", 'P', 1, 0.0, false},
    {"forest", 'F', 2, 0.2, true},
    {"hill", 'H', 2, 0.3, true},
    {"mountain", 'M', 3, 0.5, true},
    {"water", 'W', std::nullopt, 0.0, false},
    {"city", 'C', 1, 0.4, true},
}};

}  // namespace

const TerrainInfo& terrain_info(Terrain t) { return kTable.at(static_cast<std::size_t>(t)); }

std::optional<Terrain> terrain_from_glyph(char glyph) {
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (kTable[i].glyph == glyph) return static_cast<Terrain>(i);
  }
  return std::nullopt;
}

std::optional<Terrain> terrain_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (kTable[i].name == name) return static_cast<Terrain>(i);
  }
  return std::nullopt;
}

TerrainGrid::TerrainGrid(int width, int height, Terrain fill)
    : width_(width),
      height_(height),
      tiles_(static_cast<std::size_t>(width) * height, fill),
      owner_(tiles_.size(), static_cast<std::int8_t>(kNeutral)),
      fortification_(tiles_.size(), 0) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
}

std::string dump_map(const TerrainGrid& grid) {
  std::string out = std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n";
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) out += terrain_info(grid.at({col, row})).glyph;
    out += '\n';
  }
  return out;
}

TerrainGrid parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  int width = 0;
  int height = 0;
  if (!(in >> width >> height) || width <= 0 || height <= 0) {
    throw std::invalid_argument("map dump: bad header");
  }
  TerrainGrid grid(width, height);
  for (int row = 0; row < height; ++row) {
    std::string line;
    if (!(in >> line) || static_cast<int>(line.size()) != width) {
      throw std::invalid_argument("map dump: row " + std::to_string(row) + " has wrong width");
    }
    for (int col = 0; col < width; ++col) {
      const auto t = terrain_from_glyph(line[col]);
      if (!t) throw std::invalid_argument(std::string("map dump: unknown glyph ") + line[col]);
      grid.set({col, row}, *t);
    }
  }
  return grid;
}

int land_components(const TerrainGrid& grid) {
  std::vector<char> seen(grid.size(), 0);
  int components = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (seen[i] || grid.tiles()[i] == Terrain::Water) continue;
    ++components;
    std::vector<HexCoord> stack{grid.coord(i)};
    seen[i] = 1;
    while (!stack.empty()) {
      const HexCoord c = stack.back();
      stack.pop_back();
      for (const HexCoord n : grid.neighbors(c)) {
        const std::size_t j = grid.index(n);
        if (seen[j] || grid.tiles()[j] == Terrain::Water) continue;
        seen[j] = 1;
        stack.push_back(n);
      }
    }
  }
  return components;
}

}  // namespace star
