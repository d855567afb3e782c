#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "star/hex.hpp"

namespace star {

enum class Terrain : std::uint8_t { Plain, Forest, Hill, Mountain, Water, City };

inline constexpr int kTerrainCount = 6;

struct TerrainInfo {
  std::string_view name;
  char glyph;
  std::optional<int> move_cost;  // nullopt: impassable
  double defense_bonus;          // fraction added to the defender's defense
  bool blocks_vision;
};

const TerrainInfo& terrain_info(Terrain t);
std::optional<Terrain> terrain_from_glyph(char glyph);
std::optional<Terrain> terrain_from_name(std::string_view name);

inline constexpr int kNeutral = -1;

// Dense row-major tile storage plus the per-tile state factions can change.
class TerrainGrid {
 public:
  TerrainGrid() = default;
  TerrainGrid(int width, int height, Terrain fill = Terrain::Plain);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(HexCoord c) const { return in_bounds(c, width_, height_); }
  std::size_t index(HexCoord c) const {
    return static_cast<std::size_t>(c.row) * width_ + c.col;
  }
  HexCoord coord(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }
  std::size_t size() const { return tiles_.size(); }

  Terrain at(HexCoord c) const { return tiles_.at(index(c)); }
  void set(HexCoord c, Terrain t) { tiles_.at(index(c)) = t; }

  int owner(HexCoord c) const { return owner_.at(index(c)); }
  void set_owner(HexCoord c, int side) { owner_.at(index(c)) = static_cast<std::int8_t>(side); }

  int fortification(HexCoord c) const { return fortification_.at(index(c)); }
  void set_fortification(HexCoord c, int level) {
    fortification_.at(index(c)) = static_cast<std::uint8_t>(level);
  }

  const std::vector<Terrain>& tiles() const { return tiles_; }
  const std::vector<std::int8_t>& owners() const { return owner_; }
  const std::vector<std::uint8_t>& fortifications() const { return fortification_; }

  std::vector<HexCoord> neighbors(HexCoord c) const { return star::neighbors(c, width_, height_); }

  friend bool operator==(const TerrainGrid&, const TerrainGrid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Terrain> tiles_;
  std::vector<std::int8_t> owner_;
  std::vector<std::uint8_t> fortification_;
};

// Map dump: "<width> <height>" on the first line, then one line per row of
// terrain glyphs (P F H M W C), row 0 first.
std::string dump_map(const TerrainGrid& grid);
TerrainGrid parse_map(std::string_view text);

// Number of connected non-Water regions under hex adjacency.
int land_components(const TerrainGrid& grid);

}  // namespace star
