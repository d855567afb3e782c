#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace star {

// Board position in flat-topped even-q offset form. Even columns are the
// shifted ones; row grows "upward" in the agents' frame but is just an index
// here.
struct HexCoord {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const HexCoord&, const HexCoord&) = default;
};

struct AxialCoord {
  int q = 0;
  int r = 0;

  friend constexpr auto operator<=>(const AxialCoord&, const AxialCoord&) = default;
};

std::ostream& operator<<(std::ostream& out, HexCoord c);

struct Path {
  // Start is excluded, goal is the last element.
  std::vector<HexCoord> steps;
  int total_cost = 0;
};

// Cost of entering a tile; nullopt means impassable.
using EntryCost = std::function<std::optional<int>(HexCoord)>;
using CellPredicate = std::function<bool(HexCoord)>;

AxialCoord offset_to_axial(HexCoord c);
HexCoord axial_to_offset(AxialCoord a);

int hex_distance(HexCoord a, HexCoord b);

constexpr bool in_bounds(HexCoord c, int width, int height) {
  return c.col >= 0 && c.row >= 0 && c.col < width && c.row < height;
}

// In-bounds neighbours in a fixed direction order.
std::vector<HexCoord> neighbors(HexCoord c, int width, int height);

// Cells on the hex line from a to b, both endpoints included. The result is
// independent of argument order up to reversal.
std::vector<HexCoord> hex_line(HexCoord a, HexCoord b);

bool line_of_sight(HexCoord a, HexCoord b, const CellPredicate& blocks);

// Minimum-cost path with total_cost <= budget, or nullopt. Ties between
// equal-cost frontiers break on (col, row) so results are reproducible.
std::optional<Path> find_path(HexCoord start, HexCoord goal, int width, int height,
                              const EntryCost& entry_cost, int budget);

// Every cell reachable from start within budget, paired with its cheapest cost.
// The start cell itself is not included.
std::vector<std::pair<HexCoord, int>> reachable_cells(HexCoord start, int width, int height,
                                                      const EntryCost& entry_cost, int budget);

}  // namespace star

template <>
struct std::hash<star::HexCoord> {
  std::size_t operator()(const star::HexCoord& c) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(c.col) << 32) ^ static_cast<unsigned>(c.row));
  }
};
