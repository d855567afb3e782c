#include "star/hex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <tuple>

namespace star {
namespace {

constexpr std::array<AxialCoord, 6> kDirections = {{
    {+1, 0}, {+1, -1}, {0, -1}, {-1, 0}, {-1, +1}, {0, +1},
}};

struct Cube {
  double x, y, z;
};

HexCoord cube_round(const Cube& c) {
  double rx = std::round(c.x);
  double ry = std::round(c.y);
  double rz = std::round(c.z);
  const double dx = std::abs(rx - c.x);
  const double dy = std::abs(ry - c.y);
  const double dz = std::abs(rz - c.z);
  if (dx > dy && dx > dz) {
    rx = -ry - rz;
  } else if (dy > dz) {
    ry = -rx - rz;
  } else {
    rz = -rx - ry;
  }
  return axial_to_offset({static_cast<int>(rx), static_cast<int>(rz)});
}

// Frontier entries order by (cost, col, row); std::greater turns the
// priority_queue into a min-heap over that tuple.
using Frontier = std::tuple<int, int, int>;

template <class Visit>
void dijkstra(HexCoord start, int width, int height, const EntryCost& entry_cost, int budget,
              Visit&& on_settle) {
  std::priority_queue<Frontier, std::vector<Frontier>, std::greater<>> open;
  std::map<HexCoord, int> best;
  best[start] = 0;
  open.emplace(0, start.col, start.row);
  while (!open.empty()) {
    const auto [cost, col, row] = open.top();
    open.pop();
    const HexCoord here{col, row};
    if (best.at(here) < cost) continue;
    if (!on_settle(here, cost)) return;
    for (const HexCoord next : neighbors(here, width, height)) {
      const auto step = entry_cost(next);
      if (!step) continue;
      const int total = cost + *step;
      if (total > budget) continue;
      auto it = best.find(next);
      if (it != best.end() && it->second <= total) continue;
      best[next] = total;
      open.emplace(total, next.col, next.row);
    }
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& out, HexCoord c) {
  return out << "(" << c.col << "," << c.row << ")";
}

AxialCoord offset_to_axial(HexCoord c) {
  return {c.col, c.row - (c.col + (c.col & 1)) / 2};
}

HexCoord axial_to_offset(AxialCoord a) {
  return {a.q, a.r + (a.q + (a.q & 1)) / 2};
}

int hex_distance(HexCoord a, HexCoord b) {
  const AxialCoord x = offset_to_axial(a);
  const AxialCoord y = offset_to_axial(b);
  const int dq = x.q - y.q;
  const int dr = x.r - y.r;
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

std::vector<HexCoord> neighbors(HexCoord c, int width, int height) {
  std::vector<HexCoord> out;
  out.reserve(6);
  const AxialCoord a = offset_to_axial(c);
  for (const AxialCoord d : kDirections) {
    const HexCoord n = axial_to_offset({a.q + d.q, a.r + d.r});
    if (in_bounds(n, width, height)) out.push_back(n);
  }
  return out;
}

std::vector<HexCoord> hex_line(HexCoord a, HexCoord b) {
  // Always walk from the lexicographically smaller endpoint so that rounding
  // ties resolve identically in both directions.
  const bool swapped = b < a;
  if (swapped) std::swap(a, b);

  const int n = hex_distance(a, b);
  std::vector<HexCoord> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  const AxialCoord pa = offset_to_axial(a);
  const AxialCoord pb = offset_to_axial(b);
  // Nudge toward lower cube-x; the offsets sum to zero to stay on the plane.
  const Cube ca{pa.q - 2e-6, -pa.q - pa.r + 1e-6, pa.r + 1e-6};
  const Cube cb{pb.q - 2e-6, -pb.q - pb.r + 1e-6, pb.r + 1e-6};
  for (int i = 0; i <= n; ++i) {
    const double t = n == 0 ? 0.0 : static_cast<double>(i) / n;
    out.push_back(cube_round({ca.x + (cb.x - ca.x) * t, ca.y + (cb.y - ca.y) * t,
                              ca.z + (cb.z - ca.z) * t}));
  }
  if (swapped) std::reverse(out.begin(), out.end());
  return out;
}

bool line_of_sight(HexCoord a, HexCoord b, const CellPredicate& blocks) {
  const auto line = hex_line(a, b);
  for (std::size_t i = 1; i + 1 < line.size(); ++i) {
    if (blocks(line[i])) return false;
  }
  return true;
}

std::optional<Path> find_path(HexCoord start, HexCoord goal, int width, int height,
                              const EntryCost& entry_cost, int budget) {
  if (budget < 0 || start == goal) return std::nullopt;
  std::map<HexCoord, HexCoord> parent;
  std::map<HexCoord, int> settled;
  bool found = false;
  int goal_cost = 0;

  // Parents are recorded at settle time from the cheapest settled neighbour,
  // which keeps reconstruction independent of push order.
  dijkstra(start, width, height, entry_cost, budget, [&](HexCoord here, int cost) {
    if (settled.contains(here)) return true;
    settled[here] = cost;
    if (here != start) {
      const int step = *entry_cost(here);
      for (const HexCoord n : neighbors(here, width, height)) {
        auto it = settled.find(n);
        if (it != settled.end() && it->second + step == cost) {
          parent[here] = n;
          break;
        }
      }
    }
    if (here == goal) {
      found = true;
      goal_cost = cost;
      return false;
    }
    return true;
  });
  if (!found) return std::nullopt;

  Path path;
  path.total_cost = goal_cost;
  for (HexCoord at = goal; at != start; at = parent.at(at)) path.steps.push_back(at);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

std::vector<std::pair<HexCoord, int>> reachable_cells(HexCoord start, int width, int height,
                                                      const EntryCost& entry_cost, int budget) {
  std::map<HexCoord, int> seen;
  dijkstra(start, width, height, entry_cost, budget, [&](HexCoord here, int cost) {
    if (here != start) seen.try_emplace(here, cost);
    return true;
  });
  return {seen.begin(), seen.end()};
}

}  // namespace star
