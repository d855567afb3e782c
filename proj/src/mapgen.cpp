#include "star/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "star/errors.hpp"
#include "star/rng.hpp"

namespace star {
namespace {

double fade(double t) { return t * t * t * (t * (t * 6 - 15) + 10); }
double lerp(double a, double b, double t) { return a + t * (b - a); }

double grad(int hash, double x, double y) {
  switch (hash & 7) {
    case 0: return x + y;
    case 1: return x - y;
    case 2: return -x + y;
    case 3: return -x - y;
    case 4: return x;
    case 5: return -x;
    case 6: return y;
    default: return -y;
  }
}

// Component id per tile (-1 for Water), plus component sizes.
struct Components {
  std::vector<int> label;
  std::vector<int> sizes;
};

Components label_land(const TerrainGrid& grid) {
  Components out;
  out.label.assign(grid.size(), -1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (out.label[i] != -1 || grid.tiles()[i] == Terrain::Water) continue;
    const int id = static_cast<int>(out.sizes.size());
    out.sizes.push_back(0);
    std::vector<std::size_t> stack{i};
    out.label[i] = id;
    while (!stack.empty()) {
      const std::size_t at = stack.back();
      stack.pop_back();
      ++out.sizes[id];
      for (const HexCoord n : grid.neighbors(grid.coord(at))) {
        const std::size_t j = grid.index(n);
        if (out.label[j] != -1 || grid.tiles()[j] == Terrain::Water) continue;
        out.label[j] = id;
        stack.push_back(j);
      }
    }
  }
  return out;
}

// Carves Plain bridges from every stray land component to the largest one
// until land is connected. With `mirrored`, every carved tile is also carved
// at its 180-degree image so symmetry survives.
void connect_land(TerrainGrid& grid, bool mirrored) {
  for (std::size_t guard = 0; guard <= grid.size(); ++guard) {
    const Components comps = label_land(grid);
    if (comps.sizes.size() <= 1) return;
    const int main = static_cast<int>(std::max_element(comps.sizes.begin(), comps.sizes.end()) -
                                      comps.sizes.begin());
    // Nearest (stray, main) tile pair over all strays; ties resolve by index.
    int best = -1;
    std::size_t from = 0;
    std::size_t to = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (comps.label[i] < 0 || comps.label[i] == main) continue;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        if (comps.label[j] != main) continue;
        const int d = hex_distance(grid.coord(i), grid.coord(j));
        if (best < 0 || d < best) {
          best = d;
          from = i;
          to = j;
        }
      }
    }
    // A straight hex line can clip off the jagged map edge, so bridge along
    // a shortest in-bounds path instead.
    const auto bridge = find_path(grid.coord(from), grid.coord(to), grid.width(), grid.height(),
                                  [](HexCoord) -> std::optional<int> { return 1; }, best);
    for (const HexCoord c : bridge->steps) {
      if (grid.at(c) == Terrain::Water) grid.set(c, Terrain::Plain);
      if (mirrored) {
        const HexCoord m = rotate_180(c, grid.width(), grid.height());
        if (grid.at(m) == Terrain::Water) grid.set(m, Terrain::Plain);
      }
    }
  }
  throw StarError(ErrorCode::DegenerateMap, "land connectivity repair did not converge");
}

Terrain majority(const TerrainGrid& grid, HexCoord c) {
  std::array<int, kTerrainCount> counts{};
  for (const HexCoord n : grid.neighbors(c)) ++counts[static_cast<std::size_t>(grid.at(n))];
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] >= 4) return static_cast<Terrain>(t);
  }
  return grid.at(c);
}

void place_cities(TerrainGrid& grid, int cities, Rng& rng) {
  struct Candidate {
    int degree;
    std::uint64_t tiebreak;
    HexCoord at;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const HexCoord c = grid.coord(i);
    const Terrain t = grid.at(c);
    if (t == Terrain::Water || t == Terrain::Mountain) continue;
    int degree = 0;
    for (const HexCoord n : grid.neighbors(c)) degree += grid.at(n) != Terrain::Water;
    candidates.push_back({degree, rng.next_u64(), c});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.tiebreak < b.tiebreak;
  });
  std::vector<HexCoord> placed;
  for (const auto& cand : candidates) {
    if (static_cast<int>(placed.size()) >= cities) break;
    const bool crowded = std::any_of(placed.begin(), placed.end(), [&](HexCoord p) {
      return hex_distance(p, cand.at) < 3;
    });
    if (crowded) continue;
    grid.set(cand.at, Terrain::City);
    placed.push_back(cand.at);
  }
}

}  // namespace

PerlinNoise::PerlinNoise(std::uint64_t seed) {
  std::array<int, 256> p{};
  std::iota(p.begin(), p.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<int>(p));
  for (std::size_t i = 0; i < 512; ++i) perm_[i] = p[i & 255];
}

double PerlinNoise::noise(double x, double y) const {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int xi = static_cast<int>(fx) & 255;
  const int yi = static_cast<int>(fy) & 255;
  x -= fx;
  y -= fy;
  const double u = fade(x);
  const double v = fade(y);
  const int aa = perm_[perm_[xi] + yi];
  const int ab = perm_[perm_[xi] + yi + 1];
  const int ba = perm_[perm_[xi + 1] + yi];
  const int bb = perm_[perm_[xi + 1] + yi + 1];
  return lerp(lerp(grad(aa, x, y), grad(ba, x - 1, y), u),
              lerp(grad(ab, x, y - 1), grad(bb, x - 1, y - 1), u), v);
}

double PerlinNoise::fractal(double x, double y, int octaves) const {
  double sum = 0.0;
  double amplitude = 1.0;
  double norm = 0.0;
  for (int o = 0; o < octaves; ++o) {
    sum += amplitude * noise(x, y);
    norm += amplitude;
    amplitude *= 0.5;
    x *= 2.0;
    y *= 2.0;
  }
  return norm > 0 ? sum / norm : 0.0;
}

TerrainGrid generate_map(std::uint64_t seed, int width, int height, const MapParams& params) {
  if (width < 5 || height < 5) throw std::invalid_argument("map must be at least 5x5");
  const double banded = params.water_fraction + params.mountain_fraction + params.hill_fraction +
                        params.forest_fraction;
  if (params.water_fraction < 0 || params.water_fraction >= 1.0 || banded > 1.0 + 1e-9) {
    throw StarError(ErrorCode::DegenerateMap, "terrain fractions leave no room for land");
  }

  const Rng root = Rng(seed).split("mapgen");
  for (int attempt = 0; attempt <= params.max_retries; ++attempt) {
    Rng rng = root.split("attempt-" + std::to_string(attempt));
    const PerlinNoise perlin(rng.next_u64());
    // Offsets keep samples off the integer lattice where gradient noise is 0.
    const double ox = rng.uniform01() * 64.0 + 0.37;
    const double oy = rng.uniform01() * 64.0 + 0.61;

    TerrainGrid grid(width, height);
    const std::size_t n = grid.size();
    std::vector<double> elevation(n);
    for (std::size_t i = 0; i < n; ++i) {
      const HexCoord c = grid.coord(i);
      const double x = 1.5 * c.col;
      const double y = std::sqrt(3.0) * (c.row + 0.5 * ((c.col & 1) == 0));
      elevation[i] = perlin.fractal(ox + x * params.frequency, oy + y * params.frequency,
                                    std::max(1, params.octaves));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return elevation[a] < elevation[b]; });

    const auto count = [n](double f) { return static_cast<std::size_t>(std::llround(f * n)); };
    const std::size_t water = count(params.water_fraction);
    const std::size_t mountain = count(params.mountain_fraction);
    const std::size_t hill = count(params.hill_fraction);
    const std::size_t forest = count(params.forest_fraction);
    for (std::size_t rank = 0; rank < n; ++rank) {
      Terrain t = Terrain::Plain;
      const std::size_t from_top = n - 1 - rank;
      if (rank < water) {
        t = Terrain::Water;
      } else if (from_top < mountain) {
        t = Terrain::Mountain;
      } else if (from_top < mountain + hill) {
        t = Terrain::Hill;
      } else if (from_top < mountain + hill + forest) {
        t = Terrain::Forest;
      }
      grid.set(grid.coord(order[rank]), t);
    }

    for (int pass = 0; pass < params.smoothing_passes; ++pass) {
      TerrainGrid next = grid;
      for (std::size_t i = 0; i < n; ++i) next.set(grid.coord(i), majority(grid, grid.coord(i)));
      grid = std::move(next);
    }

    place_cities(grid, params.cities, rng);

    if (land_components(grid) == 0) continue;
    connect_land(grid, false);
    if (land_components(grid) == 1) return grid;
  }
  throw StarError(ErrorCode::DegenerateMap, "no connected map after retries");
}

TerrainGrid mirror_symmetrize(const TerrainGrid& grid, std::uint64_t seed) {
  TerrainGrid out = grid;
  const bool keep_first = (splitmix64(seed ^ 0x6D6972726F72ULL) & 1) == 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const HexCoord c = grid.coord(i);
    const HexCoord m = rotate_180(c, grid.width(), grid.height());
    const std::size_t j = grid.index(m);
    if (j <= i) continue;
    const HexCoord src = keep_first ? c : m;
    const HexCoord dst = keep_first ? m : c;
    out.set(dst, grid.at(src));
    out.set_owner(dst, grid.owner(src) == kNeutral ? kNeutral : 1 - grid.owner(src));
    out.set_fortification(dst, grid.fortification(src));
  }
  if (land_components(out) > 1) connect_land(out, true);
  return out;
}

bool is_rotation_invariant(const TerrainGrid& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const HexCoord c = grid.coord(i);
    if (grid.at(c) != grid.at(rotate_180(c, grid.width(), grid.height()))) return false;
  }
  return true;
}

}  // namespace star
