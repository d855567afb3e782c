#pragma once

#include <array>
#include <cstdint>

#include "star/scenario.hpp"
#include "star/terrain.hpp"

namespace star {

// Classic gradient noise over a seeded permutation table.
class PerlinNoise {
 public:
  explicit PerlinNoise(std::uint64_t seed);

  // Roughly in [-1, 1].
  double noise(double x, double y) const;
  // Sum of `octaves` layers, each at double frequency and half amplitude,
  // normalised back to roughly [-1, 1].
  double fractal(double x, double y, int octaves) const;

 private:
  std::array<int, 512> perm_{};
};

// Procedural terrain: noise elevation bands, cellular smoothing, city
// placement, and a connectivity repair that carves Plain bridges across Water.
// Throws StarError(DegenerateMap) if land cannot be made connected.
TerrainGrid generate_map(std::uint64_t seed, int width, int height, const MapParams& params);

// Makes the grid invariant under 180-degree rotation of the offset
// rectangle. The seed picks which half is kept. Land connectivity is restored
// afterwards with mirrored bridges.
TerrainGrid mirror_symmetrize(const TerrainGrid& grid, std::uint64_t seed);

bool is_rotation_invariant(const TerrainGrid& grid);

}  // namespace star
