#ifndef NNC_GENERATORS_HPP
#define NNC_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nnc/core.hpp"

namespace nnc {

// Layered hard instance in R^3 for incremental condensation: a base fan of
// eleven classes around the origin, doubling rings climbing the z axis, a
// long run of repetitive rings, and far anchor clusters that pin the class
// centroids. Scale parameter t controls both the ring resolution (xi = 2^-t)
// and the number of layers.
struct AdversarialParams {
  int t = 4;              // supported range [4, 12]
  double far_scale = 0;   // 0 picks 100 * (max backbone z + 1)
  int far_mass_factor = 2;  // far ring size = factor * class size + 1
};

struct AdversarialManifest {
  int t = 0;
  double xi = 0;
  double far_scale = 0;
  double counterweight_z = 0;
  std::size_t counterweight_count = 0;
  std::size_t n = 0;
  // (arrangement name, point count) in emission order: "B", "M1".., "R4".., "F".
  std::vector<std::pair<std::string, std::size_t>> arrangements;
};

// Deterministic (no RNG). Throws invalid_input_error for t outside [4, 12].
TrainingSet gen_adversarial(const AdversarialParams& params,
                            AdversarialManifest* manifest = nullptr);

void write_manifest(const AdversarialManifest& m, const std::string& path);

// n uniform points in [0,1]^d labeled by their nearest site (ties to the
// lowest site index); sites are uniform too and take classes round-robin.
// Draws come from mt19937_64 with explicit 53-bit mappings, so output is
// byte-identical across platforms. When a draw leaves a class empty or
// produces coincident enemies the generator retries with seed+1; used_seed
// reports the seed that produced the returned set.
struct VoronoiParams {
  std::size_t n = 1000;
  std::size_t d = 2;
  std::size_t classes = 2;
  std::size_t sites = 5;
  std::uint64_t seed = 1;
};

TrainingSet gen_voronoi(const VoronoiParams& params,
                        std::uint64_t* used_seed = nullptr);

}  // namespace nnc

#endif  // NNC_GENERATORS_HPP
