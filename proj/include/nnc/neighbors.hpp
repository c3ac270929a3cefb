#ifndef NNC_NEIGHBORS_HPP
#define NNC_NEIGHBORS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "nnc/core.hpp"

namespace nnc {

// Per-point nearest-enemy data over a full training set. All ties break to
// the lowest point index. nn_* fields (nearest neighbor over everything but
// the point itself, any label) are filled only when requested.
struct NeighborTable {
  std::vector<std::size_t> ne_index;
  std::vector<double> ne_dist;
  std::vector<std::size_t> nn_index;  // empty unless with_nn
  std::vector<double> nn_dist;        // empty unless with_nn
};

// Brute-force O(n^2 d) scan. Throws invalid_input_error when some point has
// no enemy (single-class input). Requires a validated set.
NeighborTable nearest_enemy_table(const TrainingSet& ts, bool with_nn = false);

// Nearest member of r to point q (q itself may be in r; distance 0 then).
// Ties break to the lowest index. Throws invalid_input_error on an empty or
// out-of-range subset.
std::pair<std::size_t, double> nearest_in_subset(const TrainingSet& ts,
                                                 std::size_t q,
                                                 const IndexSubset& r);

struct StatsSummary {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t c = 0;
  std::size_t kappa = 0;       // number of distinct nearest-enemy points
  double kappa_percent = 0;    // 100 * kappa / n
  double gamma_raw = 0;        // smallest nearest-enemy distance
  double diameter = 0;         // largest pairwise distance
  double gamma_norm = 0;       // gamma_raw / diameter
  double spread = 0;           // diameter / smallest nonzero pairwise distance
};

// Dataset-level geometry summary. Requires >= 2 classes and a validated set.
StatsSummary stats(const TrainingSet& ts);

}  // namespace nnc

#endif  // NNC_NEIGHBORS_HPP
