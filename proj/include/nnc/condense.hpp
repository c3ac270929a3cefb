#ifndef NNC_CONDENSE_HPP
#define NNC_CONDENSE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nnc/core.hpp"
#include "nnc/neighbors.hpp"

namespace nnc {

enum class Algorithm { cnn, fcnn, sfcnn, mss, rss, vss, net };

inline constexpr std::array<Algorithm, 7> all_algorithms = {
    Algorithm::cnn, Algorithm::fcnn, Algorithm::sfcnn, Algorithm::mss,
    Algorithm::rss, Algorithm::vss,  Algorithm::net};

const char* to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

struct CondenseResult {
  Algorithm algorithm;
  IndexSubset subset;
  std::size_t iterations = 0;  // outer passes; single-scan algorithms report 1
  std::vector<std::size_t> selection_order;
};

// Index of the class member closest to the class mean, one entry per class id
// (ties to the lowest index). Requires a validated set.
std::vector<std::size_t> class_centroids(const TrainingSet& ts);

// Points outside r whose nearest member of r is p and whose label differs
// from p's. p must belong to r.
std::vector<std::size_t> voren(const TrainingSet& ts, const IndexSubset& r,
                               std::size_t p);

// All seven selectors require a validated set with at least two classes
// (except where a single class trivially condenses to its centroid: cnn,
// fcnn, sfcnn). Outputs are deterministic; every tie breaks to the lowest
// point index.
CondenseResult cnn(const TrainingSet& ts);
CondenseResult fcnn(const TrainingSet& ts);
CondenseResult sfcnn(const TrainingSet& ts);
CondenseResult mss(const TrainingSet& ts);
CondenseResult rss(const TrainingSet& ts);
CondenseResult vss(const TrainingSet& ts);
CondenseResult net(const TrainingSet& ts);

CondenseResult condense(Algorithm a, const TrainingSet& ts);

struct ConsistencyResult {
  bool consistent = false;
  std::size_t counterexample = npos;  // lowest failing point when inconsistent
};

// Weak consistency: every point has at least one nearest neighbor in r (ties
// included) sharing its label. Brute force over the subset.
ConsistencyResult verify_consistent(const TrainingSet& ts, const IndexSubset& r);

struct BoundCheckReport {
  std::size_t subset_size = 0;
  std::size_t kappa = 0;
  double gamma_norm = 0;
  std::size_t log_factor = 0;  // max(1, ceil(log2(1/gamma_norm)))
  double bound = 0;            // kappa * log_factor * 4^(ddim+1), saturating
  bool holds = false;
};

// Checks |subset| <= kappa * max(1, ceil(log2(1/gamma_norm))) * 4^(ddim+1)
// for a result produced by sfcnn on ts. Overflowing bounds saturate to
// +infinity and report holds = true. assumed_ddim must be >= 1.
BoundCheckReport sfcnn_bound_check(const TrainingSet& ts,
                                   const CondenseResult& result,
                                   unsigned assumed_ddim);

}  // namespace nnc

#endif  // NNC_CONDENSE_HPP
