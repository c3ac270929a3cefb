#ifndef NNC_BENCH_HPP
#define NNC_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nnc/condense.hpp"
#include "nnc/dataio.hpp"

namespace nnc {

struct BenchPlan {
  std::vector<std::string> datasets;     // CSV paths
  std::vector<Algorithm> algorithms;     // empty means all seven
  std::size_t repeats = 5;
  std::size_t warmup = 1;
  std::uint64_t seed = 0;                // recorded in rows, not consumed
  std::string results_path;              // empty means no file output
  ReadOptions read_options;
  // Runs whole datasets concurrently; timed regions themselves never span
  // threads, and rows still come out dataset-major through one writer.
  bool parallel_datasets = false;
};

// Loads each dataset once, validates it, computes its stats, then times each
// algorithm: `warmup` untimed runs followed by `repeats` timed runs of a
// single condense() call (steady_clock, median of repeats). Dataset loading,
// validation, stats and the consistency check stay outside the timed region;
// algorithms that consume a nearest-enemy table build it inside their own
// call, so that cost is charged to them. Rows are appended to results_path
// when set, and returned in dataset-major, algorithm-minor order either way.
std::vector<ResultsRow> run_bench(const BenchPlan& plan);

struct SweepRow {
  int t = 0;
  std::size_t n = 0;
  std::size_t kappa = 0;
  std::size_t fcnn_size = 0;
  std::size_t sfcnn_size = 0;
  std::size_t rss_size = 0;
  double fcnn_ratio = 0;   // fcnn_size / kappa
  double sfcnn_ratio = 0;  // sfcnn_size / kappa
  double rss_ratio = 0;    // rss_size / kappa
};

// Runs fcnn, sfcnn and rss on the adversarial instance for each t and reports
// subset-size-to-kappa ratios. Deterministic.
std::vector<SweepRow> ratio_sweep(const std::vector<int>& t_values);

std::string sweep_table(const std::vector<SweepRow>& rows);  // aligned text

}  // namespace nnc

#endif  // NNC_BENCH_HPP
