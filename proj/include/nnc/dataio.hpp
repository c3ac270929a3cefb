#ifndef NNC_DATAIO_HPP
#define NNC_DATAIO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnc/core.hpp"

namespace nnc {

// Thrown on unreadable files or malformed content; messages carry
// "path:line:" where a line is known.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReadOptions {
  // Auto-detect by default: a first line whose non-label cells do not all
  // parse as numbers is treated as a header.
  std::optional<bool> has_header;
  // Column holding the class label; defaults to the last column.
  std::optional<std::size_t> label_column;
};

// CSV with one point per row, numeric feature cells and one label cell.
// Values parse locale-independently; class ids follow first appearance.
TrainingSet read_dataset(const std::string& path, const ReadOptions& opts = {});

// Writes features then label, shortest round-trip formatting, no header.
void write_dataset(const TrainingSet& ts, const std::string& path);

// One index per line, strictly increasing, all < n.
IndexSubset read_subset(const std::string& path, std::size_t n);
void write_subset(const IndexSubset& subset, const std::string& path);

struct ResultsRow {
  std::string dataset;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t c = 0;
  std::size_t kappa = 0;
  double gamma_norm = 0;
  std::size_t subset_size = 0;
  double size_over_kappa = 0;
  std::uint64_t runtime_ns_median = 0;
  double runtime_ns_per_point = 0;
  bool consistent = false;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* results_header =
    "dataset,algorithm,n,d,c,kappa,gamma_norm,subset_size,size_over_kappa,"
    "runtime_ns_median,runtime_ns_per_point,consistent,repeats,seed";

// Appends one row, writing the header first when the file is new or empty.
// size_over_kappa is fixed to six decimal places; other doubles round-trip.
void append_result(const ResultsRow& row, const std::string& path);

// Reads back a results file written by append_result (header required).
std::vector<ResultsRow> read_results(const std::string& path);

}  // namespace nnc

#endif  // NNC_DATAIO_HPP
