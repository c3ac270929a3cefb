#ifndef NNC_CORE_HPP
#define NNC_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnc {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Thrown when a caller violates a documented precondition (bad parameter,
// malformed subset, single-class input where enemies are required, ...).
class invalid_input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by require_valid() when a TrainingSet breaks a structural rule.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Euclidean distance between two points of equal dimension.
double distance(std::span<const double> a, std::span<const double> b);

// Squared Euclidean distance; comparisons on these agree with distance()
// ordering only in exact arithmetic, so public tie-sensitive code sticks to
// one of the two forms per decision and never mixes them.
double squared_distance(std::span<const double> a, std::span<const double> b);

// A labeled point set in R^d. Coordinates live row-major in one contiguous
// buffer. Labels are dense ids indexing class_names, assigned in order of
// first appearance by whoever builds the set.
class TrainingSet {
 public:
  TrainingSet(std::size_t dimension, std::vector<std::string> class_names);

  // Appends one point. Throws invalid_input_error on a dimension mismatch or
  // an out-of-range label.
  void add(std::span<const double> coords, std::uint32_t label);

  std::size_t size() const { return labels_.size(); }
  std::size_t dimension() const { return dim_; }
  std::size_t num_classes() const { return class_names_.size(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::uint32_t label(std::size_t i) const { return labels_[i]; }
  const std::string& class_name(std::uint32_t c) const { return class_names_.at(c); }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<double>& raw_coords() const { return coords_; }

  void reserve(std::size_t n);

 private:
  std::size_t dim_;
  std::vector<std::string> class_names_;
  std::vector<double> coords_;
  std::vector<std::uint32_t> labels_;
};

// A subset of point indices, kept strictly increasing.
struct IndexSubset {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  bool contains(std::size_t i) const;

  // Wraps an already strictly increasing index list; throws otherwise.
  static IndexSubset from_sorted(std::vector<std::size_t> indices);
  // Sorts an arbitrary selection order; throws on duplicates.
  static IndexSubset from_selection(std::vector<std::size_t> order);
};

struct Violation {
  std::string message;
  std::size_t index_a = npos;  // first offending point, when applicable
  std::size_t index_b = npos;  // second offending point, when applicable
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Structural checks: at least one point, every coordinate finite, every label
// in range, every declared class non-empty, and no two coincident points with
// different labels (those would make a consistent subset impossible).
ValidationReport validate(const TrainingSet& ts);

// Throws validation_error listing every violation; no-op on a valid set.
void require_valid(const TrainingSet& ts);

}  // namespace nnc

#endif  // NNC_CORE_HPP
