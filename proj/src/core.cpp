#include "nnc/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nnc {

double distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return acc;
}

TrainingSet::TrainingSet(std::size_t dimension, std::vector<std::string> class_names)
    : dim_(dimension), class_names_(std::move(class_names)) {
  if (dim_ == 0) throw invalid_input_error("TrainingSet: dimension must be positive");
  if (class_names_.empty())
    throw invalid_input_error("TrainingSet: need at least one class name");
}

void TrainingSet::add(std::span<const double> coords, std::uint32_t label) {
  if (coords.size() != dim_) {
    std::ostringstream msg;
    msg << "TrainingSet::add: point has " << coords.size()
        << " coordinates, set has dimension " << dim_;
    throw invalid_input_error(msg.str());
  }
  if (label >= class_names_.size()) {
    std::ostringstream msg;
    msg << "TrainingSet::add: label " << label << " out of range (classes: "
        << class_names_.size() << ")";
    throw invalid_input_error(msg.str());
  }
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  labels_.push_back(label);
}

void TrainingSet::reserve(std::size_t n) {
  coords_.reserve(n * dim_);
  labels_.reserve(n);
}

bool IndexSubset::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

IndexSubset IndexSubset::from_sorted(std::vector<std::size_t> indices) {
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k - 1] >= indices[k])
      throw invalid_input_error("IndexSubset: indices must be strictly increasing");
  }
  return IndexSubset{std::move(indices)};
}

IndexSubset IndexSubset::from_selection(std::vector<std::size_t> order) {
  std::sort(order.begin(), order.end());
  return from_sorted(std::move(order));
}

namespace {

// -0.0 and 0.0 compare equal but differ bitwise; normalize before sorting so
// coincidence detection keys on numeric equality.
double canonical(double v) { return v == 0.0 ? 0.0 : v; }

bool coords_equal(std::span<const double> a, std::span<const double> b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (canonical(a[k]) != canonical(b[k])) return false;
  return true;
}

bool coords_less(const TrainingSet& ts, std::size_t i, std::size_t j) {
  auto a = ts.point(i);
  auto b = ts.point(j);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double x = canonical(a[k]);
    double y = canonical(b[k]);
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace

ValidationReport validate(const TrainingSet& ts) {
  ValidationReport report;
  const std::size_t n = ts.size();
  if (n == 0) {
    report.violations.push_back({"training set is empty", npos, npos});
    return report;
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto p = ts.point(i);
    for (double v : p) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "point " << i << " has a non-finite coordinate";
        report.violations.push_back({msg.str(), i, npos});
        break;
      }
    }
  }

  const bool all_finite = report.violations.empty();

  std::vector<std::size_t> class_count(ts.num_classes(), 0);
  for (std::size_t i = 0; i < n; ++i) ++class_count[ts.label(i)];
  for (std::uint32_t c = 0; c < ts.num_classes(); ++c) {
    if (class_count[c] == 0) {
      std::ostringstream msg;
      msg << "class \"" << ts.class_name(c) << "\" (id " << c << ") has no points";
      report.violations.push_back({msg.str(), npos, npos});
    }
  }

  // Sort indices by coordinates; coincident points form runs, so a mixed-label
  // run is a pair of enemies at distance zero. NaNs have no coordinate order,
  // so skip the scan when any were reported above.
  if (!all_finite) return report;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (coords_less(ts, i, j)) return true;
    if (coords_less(ts, j, i)) return false;
    return i < j;
  });
  std::size_t run_begin = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    bool run_ends = (k == n) || !coords_equal(ts.point(order[run_begin]), ts.point(order[k]));
    if (!run_ends) continue;
    for (std::size_t a = run_begin; a + 1 < k; ++a) {
      bool reported = false;
      for (std::size_t b = a + 1; b < k; ++b) {
        if (ts.label(order[a]) != ts.label(order[b])) {
          std::size_t i = std::min(order[a], order[b]);
          std::size_t j = std::max(order[a], order[b]);
          std::ostringstream msg;
          msg << "points " << i << " and " << j
              << " are coincident but labeled differently";
          report.violations.push_back({msg.str(), i, j});
          reported = true;
          break;
        }
      }
      if (reported) break;  // one pair per run keeps reports readable
    }
    run_begin = k;
  }
  return report;
}

void require_valid(const TrainingSet& ts) {
  ValidationReport report = validate(ts);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid training set (" << report.violations.size() << " violation";
  if (report.violations.size() > 1) msg << "s";
  msg << "):";
  for (const auto& v : report.violations) msg << "\n  " << v.message;
  throw validation_error(msg.str());
}

}  // namespace nnc
