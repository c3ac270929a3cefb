#ifndef NNC_TESTS_SUPPORT_HPP
#define NNC_TESTS_SUPPORT_HPP

// Shared fixtures and brute-force reference implementations for the test
// binaries. The oracles here are written independently of the library code
// (different loop shapes, no shared helpers) so that agreement between the
// two is meaningful.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nnc/core.hpp"

namespace testutil {

// ---------------------------------------------------------------------------
// Fixed instances

// 1-D four-point line: class A at {0, 1}, class B at {3, 4}.
inline nnc::TrainingSet line_set() {
  nnc::TrainingSet ts(1, {"A", "B"});
  const double xs[] = {0.0, 1.0, 3.0, 4.0};
  const std::uint32_t ls[] = {0, 0, 1, 1};
  for (int i = 0; i < 4; ++i) ts.add({&xs[i], 1}, ls[i]);
  return ts;
}

// Two points, two classes, distance 1.
inline nnc::TrainingSet pair_set() {
  nnc::TrainingSet ts(1, {"A", "B"});
  const double a = 0.0, b = 1.0;
  ts.add({&a, 1}, 0);
  ts.add({&b, 1}, 1);
  return ts;
}

struct LabeledPoint {
  std::vector<double> coords;
  std::uint32_t label;
};

inline nnc::TrainingSet make_set(std::size_t dim, std::vector<std::string> names,
                                 const std::vector<LabeledPoint>& points) {
  nnc::TrainingSet ts(dim, std::move(names));
  for (const auto& p : points) ts.add(p.coords, p.label);
  return ts;
}

// ---------------------------------------------------------------------------
// Deterministic random instances

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; consumes exactly two draws.
inline std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  double a = 2.0 * 3.14159265358979323846 * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

// Labeled cloud with c loose clusters plus 20% uniform noise; labels cycle
// i mod c so every class is guaranteed nonempty. Retries with seed+1 on the
// (measure-zero) chance validation fails.
inline nnc::TrainingSet random_cloud(std::uint64_t seed, std::size_t n,
                                     std::size_t d, std::size_t c) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < c; ++k) names.push_back("k" + std::to_string(k));
  for (std::uint64_t s = seed;; ++s) {
    std::mt19937_64 rng(s);
    std::vector<double> centers(c * d);
    for (double& v : centers) v = uniform01(rng);
    nnc::TrainingSet ts(d, names);
    ts.reserve(n);
    std::vector<double> row(d);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t label = static_cast<std::uint32_t>(i % c);
      bool noise = uniform01(rng) < 0.2;
      for (std::size_t k = 0; k < d; ++k) {
        double jitter = (uniform01(rng) - 0.5) * 0.3;
        row[k] = noise ? uniform01(rng) : centers[label * d + k] + jitter;
      }
      ts.add(row, label);
    }
    if (nnc::validate(ts).ok()) return ts;
  }
}

// 2-D Gaussian blobs: class centers evenly spaced on the unit circle, points
// normal with the given sigma, labels cycling i mod classes. Retries with
// seed+1 if validation fails.
inline nnc::TrainingSet gaussian_blobs(std::uint64_t seed, std::size_t n,
                                       std::size_t classes, double sigma) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < classes; ++k)
    names.push_back("g" + std::to_string(k));
  const double tau = 2.0 * 3.14159265358979323846;
  std::vector<double> cx(classes), cy(classes);
  for (std::size_t k = 0; k < classes; ++k) {
    double a = tau * static_cast<double>(k) / static_cast<double>(classes);
    cx[k] = std::cos(a);
    cy[k] = std::sin(a);
  }
  for (std::uint64_t s = seed;; ++s) {
    std::mt19937_64 rng(s);
    nnc::TrainingSet ts(2, names);
    ts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t label = static_cast<std::uint32_t>(i % classes);
      auto [z0, z1] = normal_pair(rng);
      double row[2] = {cx[label] + sigma * z0, cy[label] + sigma * z1};
      ts.add({row, 2}, label);
    }
    if (nnc::validate(ts).ok()) return ts;
  }
}

// ---------------------------------------------------------------------------
// Temp files

inline std::string tmp_path(const std::string& name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("nnc_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace testutil

// ---------------------------------------------------------------------------
// Brute-force reference implementations

namespace oracle {

inline double dist(const nnc::TrainingSet& ts, std::size_t i, std::size_t j) {
  double acc = 0;
  for (std::size_t k = 0; k < ts.dimension(); ++k) {
    double diff = ts.point(i)[k] - ts.point(j)[k];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

struct NeighborLists {
  std::vector<std::size_t> idx;
  std::vector<double> dist;
};

// Nearest enemy of every point, ties to the lowest index.
inline NeighborLists nearest_enemy(const nnc::TrainingSet& ts) {
  const std::size_t n = ts.size();
  NeighborLists out;
  out.idx.assign(n, nnc::npos);
  out.dist.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (ts.label(i) == ts.label(j)) continue;
      double d = dist(ts, i, j);
      if (d < out.dist[i]) {
        out.dist[i] = d;
        out.idx[i] = j;
      }
    }
  return out;
}

// Nearest other point regardless of label, ties to the lowest index.
inline NeighborLists nearest_any(const nnc::TrainingSet& ts) {
  const std::size_t n = ts.size();
  NeighborLists out;
  out.idx.assign(n, nnc::npos);
  out.dist.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = dist(ts, i, j);
      if (d < out.dist[i]) {
        out.dist[i] = d;
        out.idx[i] = j;
      }
    }
  return out;
}

// Weak consistency: every point must have some minimum-distance member of
// the subset sharing its label. Two passes per point: find the minimum, then
// look for a same-label member achieving it.
inline bool consistent(const nnc::TrainingSet& ts,
                       const std::vector<std::size_t>& subset,
                       std::size_t* first_bad = nullptr) {
  for (std::size_t q = 0; q < ts.size(); ++q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r : subset) best = std::min(best, dist(ts, q, r));
    bool ok = false;
    for (std::size_t r : subset)
      if (dist(ts, q, r) == best && ts.label(r) == ts.label(q)) {
        ok = true;
        break;
      }
    if (!ok) {
      if (first_bad) *first_bad = q;
      return false;
    }
  }
  return true;
}

inline bool covers_all_classes(const nnc::TrainingSet& ts,
                               const std::vector<std::size_t>& subset) {
  std::vector<char> seen(ts.num_classes(), 0);
  for (std::size_t r : subset) seen[ts.label(r)] = 1;
  for (char f : seen)
    if (!f) return false;
  return true;
}

inline double min_pairwise(const nnc::TrainingSet& ts,
                           const std::vector<std::size_t>& subset) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      best = std::min(best, dist(ts, subset[a], subset[b]));
  return best;
}

// Power-of-two bucket of a distance relative to the margin.
inline int bucket(double d, double gamma) { return std::ilogb(d / gamma); }

}  // namespace oracle

#endif  // NNC_TESTS_SUPPORT_HPP
