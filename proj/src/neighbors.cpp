#include "nnc/neighbors.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "parallel.hpp"

namespace nnc {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

NeighborTable nearest_enemy_table(const TrainingSet& ts, bool with_nn) {
  require_valid(ts);
  const std::size_t n = ts.size();
  if (ts.num_classes() < 2)
    throw invalid_input_error("nearest_enemy_table: needs at least two classes");

  NeighborTable table;
  table.ne_index.assign(n, npos);
  table.ne_dist.assign(n, inf);
  if (with_nn) {
    table.nn_index.assign(n, npos);
    table.nn_dist.assign(n, inf);
  }

  detail::parallel_chunks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      auto pi = ts.point(i);
      auto li = ts.label(i);
      double best_enemy = inf;
      std::size_t best_enemy_idx = npos;
      double best_any = inf;
      std::size_t best_any_idx = npos;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double d = distance(pi, ts.point(j));
        if (ts.label(j) != li && d < best_enemy) {
          best_enemy = d;
          best_enemy_idx = j;  // ascending j, so first strict win is lowest index
        }
        if (with_nn && d < best_any) {
          best_any = d;
          best_any_idx = j;
        }
      }
      table.ne_index[i] = best_enemy_idx;
      table.ne_dist[i] = best_enemy;
      if (with_nn) {
        table.nn_index[i] = best_any_idx;
        table.nn_dist[i] = best_any;
      }
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (table.ne_index[i] == npos) {
      std::ostringstream msg;
      msg << "nearest_enemy_table: point " << i << " has no enemy";
      throw invalid_input_error(msg.str());
    }
  }
  return table;
}

std::pair<std::size_t, double> nearest_in_subset(const TrainingSet& ts,
                                                 std::size_t q,
                                                 const IndexSubset& r) {
  if (r.indices.empty())
    throw invalid_input_error("nearest_in_subset: subset is empty");
  if (q >= ts.size())
    throw invalid_input_error("nearest_in_subset: query index out of range");
  auto pq = ts.point(q);
  double best = inf;
  std::size_t best_idx = npos;
  for (std::size_t idx : r.indices) {
    if (idx >= ts.size())
      throw invalid_input_error("nearest_in_subset: subset index out of range");
    double d = distance(pq, ts.point(idx));
    if (d < best) {
      best = d;
      best_idx = idx;  // indices ascend, so ties keep the lowest
    }
  }
  return {best_idx, best};
}

StatsSummary stats(const TrainingSet& ts) {
  NeighborTable table = nearest_enemy_table(ts);  // validates, needs 2+ classes
  const std::size_t n = ts.size();

  StatsSummary s;
  s.n = n;
  s.d = ts.dimension();
  s.c = ts.num_classes();

  std::vector<char> is_ne(n, 0);
  double gamma = inf;
  for (std::size_t i = 0; i < n; ++i) {
    is_ne[table.ne_index[i]] = 1;
    if (table.ne_dist[i] < gamma) gamma = table.ne_dist[i];
  }
  for (char f : is_ne) s.kappa += f;
  s.kappa_percent = 100.0 * static_cast<double>(s.kappa) / static_cast<double>(n);
  s.gamma_raw = gamma;

  // Pairwise extremes; each worker scans full rows, reductions commute.
  std::mutex merge;
  double diameter = 0;
  double min_nonzero = inf;
  detail::parallel_chunks(n, [&](std::size_t b, std::size_t e) {
    double local_max = 0;
    double local_min = inf;
    for (std::size_t i = b; i < e; ++i) {
      auto pi = ts.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = distance(pi, ts.point(j));
        if (d > local_max) local_max = d;
        if (d > 0 && d < local_min) local_min = d;
      }
    }
    std::scoped_lock lock(merge);
    if (local_max > diameter) diameter = local_max;
    if (local_min < min_nonzero) min_nonzero = local_min;
  });

  s.diameter = diameter;
  s.gamma_norm = gamma / diameter;
  s.spread = std::isinf(min_nonzero) ? 1.0 : diameter / min_nonzero;
  return s;
}

}  // namespace nnc
