#include "nnc/condense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace nnc {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Incremental nearest-selected bookkeeping shared by the growing-subset
// selectors: nsd[q]/nsi[q] hold the closest already-selected point to q,
// ties broken to the lowest point index.
struct NearestSelected {
  std::vector<double> nsd;
  std::vector<std::size_t> nsi;

  explicit NearestSelected(std::size_t n) : nsd(n, inf), nsi(n, npos) {}

  void absorb(const TrainingSet& ts, std::size_t s) {
    auto ps = ts.point(s);
    for (std::size_t q = 0; q < nsd.size(); ++q) {
      double d = distance(ts.point(q), ps);
      if (d < nsd[q] || (d == nsd[q] && s < nsi[q])) {
        nsd[q] = d;
        nsi[q] = s;
      }
    }
  }
};

void require_classes(const TrainingSet& ts, const char* who) {
  if (ts.num_classes() < 2) {
    std::ostringstream msg;
    msg << who << ": needs at least two classes";
    throw invalid_input_error(msg.str());
  }
}

CondenseResult make_result(Algorithm a, std::vector<std::size_t> order,
                           std::size_t iterations) {
  CondenseResult r;
  r.algorithm = a;
  r.selection_order = std::move(order);
  r.subset = IndexSubset::from_selection(r.selection_order);
  r.iterations = iterations;
  return r;
}

// Scan order used by mss/rss/vss: ascending nearest-enemy distance, ties by
// index.
std::vector<std::size_t> enemy_distance_order(const NeighborTable& table) {
  std::vector<std::size_t> order(table.ne_dist.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.ne_dist[a] != table.ne_dist[b])
      return table.ne_dist[a] < table.ne_dist[b];
    return a < b;
  });
  return order;
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::cnn: return "cnn";
    case Algorithm::fcnn: return "fcnn";
    case Algorithm::sfcnn: return "sfcnn";
    case Algorithm::mss: return "mss";
    case Algorithm::rss: return "rss";
    case Algorithm::vss: return "vss";
    case Algorithm::net: return "net";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
  for (Algorithm a : all_algorithms)
    if (name == to_string(a)) return a;
  return std::nullopt;
}

std::vector<std::size_t> class_centroids(const TrainingSet& ts) {
  require_valid(ts);
  const std::size_t n = ts.size();
  const std::size_t d = ts.dimension();
  const std::size_t c = ts.num_classes();

  std::vector<double> sum(c * d, 0.0);
  std::vector<std::size_t> count(c, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = ts.point(i);
    double* row = sum.data() + ts.label(i) * d;
    for (std::size_t k = 0; k < d; ++k) row[k] += p[k];
    ++count[ts.label(i)];
  }
  std::vector<double> mean(c * d);
  for (std::size_t cls = 0; cls < c; ++cls)
    for (std::size_t k = 0; k < d; ++k)
      mean[cls * d + k] = sum[cls * d + k] / static_cast<double>(count[cls]);

  std::vector<std::size_t> best(c, npos);
  std::vector<double> best_d(c, inf);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t cls = ts.label(i);
    double d2 = squared_distance(ts.point(i), {mean.data() + cls * d, d});
    if (d2 < best_d[cls]) {
      best_d[cls] = d2;
      best[cls] = i;
    }
  }
  return best;
}

std::vector<std::size_t> voren(const TrainingSet& ts, const IndexSubset& r,
                               std::size_t p) {
  require_valid(ts);
  if (!r.contains(p))
    throw invalid_input_error("voren: p must be a member of the subset");
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < ts.size(); ++q) {
    if (r.contains(q)) continue;
    auto [owner, dist] = nearest_in_subset(ts, q, r);
    (void)dist;
    if (owner == p && ts.label(q) != ts.label(p)) out.push_back(q);
  }
  return out;
}

CondenseResult fcnn(const TrainingSet& ts) {
  require_valid(ts);
  const std::size_t n = ts.size();
  std::vector<char> selected(n, 0);
  NearestSelected near(n);
  std::vector<std::size_t> order;
  std::size_t iterations = 0;

  std::vector<std::size_t> batch = class_centroids(ts);

  // Per-pass rep accumulators, indexed by the owning selected point.
  std::vector<double> rep_dist(n, inf);
  std::vector<std::size_t> rep_idx(n, npos);

  while (!batch.empty()) {
    ++iterations;
    for (std::size_t s : batch) {
      selected[s] = 1;
      order.push_back(s);
      near.absorb(ts, s);
    }

    for (std::size_t s : order) {
      rep_dist[s] = inf;
      rep_idx[s] = npos;
    }
    // rep(p) = the misclassified point owned by p closest to p, ties by
    // lowest index; ascending q makes the first strict win the lowest index.
    for (std::size_t q = 0; q < n; ++q) {
      if (selected[q]) continue;
      std::size_t p = near.nsi[q];
      if (ts.label(q) == ts.label(p)) continue;
      if (near.nsd[q] < rep_dist[p]) {
        rep_dist[p] = near.nsd[q];
        rep_idx[p] = q;
      }
    }
    batch.clear();
    for (std::size_t p : order)
      if (rep_idx[p] != npos) batch.push_back(rep_idx[p]);
  }
  return make_result(Algorithm::fcnn, std::move(order), iterations);
}

CondenseResult sfcnn(const TrainingSet& ts) {
  require_valid(ts);
  const std::size_t n = ts.size();
  std::vector<char> selected(n, 0);
  NearestSelected near(n);
  std::vector<std::size_t> order;
  std::size_t iterations = 0;

  // First pass: the centroid batch collapses to the lowest class id.
  std::size_t next = class_centroids(ts)[0];
  while (next != npos) {
    ++iterations;
    selected[next] = 1;
    order.push_back(next);
    near.absorb(ts, next);

    // The candidate batch is one rep per selected point; keeping exactly one
    // of them, the one closest to its owner (ties by lowest point index),
    // equals the global argmin over misclassified points of (nsd, index).
    next = npos;
    double next_d = inf;
    for (std::size_t q = 0; q < n; ++q) {
      if (selected[q]) continue;
      if (ts.label(q) == ts.label(near.nsi[q])) continue;
      if (near.nsd[q] < next_d) {
        next_d = near.nsd[q];
        next = q;
      }
    }
  }
  return make_result(Algorithm::sfcnn, std::move(order), iterations);
}

CondenseResult cnn(const TrainingSet& ts) {
  require_valid(ts);
  const std::size_t n = ts.size();
  std::vector<char> selected(n, 0);
  NearestSelected near(n);
  std::vector<std::size_t> order;

  // Seed with the first point of each class in input order.
  std::vector<char> seeded(ts.num_classes(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seeded[ts.label(i)]) continue;
    seeded[ts.label(i)] = 1;
    selected[i] = 1;
    order.push_back(i);
    near.absorb(ts, i);
  }

  std::size_t iterations = 0;
  bool added = true;
  while (added) {
    ++iterations;  // the final pass that adds nothing still counts
    added = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (selected[q]) continue;
      if (ts.label(near.nsi[q]) == ts.label(q)) continue;
      selected[q] = 1;
      order.push_back(q);
      near.absorb(ts, q);
      added = true;
    }
  }
  return make_result(Algorithm::cnn, std::move(order), iterations);
}

CondenseResult rss(const TrainingSet& ts) {
  require_classes(ts, "rss");
  NeighborTable table = nearest_enemy_table(ts);  // validates
  std::vector<std::size_t> order;
  for (std::size_t p : enemy_distance_order(table)) {
    bool keep = true;
    auto pp = ts.point(p);
    for (std::size_t r : order) {
      if (distance(pp, ts.point(r)) < table.ne_dist[p]) {
        keep = false;
        break;
      }
    }
    if (keep) order.push_back(p);
  }
  return make_result(Algorithm::rss, std::move(order), 1);
}

CondenseResult vss(const TrainingSet& ts) {
  require_classes(ts, "vss");
  NeighborTable table = nearest_enemy_table(ts);
  const std::size_t n = ts.size();
  std::vector<char> in_subset(n, 0);
  std::vector<std::size_t> order;

  for (std::size_t p : enemy_distance_order(table)) {
    bool covered = false;
    auto pp = ts.point(p);
    for (std::size_t r : order) {
      if (distance(pp, ts.point(r)) < table.ne_dist[p]) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    // Pick the same-label witness inside p's enemy ball that sits closest to
    // p's nearest enemy (ties by lowest index). p itself always qualifies.
    auto enemy = ts.point(table.ne_index[p]);
    std::size_t pick = npos;
    double pick_d = inf;
    for (std::size_t q = 0; q < n; ++q) {
      if (ts.label(q) != ts.label(p)) continue;
      if (distance(pp, ts.point(q)) >= table.ne_dist[p]) continue;
      double d = distance(ts.point(q), enemy);
      if (d < pick_d) {
        pick_d = d;
        pick = q;
      }
    }
    if (!in_subset[pick]) {
      in_subset[pick] = 1;
      order.push_back(pick);
    }
  }
  return make_result(Algorithm::vss, std::move(order), 1);
}

CondenseResult mss(const TrainingSet& ts) {
  require_classes(ts, "mss");
  NeighborTable table = nearest_enemy_table(ts);
  const std::size_t n = ts.size();
  std::vector<char> needs(n, 1);
  std::size_t remaining = n;
  std::vector<std::size_t> order;

  for (std::size_t p : enemy_distance_order(table)) {
    if (remaining == 0) break;
    auto pp = ts.point(p);
    bool useful = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!needs[q]) continue;
      if (distance(pp, ts.point(q)) < table.ne_dist[q]) {
        if (!useful) {
          useful = true;
          order.push_back(p);
        }
        needs[q] = 0;
        --remaining;
      }
    }
  }
  return make_result(Algorithm::mss, std::move(order), 1);
}

CondenseResult net(const TrainingSet& ts) {
  require_classes(ts, "net");
  NeighborTable table = nearest_enemy_table(ts);
  double gamma = inf;
  for (double d : table.ne_dist) gamma = std::min(gamma, d);

  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < ts.size(); ++p) {
    bool keep = true;
    auto pp = ts.point(p);
    for (std::size_t r : order) {
      if (distance(pp, ts.point(r)) < gamma) {
        keep = false;
        break;
      }
    }
    if (keep) order.push_back(p);
  }
  return make_result(Algorithm::net, std::move(order), 1);
}

CondenseResult condense(Algorithm a, const TrainingSet& ts) {
  switch (a) {
    case Algorithm::cnn: return cnn(ts);
    case Algorithm::fcnn: return fcnn(ts);
    case Algorithm::sfcnn: return sfcnn(ts);
    case Algorithm::mss: return mss(ts);
    case Algorithm::rss: return rss(ts);
    case Algorithm::vss: return vss(ts);
    case Algorithm::net: return net(ts);
  }
  throw invalid_input_error("condense: unknown algorithm");
}

ConsistencyResult verify_consistent(const TrainingSet& ts, const IndexSubset& r) {
  if (r.indices.empty())
    throw invalid_input_error("verify_consistent: subset is empty");
  for (std::size_t idx : r.indices)
    if (idx >= ts.size())
      throw invalid_input_error("verify_consistent: subset index out of range");

  for (std::size_t q = 0; q < ts.size(); ++q) {
    auto pq = ts.point(q);
    double best = inf;
    bool same_label_at_best = false;
    for (std::size_t idx : r.indices) {
      double d = distance(pq, ts.point(idx));
      if (d < best) {
        best = d;
        same_label_at_best = (ts.label(idx) == ts.label(q));
      } else if (d == best && !same_label_at_best) {
        same_label_at_best = (ts.label(idx) == ts.label(q));
      }
    }
    if (!same_label_at_best) return {false, q};
  }
  return {true, npos};
}

BoundCheckReport sfcnn_bound_check(const TrainingSet& ts,
                                   const CondenseResult& result,
                                   unsigned assumed_ddim) {
  if (result.algorithm != Algorithm::sfcnn)
    throw invalid_input_error("sfcnn_bound_check: result is not from sfcnn");
  if (assumed_ddim < 1)
    throw invalid_input_error("sfcnn_bound_check: assumed_ddim must be >= 1");

  StatsSummary s = stats(ts);
  BoundCheckReport rep;
  rep.subset_size = result.subset.size();
  rep.kappa = s.kappa;
  rep.gamma_norm = s.gamma_norm;

  // ceil(log2(1/gamma_norm)) via exact exponent arithmetic: ldexp(1, k) is
  // the exact power of two, so the comparison has no rounding slack.
  double ratio = 1.0 / s.gamma_norm;
  int k = std::ilogb(ratio);
  while (std::ldexp(1.0, k) < ratio) ++k;
  while (k > 0 && std::ldexp(1.0, k - 1) >= ratio) --k;
  rep.log_factor = static_cast<std::size_t>(std::max(1, k));

  double bound = static_cast<double>(rep.kappa) *
                 static_cast<double>(rep.log_factor) *
                 std::pow(4.0, static_cast<double>(assumed_ddim) + 1.0);
  if (!std::isfinite(bound)) bound = inf;  // saturate; the bound then holds
  rep.bound = bound;
  rep.holds = static_cast<double>(rep.subset_size) <= bound;
  return rep;
}

}  // namespace nnc
