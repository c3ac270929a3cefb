#include "nnc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>
#include <vector>

#include "nnc/generators.hpp"
#include "nnc/neighbors.hpp"

namespace nnc {
namespace {

std::uint64_t median_ns(std::vector<std::uint64_t> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return samples[mid - 1] + (samples[mid] - samples[mid - 1]) / 2;
}

std::vector<ResultsRow> bench_one(const std::string& path, const BenchPlan& plan,
                                  const std::vector<Algorithm>& algos) {
  const TrainingSet ts = read_dataset(path, plan.read_options);
  require_valid(ts);
  const StatsSummary st = stats(ts);
  const std::string name = std::filesystem::path(path).stem().string();

  std::vector<ResultsRow> rows;
  rows.reserve(algos.size());
  for (Algorithm a : algos) {
    std::optional<CondenseResult> reference;
    for (std::size_t w = 0; w < plan.warmup; ++w) {
      CondenseResult run = condense(a, ts);
      if (!reference) reference = std::move(run);
    }
    std::vector<std::uint64_t> samples;
    samples.reserve(plan.repeats);
    for (std::size_t r = 0; r < plan.repeats; ++r) {
      const auto begin = std::chrono::steady_clock::now();
      CondenseResult run = condense(a, ts);
      const auto end = std::chrono::steady_clock::now();
      samples.push_back(static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count()));
      if (!reference) {
        reference = std::move(run);
      } else if (run.subset.indices != reference->subset.indices) {
        std::ostringstream msg;
        msg << to_string(a) << " on " << name << " produced a different subset on "
            << "repeat " << r + 1 << " (" << run.subset.size() << " vs "
            << reference->subset.size() << " points): determinism contract broken";
        throw validation_error(msg.str());
      }
    }
    const ConsistencyResult cons = verify_consistent(ts, reference->subset);

    ResultsRow row;
    row.dataset = name;
    row.algorithm = to_string(a);
    row.n = st.n;
    row.d = st.d;
    row.c = st.c;
    row.kappa = st.kappa;
    row.gamma_norm = st.gamma_norm;
    row.subset_size = reference->subset.size();
    row.size_over_kappa =
        static_cast<double>(reference->subset.size()) / static_cast<double>(st.kappa);
    row.runtime_ns_median = median_ns(std::move(samples));
    row.runtime_ns_per_point =
        static_cast<double>(row.runtime_ns_median) / static_cast<double>(st.n);
    row.consistent = cons.consistent;
    row.repeats = plan.repeats;
    row.seed = plan.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultsRow> run_bench(const BenchPlan& plan) {
  if (plan.datasets.empty()) throw invalid_input_error("bench plan lists no datasets");
  if (plan.repeats == 0) throw invalid_input_error("bench plan needs repeats >= 1");
  std::vector<Algorithm> algos(plan.algorithms);
  if (algos.empty()) algos.assign(all_algorithms.begin(), all_algorithms.end());

  std::vector<std::vector<ResultsRow>> per_dataset(plan.datasets.size());
  if (plan.parallel_datasets && plan.datasets.size() > 1) {
    const std::size_t workers =
        std::min<std::size_t>(plan.datasets.size(),
                              std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(plan.datasets.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < plan.datasets.size();
             i = next.fetch_add(1)) {
          try {
            per_dataset[i] = bench_one(plan.datasets[i], plan, algos);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t i = 0; i < plan.datasets.size(); ++i) {
      per_dataset[i] = bench_one(plan.datasets[i], plan, algos);
    }
  }

  std::vector<ResultsRow> rows;
  for (std::vector<ResultsRow>& part : per_dataset) {
    for (ResultsRow& row : part) {
      if (!plan.results_path.empty()) append_result(row, plan.results_path);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepRow> ratio_sweep(const std::vector<int>& t_values) {
  std::vector<SweepRow> rows;
  rows.reserve(t_values.size());
  for (int t : t_values) {
    if (t < 4 || t > 8) {
      std::ostringstream msg;
      msg << "ratio sweep t=" << t << " outside supported range [4, 8]";
      throw invalid_input_error(msg.str());
    }
    AdversarialParams params;
    params.t = t;
    const TrainingSet ts = gen_adversarial(params);
    const NeighborTable nt = nearest_enemy_table(ts);
    std::vector<bool> is_target(ts.size(), false);
    for (std::size_t i = 0; i < ts.size(); ++i) is_target[nt.ne_index[i]] = true;
    std::size_t kappa = 0;
    for (bool b : is_target) kappa += b;

    SweepRow row;
    row.t = t;
    row.n = ts.size();
    row.kappa = kappa;
    for (Algorithm a : {Algorithm::fcnn, Algorithm::sfcnn, Algorithm::rss}) {
      const CondenseResult res = condense(a, ts);
      const ConsistencyResult cons = verify_consistent(ts, res.subset);
      if (!cons.consistent) {
        std::ostringstream msg;
        msg << to_string(a) << " subset inconsistent on the t=" << t
            << " adversarial set at point " << cons.counterexample;
        throw validation_error(msg.str());
      }
      const double ratio =
          static_cast<double>(res.subset.size()) / static_cast<double>(kappa);
      switch (a) {
        case Algorithm::fcnn:
          row.fcnn_size = res.subset.size();
          row.fcnn_ratio = ratio;
          break;
        case Algorithm::sfcnn:
          row.sfcnn_size = res.subset.size();
          row.sfcnn_ratio = ratio;
          break;
        default:
          row.rss_size = res.subset.size();
          row.rss_ratio = ratio;
          break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%2s %7s %6s %9s %10s %8s %10s %11s %9s\n", "t",
                "n", "kappa", "fcnn_size", "sfcnn_size", "rss_size", "fcnn_ratio",
                "sfcnn_ratio", "rss_ratio");
  out << line;
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line, "%2d %7zu %6zu %9zu %10zu %8zu %10.3f %11.3f %9.3f\n",
                  r.t, r.n, r.kappa, r.fcnn_size, r.sfcnn_size, r.rss_size,
                  r.fcnn_ratio, r.sfcnn_ratio, r.rss_ratio);
    out << line;
  }
  return out.str();
}

}  // namespace nnc
