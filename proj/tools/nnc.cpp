// Command-line front end: every subcommand prints its resolved configuration
// (seeds included) before doing work, writes machine-readable output only via
// --out files, and reserves exit codes 0 = success, 1 = validation or
// verification failure, 2 = usage error.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnc/bench.hpp"
#include "nnc/condense.hpp"
#include "nnc/core.hpp"
#include "nnc/dataio.hpp"
#include "nnc/generators.hpp"
#include "nnc/neighbors.hpp"

namespace {

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nnc::ReadOptions make_read_options(bool no_header, const std::string& label_col) {
  nnc::ReadOptions opts;
  if (no_header) opts.has_header = false;
  if (label_col != "last") {
    try {
      opts.label_column = std::stoul(label_col);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--label-col", "expects a column index or 'last'");
    }
  }
  return opts;
}

void cmd_stats(const std::string& input, bool no_header, const std::string& label_col) {
  std::printf("config: subcommand=stats input=%s no_header=%s label_col=%s\n",
              input.c_str(), no_header ? "true" : "false", label_col.c_str());
  const nnc::TrainingSet ts = nnc::read_dataset(input, make_read_options(no_header, label_col));
  nnc::require_valid(ts);
  const nnc::StatsSummary st = nnc::stats(ts);
  std::printf("n=%zu d=%zu c=%zu kappa=%zu (%.2f%%)\n", st.n, st.d, st.c, st.kappa,
              st.kappa_percent);
  std::printf("gamma_raw=%.17g diameter=%.17g gamma_norm=%.17g spread=%.17g\n",
              st.gamma_raw, st.diameter, st.gamma_norm, st.spread);
}

void cmd_condense(const std::string& algo, const std::string& input,
                  const std::string& out) {
  std::printf("config: subcommand=condense algo=%s input=%s out=%s\n", algo.c_str(),
              input.c_str(), out.c_str());
  const auto a = nnc::algorithm_from_string(algo);
  if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + algo + "'");
  const nnc::TrainingSet ts = nnc::read_dataset(input);
  const nnc::CondenseResult res = nnc::condense(*a, ts);
  nnc::write_subset(res.subset, out);
  std::printf("selected %zu of %zu points in %zu iterations -> %s\n",
              res.subset.size(), ts.size(), res.iterations, out.c_str());
}

void cmd_verify(const std::string& input, const std::string& subset) {
  std::printf("config: subcommand=verify input=%s subset=%s\n", input.c_str(),
              subset.c_str());
  const nnc::TrainingSet ts = nnc::read_dataset(input);
  const nnc::IndexSubset idx = nnc::read_subset(subset, ts.size());
  const nnc::ConsistencyResult res = nnc::verify_consistent(ts, idx);
  if (!res.consistent) {
    std::printf("inconsistent: point %zu has no same-class nearest neighbor in the subset\n",
                res.counterexample);
    throw failure("subset failed verification");
  }
  std::printf("consistent\n");
}

void cmd_bench(const std::vector<std::string>& inputs, const std::string& algos,
               std::size_t repeats, std::size_t warmup, std::uint64_t seed,
               const std::string& out, bool parallel) {
  nnc::BenchPlan plan;
  for (const std::string& in : inputs) {
    if (std::filesystem::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : std::filesystem::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      plan.datasets.insert(plan.datasets.end(), found.begin(), found.end());
    } else {
      plan.datasets.push_back(in);
    }
  }
  if (algos != "all") {
    std::string token;
    for (std::size_t pos = 0; pos <= algos.size(); ++pos) {
      if (pos == algos.size() || algos[pos] == ',') {
        const auto a = nnc::algorithm_from_string(token);
        if (!a) throw CLI::ValidationError("--algos", "unknown algorithm '" + token + "'");
        plan.algorithms.push_back(*a);
        token.clear();
      } else {
        token.push_back(algos[pos]);
      }
    }
  }
  plan.repeats = repeats;
  plan.warmup = warmup;
  plan.seed = seed;
  plan.results_path = out;
  plan.parallel_datasets = parallel;

  std::printf("config: subcommand=bench inputs=");
  for (std::size_t i = 0; i < plan.datasets.size(); ++i) {
    std::printf("%s%s", i ? "," : "", plan.datasets[i].c_str());
  }
  std::printf(" algos=%s repeats=%zu warmup=%zu seed=%llu out=%s parallel=%s\n",
              algos.c_str(), repeats, warmup,
              static_cast<unsigned long long>(seed), out.empty() ? "-" : out.c_str(),
              parallel ? "true" : "false");

  const std::vector<nnc::ResultsRow> rows = nnc::run_bench(plan);
  std::printf("%-16s %-6s %7s %6s %12s %14s %10s\n", "dataset", "algo", "n", "kappa",
              "subset_size", "median_ns", "consistent");
  for (const nnc::ResultsRow& r : rows) {
    std::printf("%-16s %-6s %7zu %6zu %12zu %14llu %10s\n", r.dataset.c_str(),
                r.algorithm.c_str(), r.n, r.kappa, r.subset_size,
                static_cast<unsigned long long>(r.runtime_ns_median),
                r.consistent ? "true" : "false");
  }
  for (const nnc::ResultsRow& r : rows) {
    if (!r.consistent) throw failure("bench found an inconsistent subset");
  }
}

void cmd_gen_adversarial(int t, const std::string& out) {
  std::printf("config: subcommand=gen-adversarial t=%d out=%s\n", t, out.c_str());
  nnc::AdversarialParams params;
  params.t = t;
  nnc::AdversarialManifest mf;
  const nnc::TrainingSet ts = nnc::gen_adversarial(params, &mf);
  nnc::write_dataset(ts, out);
  const std::string manifest_path = out + ".manifest.json";
  nnc::write_manifest(mf, manifest_path);
  std::printf("wrote %zu points -> %s (manifest %s)\n", ts.size(), out.c_str(),
              manifest_path.c_str());
}

void cmd_gen_voronoi(std::size_t n, std::size_t d, std::size_t classes,
                     std::size_t sites, std::uint64_t seed, const std::string& out) {
  std::printf("config: subcommand=gen-voronoi n=%zu d=%zu classes=%zu sites=%zu seed=%llu out=%s\n",
              n, d, classes, sites, static_cast<unsigned long long>(seed), out.c_str());
  nnc::VoronoiParams params;
  params.n = n;
  params.d = d;
  params.classes = classes;
  params.sites = sites;
  params.seed = seed;
  std::uint64_t used = seed;
  const nnc::TrainingSet ts = nnc::gen_voronoi(params, &used);
  nnc::write_dataset(ts, out);
  std::printf("wrote %zu points -> %s (used_seed=%llu)\n", ts.size(), out.c_str(),
              static_cast<unsigned long long>(used));
}

void cmd_bound_check(const std::string& input, unsigned ddim) {
  std::printf("config: subcommand=bound-check input=%s ddim=%u\n", input.c_str(), ddim);
  const nnc::TrainingSet ts = nnc::read_dataset(input);
  const nnc::CondenseResult res = nnc::sfcnn(ts);
  const nnc::BoundCheckReport rep = nnc::sfcnn_bound_check(ts, res, ddim);
  std::printf("subset_size=%zu kappa=%zu gamma_norm=%.17g log_factor=%zu bound=%.17g holds=%s\n",
              rep.subset_size, rep.kappa, rep.gamma_norm, rep.log_factor, rep.bound,
              rep.holds ? "true" : "false");
  if (!rep.holds) throw failure("sfcnn size bound violated");
}

void cmd_ratio_sweep(int t_min, int t_max, const std::string& out) {
  std::printf("config: subcommand=ratio-sweep t_min=%d t_max=%d out=%s\n", t_min, t_max,
              out.empty() ? "-" : out.c_str());
  if (t_min > t_max) throw CLI::ValidationError("--t-min", "t-min exceeds t-max");
  std::vector<int> ts;
  for (int t = t_min; t <= t_max; ++t) ts.push_back(t);
  const std::vector<nnc::SweepRow> rows = nnc::ratio_sweep(ts);
  std::fputs(nnc::sweep_table(rows).c_str(), stdout);
  if (!out.empty()) {
    std::FILE* f = std::fopen(out.c_str(), "w");
    if (f == nullptr) throw nnc::io_error("cannot open sweep file for writing: " + out);
    std::fprintf(f, "t,n,kappa,fcnn_size,sfcnn_size,rss_size,fcnn_ratio,sfcnn_ratio,rss_ratio\n");
    for (const nnc::SweepRow& r : rows) {
      std::fprintf(f, "%d,%zu,%zu,%zu,%zu,%zu,%.17g,%.17g,%.17g\n", r.t, r.n, r.kappa,
                   r.fcnn_size, r.sfcnn_size, r.rss_size, r.fcnn_ratio, r.sfcnn_ratio,
                   r.rss_ratio);
    }
    std::fclose(f);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nearest-neighbor condensation toolkit"};
  app.require_subcommand(1);

  std::string input, subset_path, out, label_col = "last", algo, algos = "all";
  std::vector<std::string> inputs;
  bool no_header = false, parallel = false;
  std::size_t repeats = 5, warmup = 1;
  std::size_t gn = 1000, gd = 2, gclasses = 2, gsites = 5;
  std::uint64_t seed = 0, gseed = 1;
  int t = 4, t_min = 4, t_max = 6;
  unsigned ddim = 2;

  auto* stats_cmd = app.add_subcommand("stats", "dataset summary: n, d, c, kappa, margins");
  stats_cmd->add_option("file", input, "dataset CSV")->required();
  stats_cmd->add_flag("--no-header", no_header, "treat the first line as data");
  stats_cmd->add_option("--label-col", label_col, "label column index or 'last'");

  auto* condense_cmd = app.add_subcommand("condense", "select a consistent subset");
  condense_cmd->add_option("--algo", algo, "cnn|fcnn|sfcnn|mss|rss|vss|net")->required();
  condense_cmd->add_option("--input", input, "dataset CSV")->required();
  condense_cmd->add_option("--out", out, "subset index file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check a subset for consistency");
  verify_cmd->add_option("--input", input, "dataset CSV")->required();
  verify_cmd->add_option("--subset", subset_path, "subset index file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "time algorithms over datasets");
  bench_cmd->add_option("--inputs", inputs, "dataset files and/or directories")->required();
  bench_cmd->add_option("--algos", algos, "comma-separated algorithms or 'all'");
  bench_cmd->add_option("--repeats", repeats, "timed runs per algorithm");
  bench_cmd->add_option("--warmup", warmup, "untimed runs per algorithm");
  bench_cmd->add_option("--seed", seed, "recorded in result rows");
  bench_cmd->add_option("--out", out, "results CSV to append to");
  bench_cmd->add_flag("--parallel", parallel, "run datasets concurrently");

  auto* gen_cmd = app.add_subcommand("gen", "synthetic dataset generators");
  gen_cmd->require_subcommand(1);
  auto* adv_cmd = gen_cmd->add_subcommand("adversarial", "layered hard instance in R^3");
  adv_cmd->add_option("--t", t, "scale parameter, 4..12");
  adv_cmd->add_option("--out", out, "dataset CSV; manifest lands beside it")->required();
  auto* vor_cmd = gen_cmd->add_subcommand("voronoi", "site-labeled uniform points");
  vor_cmd->add_option("--n", gn, "point count");
  vor_cmd->add_option("--d", gd, "dimension");
  vor_cmd->add_option("--classes", gclasses, "class count");
  vor_cmd->add_option("--sites", gsites, "Voronoi site count");
  vor_cmd->add_option("--seed", gseed, "RNG seed");
  vor_cmd->add_option("--out", out, "dataset CSV")->required();

  auto* bound_cmd = app.add_subcommand("bound-check", "sfcnn size bound on a dataset");
  bound_cmd->add_option("--input", input, "dataset CSV")->required();
  bound_cmd->add_option("--ddim", ddim, "assumed doubling dimension")->required();

  auto* sweep_cmd = app.add_subcommand("ratio-sweep", "adversarial size/kappa ratios");
  sweep_cmd->add_option("--t-min", t_min, "first t");
  sweep_cmd->add_option("--t-max", t_max, "last t");
  sweep_cmd->add_option("--out", out, "sweep CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (stats_cmd->parsed()) {
      cmd_stats(input, no_header, label_col);
    } else if (condense_cmd->parsed()) {
      cmd_condense(algo, input, out);
    } else if (verify_cmd->parsed()) {
      cmd_verify(input, subset_path);
    } else if (bench_cmd->parsed()) {
      cmd_bench(inputs, algos, repeats, warmup, seed, out, parallel);
    } else if (gen_cmd->parsed()) {
      if (adv_cmd->parsed()) {
        cmd_gen_adversarial(t, out);
      } else {
        cmd_gen_voronoi(gn, gd, gclasses, gsites, gseed, out);
      }
    } else if (bound_cmd->parsed()) {
      cmd_bound_check(input, ddim);
    } else if (sweep_cmd->parsed()) {
      cmd_ratio_sweep(t_min, t_max, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
