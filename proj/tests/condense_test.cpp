#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "nnc/condense.hpp"
#include "nnc/dataio.hpp"
#include "nnc/neighbors.hpp"
#include "support.hpp"

using nnc::Algorithm;
using nnc::IndexSubset;
using nnc::TrainingSet;

namespace {

std::vector<std::size_t> subset_of(const nnc::CondenseResult& r) {
  return r.subset.indices;
}

// Reference run of the batched cascade, built on voren() and nothing else
// from the implementation under test: absorb the whole candidate batch, then
// collect per-member representatives (closest misclassified point in each
// member's cell, ties to the lowest index) until the batch comes back empty.
std::vector<std::size_t> reference_fcnn(const TrainingSet& ts) {
  std::set<std::size_t> selected;
  std::vector<std::size_t> batch = nnc::class_centroids(ts);
  while (!batch.empty()) {
    for (std::size_t s : batch) selected.insert(s);
    IndexSubset r = IndexSubset::from_sorted(
        std::vector<std::size_t>(selected.begin(), selected.end()));
    std::set<std::size_t> next;
    for (std::size_t p : r.indices) {
      std::size_t rep = nnc::npos;
      double rep_d = std::numeric_limits<double>::infinity();
      for (std::size_t q : nnc::voren(ts, r, p)) {
        double d = oracle::dist(ts, p, q);
        if (d < rep_d) {
          rep_d = d;
          rep = q;
        }
      }
      if (rep != nnc::npos) next.insert(rep);
    }
    batch.assign(next.begin(), next.end());
  }
  return {selected.begin(), selected.end()};
}

// Reference run of the one-at-a-time cascade: among all members' current
// representatives, keep the one closest to its generating member, ties to
// the lowest point index.
std::vector<std::size_t> reference_sfcnn(const TrainingSet& ts) {
  std::set<std::size_t> selected;
  std::size_t next = nnc::class_centroids(ts)[0];
  while (next != nnc::npos) {
    selected.insert(next);
    IndexSubset r = IndexSubset::from_sorted(
        std::vector<std::size_t>(selected.begin(), selected.end()));
    next = nnc::npos;
    double next_d = std::numeric_limits<double>::infinity();
    for (std::size_t p : r.indices) {
      for (std::size_t q : nnc::voren(ts, r, p)) {
        double d = oracle::dist(ts, p, q);
        if (d < next_d || (d == next_d && q < next)) {
          next_d = d;
          next = q;
        }
      }
    }
  }
  return {selected.begin(), selected.end()};
}

}  // namespace

TEST_CASE("four-point line: every algorithm lands on its known subset") {
  auto ts = testutil::line_set();

  auto f = nnc::fcnn(ts);
  CHECK(subset_of(f) == std::vector<std::size_t>{0, 2});
  CHECK(f.selection_order == std::vector<std::size_t>{0, 2});
  CHECK(f.iterations == 1);  // the centroid batch is already consistent

  auto sf = nnc::sfcnn(ts);
  CHECK(subset_of(sf) == std::vector<std::size_t>{0, 2});
  CHECK(sf.selection_order == std::vector<std::size_t>{0, 2});
  CHECK(sf.iterations == 2);

  auto c = nnc::cnn(ts);
  CHECK(subset_of(c) == std::vector<std::size_t>{0, 2});
  CHECK(c.iterations == 1);

  auto nt = nnc::net(ts);
  CHECK(subset_of(nt) == std::vector<std::size_t>{0, 2});
  CHECK(nt.iterations == 1);

  auto r = nnc::rss(ts);
  CHECK(subset_of(r) == std::vector<std::size_t>{1, 2});
  CHECK(r.selection_order == std::vector<std::size_t>{1, 2});
  CHECK(r.iterations == 1);

  auto v = nnc::vss(ts);
  CHECK(subset_of(v) == std::vector<std::size_t>{1, 2});
  CHECK(v.iterations == 1);

  auto m = nnc::mss(ts);
  CHECK(subset_of(m) == std::vector<std::size_t>{1, 2});
  CHECK(m.iterations == 1);
}

TEST_CASE("two points of two classes: every algorithm keeps both") {
  auto ts = testutil::pair_set();
  for (Algorithm a : nnc::all_algorithms) {
    auto res = nnc::condense(a, ts);
    CHECK(subset_of(res) == std::vector<std::size_t>{0, 1});
  }
  CHECK(nnc::sfcnn(ts).iterations == 2);
  CHECK(nnc::fcnn(ts).iterations == 1);
}

TEST_CASE("class_centroids picks the member nearest the mean") {
  SUBCASE("tie on the line goes to the lower index") {
    auto cents = nnc::class_centroids(testutil::line_set());
    // Class A: mean 0.5, x0 and x1 equidistant. Class B: mean 3.5 likewise.
    CHECK(cents == std::vector<std::size_t>{0, 2});
  }

  SUBCASE("singleton class is its own centroid") {
    TrainingSet ts(1, {"A", "B"});
    std::vector<double> xs = {0.0, 5.0, 6.0};
    ts.add({&xs[0], 1}, 1);
    ts.add({&xs[1], 1}, 0);
    ts.add({&xs[2], 1}, 0);
    auto cents = nnc::class_centroids(ts);
    REQUIRE(cents.size() == 2);
    CHECK(cents[1] == 0);  // the lone B point
  }

  SUBCASE("triangle class checked against brute force") {
    TrainingSet ts(2, {"A", "B"});
    std::vector<testutil::LabeledPoint> pts = {
        {{0.0, 0.0}, 0}, {{2.0, 0.0}, 0}, {{1.0, 5.0}, 0}, {{9.0, 9.0}, 1}};
    for (const auto& p : pts) ts.add(p.coords, p.label);

    // Mean of class A is (1, 5/3); recompute the winner directly.
    double mean[2] = {(0.0 + 2.0 + 1.0) / 3.0, (0.0 + 0.0 + 5.0) / 3.0};
    std::size_t want = nnc::npos;
    double want_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) {
      double dx = ts.point(i)[0] - mean[0];
      double dy = ts.point(i)[1] - mean[1];
      double d2 = dx * dx + dy * dy;
      if (d2 < want_d) {
        want_d = d2;
        want = i;
      }
    }
    auto cents = nnc::class_centroids(ts);
    CHECK(cents[0] == want);
    CHECK(cents[0] == 0);  // (0,0) and (2,0) tie; lower index wins
    CHECK(cents[1] == 3);
  }
}

TEST_CASE("voren cells on the fixed instances") {
  auto ts = testutil::line_set();
  auto r = IndexSubset::from_sorted({0, 2});
  CHECK(nnc::voren(ts, r, 0).empty());
  CHECK(nnc::voren(ts, r, 2).empty());

  auto solo = IndexSubset::from_sorted({0});
  CHECK(nnc::voren(ts, solo, 0) == std::vector<std::size_t>{2, 3});

  auto all = IndexSubset::from_sorted({0, 1, 2, 3});
  for (std::size_t p = 0; p < 4; ++p) CHECK(nnc::voren(ts, all, p).empty());

  auto pair = testutil::pair_set();
  auto r0 = IndexSubset::from_sorted({0});
  CHECK(nnc::voren(pair, r0, 0) == std::vector<std::size_t>{1});

  CHECK_THROWS_AS(nnc::voren(ts, r, 1), nnc::invalid_input_error);
}

TEST_CASE("verify_consistent on hand-checked subsets") {
  auto ts = testutil::line_set();

  auto all = IndexSubset::from_sorted({0, 1, 2, 3});
  CHECK(nnc::verify_consistent(ts, all).consistent);

  auto just_x0 = IndexSubset::from_sorted({0});
  auto bad = nnc::verify_consistent(ts, just_x0);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.counterexample == 2);

  auto inner = IndexSubset::from_sorted({1, 2});
  CHECK(nnc::verify_consistent(ts, inner).consistent);

  auto one_class = IndexSubset::from_sorted({0, 1});
  auto res = nnc::verify_consistent(ts, one_class);
  CHECK_FALSE(res.consistent);
  CHECK(res.counterexample == 2);
}

TEST_CASE("verify_consistent accepts a same-label tie at the minimum") {
  // x3 sits exactly between the enemy x1 and the friend x2.
  std::vector<double> xs = {0.0, 2.0, 4.0, 3.0};
  TrainingSet ts(1, {"A", "B"});
  ts.add({&xs[0], 1}, 0);
  ts.add({&xs[1], 1}, 1);
  ts.add({&xs[2], 1}, 0);
  ts.add({&xs[3], 1}, 0);

  auto r = IndexSubset::from_sorted({0, 1, 2});
  CHECK(nnc::verify_consistent(ts, r).consistent);
  std::size_t bad = 0;
  CHECK(oracle::consistent(ts, r.indices, &bad));
}

TEST_CASE("verify_consistent rejects bad subsets") {
  auto ts = testutil::line_set();
  CHECK_THROWS_AS(nnc::verify_consistent(ts, IndexSubset{}),
                  nnc::invalid_input_error);
  auto out_of_range = IndexSubset::from_sorted({0, 44});
  CHECK_THROWS_AS(nnc::verify_consistent(ts, out_of_range),
                  nnc::invalid_input_error);
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : nnc::all_algorithms) {
    auto back = nnc::algorithm_from_string(nnc::to_string(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK_FALSE(nnc::algorithm_from_string("knn").has_value());
  CHECK_FALSE(nnc::algorithm_from_string("").has_value());
}

TEST_CASE("condense dispatches to the named algorithm") {
  auto ts = testutil::random_cloud(77, 60, 2, 3);
  for (Algorithm a : nnc::all_algorithms) {
    auto via_enum = nnc::condense(a, ts);
    CHECK(via_enum.algorithm == a);
    CHECK(subset_of(via_enum) ==
          subset_of(nnc::condense(*nnc::algorithm_from_string(nnc::to_string(a)), ts)));
  }
}

TEST_CASE("single-class input") {
  TrainingSet ts(1, {"A"});
  std::vector<double> xs = {4.0, 0.0, 1.0, 2.0};
  for (double& x : xs) ts.add({&x, 1}, 0);

  // The cascades fall back to the lone class centroid (x4 is remote, the
  // mean is 1.75, so x3 at 2.0 wins); the plain scan seeds the first point.
  CHECK(subset_of(nnc::fcnn(ts)) == std::vector<std::size_t>{3});
  CHECK(subset_of(nnc::sfcnn(ts)) == std::vector<std::size_t>{3});
  CHECK(subset_of(nnc::cnn(ts)) == std::vector<std::size_t>{0});

  CHECK_THROWS_AS(nnc::rss(ts), nnc::invalid_input_error);
  CHECK_THROWS_AS(nnc::vss(ts), nnc::invalid_input_error);
  CHECK_THROWS_AS(nnc::mss(ts), nnc::invalid_input_error);
  CHECK_THROWS_AS(nnc::net(ts), nnc::invalid_input_error);
}

TEST_CASE("batched cascade agrees with the voren-based reference") {
  for (int round = 0; round < 10; ++round) {
    auto ts = testutil::random_cloud(4000 + round, 20 + round * 5, 2, 2 + round % 3);
    CHECK(subset_of(nnc::fcnn(ts)) == reference_fcnn(ts));
  }
}

TEST_CASE("single-step cascade agrees with the voren-based reference") {
  for (int round = 0; round < 10; ++round) {
    auto ts = testutil::random_cloud(5000 + round, 20 + round * 5, 2, 2 + round % 3);
    CHECK(subset_of(nnc::sfcnn(ts)) == reference_sfcnn(ts));
  }
}

TEST_CASE("bound check on degenerate and frozen inputs") {
  SUBCASE("two points force the clamped log factor") {
    auto ts = testutil::pair_set();
    auto rep = nnc::sfcnn_bound_check(ts, nnc::sfcnn(ts), 1);
    CHECK(rep.subset_size == 2);
    CHECK(rep.kappa == 2);
    CHECK(rep.gamma_norm == 1.0);
    CHECK(rep.log_factor == 1);
    CHECK(rep.bound == 32.0);  // 2 * 1 * 4^2
    CHECK(rep.holds);
  }

  SUBCASE("bundled iris") {
    auto ts = nnc::read_dataset(NNC_DATA_DIR "/iris.csv");
    auto res = nnc::sfcnn(ts);
    CHECK(res.subset.size() == 18);
    auto rep = nnc::sfcnn_bound_check(ts, res, 4);
    CHECK(rep.kappa == 20);
    CHECK(rep.log_factor == 5);  // gamma_norm ~= 0.0532, so 2^5 covers 1/gamma
    CHECK(rep.bound == 102400.0);
    CHECK(rep.holds);
  }

  SUBCASE("huge assumed dimension saturates and still holds") {
    auto ts = testutil::pair_set();
    auto rep = nnc::sfcnn_bound_check(ts, nnc::sfcnn(ts), 600);
    CHECK(std::isinf(rep.bound));
    CHECK(rep.holds);
  }

  SUBCASE("argument validation") {
    auto ts = testutil::pair_set();
    CHECK_THROWS_AS(nnc::sfcnn_bound_check(ts, nnc::fcnn(ts), 2),
                    nnc::invalid_input_error);
    CHECK_THROWS_AS(nnc::sfcnn_bound_check(ts, nnc::sfcnn(ts), 0),
                    nnc::invalid_input_error);
  }
}

TEST_CASE("shared behavior of all seven selectors on random clouds") {
  std::mt19937_64 rng(90);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 8 + rng() % 153;
    std::size_t d = 1 + rng() % 5;
    std::size_t c = 2 + rng() % 3;
    auto ts = testutil::random_cloud(7000 + round, n, d, c);
    CAPTURE(round);

    auto table = nnc::nearest_enemy_table(ts);
    double gamma = *std::min_element(table.ne_dist.begin(), table.ne_dist.end());

    for (Algorithm a : nnc::all_algorithms) {
      CAPTURE(nnc::to_string(a));
      auto res = nnc::condense(a, ts);
      const auto& sel = res.subset.indices;

      REQUIRE_FALSE(sel.empty());
      CHECK(sel.back() < ts.size());

      // subset == sorted(selection_order), duplicate-free.
      auto sorted = res.selection_order;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sel == sorted);
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

      CHECK(nnc::verify_consistent(ts, res.subset).consistent);
      CHECK(oracle::consistent(ts, sel));
      CHECK(oracle::covers_all_classes(ts, sel));

      // Same input, same run.
      CHECK(nnc::condense(a, ts).selection_order == res.selection_order);

      switch (a) {
        case Algorithm::fcnn:
          CHECK(res.iterations >= 1);
          break;
        case Algorithm::sfcnn:
          CHECK(res.iterations == sel.size());
          break;
        case Algorithm::cnn:
          CHECK(res.iterations >= 1);
          CHECK(res.iterations <= sel.size() + 1);
          break;
        default:
          CHECK(res.iterations == 1);
          break;
      }

      if (a == Algorithm::sfcnn || a == Algorithm::rss || a == Algorithm::net) {
        if (sel.size() > 1) CHECK(oracle::min_pairwise(ts, sel) >= gamma);
      }

      if (a == Algorithm::rss || a == Algorithm::vss || a == Algorithm::mss) {
        // Every point has a member strictly inside its nearest-enemy ball.
        for (std::size_t q = 0; q < ts.size(); ++q) {
          bool covered = false;
          for (std::size_t s : sel)
            if (oracle::dist(ts, q, s) < table.ne_dist[q]) {
              covered = true;
              break;
            }
          CHECK(covered);
        }
      }

      if (a == Algorithm::net) {
        // Skipped points sit strictly inside the margin of a member.
        for (std::size_t q = 0; q < ts.size(); ++q) {
          if (res.subset.contains(q)) continue;
          bool close = false;
          for (std::size_t s : sel)
            if (oracle::dist(ts, q, s) < gamma) {
              close = true;
              break;
            }
          CHECK(close);
        }
      }

      if (a == Algorithm::sfcnn && sel.size() > 1) {
        // Members charged to one enemy point from the same distance bucket
        // must stay a bucket width apart.
        for (std::size_t ai = 0; ai < sel.size(); ++ai)
          for (std::size_t bi = ai + 1; bi < sel.size(); ++bi) {
            std::size_t pa = sel[ai], pb = sel[bi];
            if (table.ne_index[pa] != table.ne_index[pb]) continue;
            int ba = oracle::bucket(table.ne_dist[pa], gamma);
            int bb = oracle::bucket(table.ne_dist[pb], gamma);
            if (ba != bb) continue;
            CHECK(oracle::dist(ts, pa, pb) >= std::ldexp(gamma, ba));
          }
      }
    }
  }
}
