#include "nnc/generators.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "nnc/dataio.hpp"

namespace nnc {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::uint32_t kRed = 0;   // fan classes occupy ids 1..8
constexpr std::uint32_t kBlue = 9;
constexpr std::uint32_t kWhite = 10;

std::vector<std::string> adversarial_class_names() {
  std::vector<std::string> names{"red"};
  for (int j = 1; j <= 8; ++j) names.push_back("y" + std::to_string(j));
  names.push_back("blue");
  names.push_back("white");
  return names;
}

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace

TrainingSet gen_adversarial(const AdversarialParams& params,
                            AdversarialManifest* manifest) {
  const int t = params.t;
  if (t < 4 || t > 12) {
    std::ostringstream msg;
    msg << "adversarial scale t=" << t << " outside supported range [4, 12]";
    throw invalid_input_error(msg.str());
  }
  if (params.far_mass_factor < 1) {
    throw invalid_input_error("far_mass_factor must be at least 1");
  }

  const double xi = std::ldexp(1.0, -t);
  std::vector<Vec3> pts;
  std::vector<std::uint32_t> labs;
  AdversarialManifest mf;
  mf.t = t;
  mf.xi = xi;

  auto emit = [&](double x, double y, double z, std::uint32_t lab) {
    pts.push_back({x, y, z});
    labs.push_back(lab);
  };
  std::size_t mark = 0;
  auto close_arrangement = [&](std::string name) {
    mf.arrangements.emplace_back(std::move(name), pts.size() - mark);
    mark = pts.size();
  };

  // Base fan: a red point at the origin ringed by eight singleton classes.
  emit(0.0, 0.0, 0.0, kRed);
  for (int j = 1; j <= 8; ++j) {
    const double th = j * kPi / 4.0;
    emit(std::cos(th), std::sin(th), 0.0, static_cast<std::uint32_t>(j));
  }
  close_arrangement("B");

  // Doubling arrangements: ring resolution doubles from one to the next, so a
  // fully selected layer hands a twice-as-dense layer to the next iteration.
  // The midpoint is emitted before the rings: it must win the equal-distance
  // tie against the upper ring for the chain of centers to stay in step with
  // the ring wave.
  for (int i = 1; i <= t - 3; ++i) {
    const int cnt = 1 << (2 + i);
    const double zlo = 4.0 * i;
    const double zhi = 4.0 * i + 2.0;
    const double sector = static_cast<double>(1 << (1 + i));
    emit(0.0, 0.0, zlo, kBlue);
    emit(0.0, 0.0, zhi, kRed);
    emit(0.0, 0.0, 4.0 * i + 1.0, kWhite);
    for (int j = 1; j <= cnt; ++j) {
      const double th = j * kPi / sector;
      emit(std::cos(th), std::sin(th), zlo, kRed);
    }
    for (int j = 1; j <= cnt; ++j) {
      const double th = j * kPi / sector;
      emit(std::cos(th), std::sin(th), zhi, kBlue);
    }
    for (int j = 1; j <= cnt; ++j) {
      const double th = (j + 0.5) * kPi / sector - xi * xi;
      emit(std::cos(th), std::sin(th), zhi, kWhite);
    }
    close_arrangement("M" + std::to_string(i));
  }

  // Repetitive arrangements: full-resolution ring pairs, red below blue.
  const int inv = 1 << t;
  for (int i = t - 2; i <= inv; ++i) {
    const double zlo = 4.0 * i;
    const double zhi = 4.0 * i + 2.0;
    emit(0.0, 0.0, zlo, kBlue);
    for (int j = 1; j <= inv; ++j) {
      const double th = 2.0 * kPi * j * xi;
      emit(std::cos(th), std::sin(th), zlo, kRed);
    }
    emit(0.0, 0.0, zhi, kRed);
    for (int j = 1; j <= inv; ++j) {
      const double th = 2.0 * kPi * j * xi;
      emit(std::cos(th), std::sin(th), zhi, kBlue);
    }
    close_arrangement("R" + std::to_string(i));
  }

  const double maxz = 4.0 * inv + 2.0;
  const double far_d = params.far_scale > 0 ? params.far_scale : 100.0 * (maxz + 1.0);
  const double rho = xi * xi / 8.0;
  mf.far_scale = far_d;
  const std::size_t backbone = pts.size();

  // Far anchor clusters for blue and white. The anchor must be its class
  // centroid, so the surrounding ring lies in the plane perpendicular to the
  // direction toward the class mean, pushed rho behind the anchor: every ring
  // point is then farther from the mean than the anchor by ~2*rho*|mean - A|,
  // far above accumulated rounding.
  auto far_cluster = [&](const Vec3& anchor, std::uint32_t cls) {
    Vec3 sum{};
    std::size_t members = 0;
    for (std::size_t p = 0; p < backbone; ++p) {
      if (labs[p] == cls) {
        sum = sum + pts[p];
        ++members;
      }
    }
    const std::size_t ring = params.far_mass_factor * members + 1;
    const double total = static_cast<double>(members + 1 + ring);
    const Vec3 mu = (1.0 / total) * (sum + static_cast<double>(ring + 1) * anchor);
    const Vec3 w = mu - anchor;
    Vec3 wn = (1.0 / norm(w)) * w;
    const std::array<double, 3> mags{std::fabs(wn.x), std::fabs(wn.y), std::fabs(wn.z)};
    std::size_t least = 0;
    for (std::size_t a = 1; a < 3; ++a) {
      if (mags[a] < mags[least]) least = a;
    }
    Vec3 ax{least == 0 ? 1.0 : 0.0, least == 1 ? 1.0 : 0.0, least == 2 ? 1.0 : 0.0};
    Vec3 e1 = ax - dot(ax, wn) * wn;
    e1 = (1.0 / norm(e1)) * e1;
    const Vec3 e2 = cross(wn, e1);
    emit(anchor.x, anchor.y, anchor.z, cls);
    const Vec3 center = anchor - rho * wn;
    for (std::size_t k = 0; k < ring; ++k) {
      const double ph = 2.0 * kPi * k / static_cast<double>(ring);
      const Vec3 p = center + rho * (std::cos(ph) * e1) + rho * (std::sin(ph) * e2);
      emit(p.x, p.y, p.z, cls);
    }
  };
  far_cluster({far_d, 0.0, 0.0}, kBlue);
  far_cluster({1.1 * far_d, 0.0, 0.0}, kWhite);

  // Red counterweight: drags the red mean far enough down that the origin
  // point stays the red centroid. All z values are integers, so the sum and
  // the floor divide are exact.
  const double cw_z = 10.0 * maxz;
  double sum_red_z = 0;
  for (std::size_t p = 0; p < backbone; ++p) {
    if (labs[p] == kRed) sum_red_z += pts[p].z;
  }
  const std::size_t cw_count = static_cast<std::size_t>(std::floor(sum_red_z / cw_z));
  for (std::size_t k = 0; k < cw_count; ++k) {
    const double ph = 2.0 * kPi * k / static_cast<double>(cw_count);
    emit(rho * std::cos(ph), rho * std::sin(ph), -cw_z, kRed);
  }
  close_arrangement("F");
  mf.counterweight_z = -cw_z;
  mf.counterweight_count = cw_count;
  mf.n = pts.size();

  TrainingSet ts(3, adversarial_class_names());
  ts.reserve(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const std::array<double, 3> row{pts[p].x, pts[p].y, pts[p].z};
    ts.add(row, labs[p]);
  }
  if (manifest != nullptr) *manifest = mf;
  return ts;
}

void write_manifest(const AdversarialManifest& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open manifest file for writing: " + path);
  out << "{\n";
  out << "  \"t\": " << m.t << ",\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", m.xi);
  out << "  \"xi\": " << buf << ",\n";
  std::snprintf(buf, sizeof buf, "%.17g", m.far_scale);
  out << "  \"far_scale\": " << buf << ",\n";
  std::snprintf(buf, sizeof buf, "%.17g", m.counterweight_z);
  out << "  \"counterweight_z\": " << buf << ",\n";
  out << "  \"counterweight_count\": " << m.counterweight_count << ",\n";
  out << "  \"n\": " << m.n << ",\n";
  out << "  \"arrangements\": [";
  for (std::size_t i = 0; i < m.arrangements.size(); ++i) {
    if (i) out << ", ";
    out << "{\"name\": \"" << m.arrangements[i].first << "\", \"count\": "
        << m.arrangements[i].second << "}";
  }
  out << "]\n}\n";
  if (!out.good()) throw io_error("write failed for manifest file: " + path);
}

namespace {

// mt19937_64 raw output mapped explicitly so generated sets are identical on
// every platform; the standard distributions are implementation-defined.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TrainingSet gen_voronoi(const VoronoiParams& params, std::uint64_t* used_seed) {
  if (params.n == 0 || params.d == 0) {
    throw invalid_input_error("voronoi generator needs n > 0 and d > 0");
  }
  if (params.classes < 2) {
    throw invalid_input_error("voronoi generator needs at least 2 classes");
  }
  if (params.sites < params.classes) {
    std::ostringstream msg;
    msg << "voronoi generator needs sites >= classes (got " << params.sites
        << " < " << params.classes << ")";
    throw invalid_input_error(msg.str());
  }
  if (params.n < params.classes) {
    throw invalid_input_error("voronoi generator needs n >= classes");
  }

  std::vector<std::string> names;
  names.reserve(params.classes);
  for (std::size_t c = 0; c < params.classes; ++c) {
    names.push_back("c" + std::to_string(c));
  }

  for (std::uint64_t seed = params.seed;; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> sites(params.sites * params.d);
    for (double& v : sites) v = unit_double(rng);
    TrainingSet ts(params.d, names);
    ts.reserve(params.n);
    std::vector<double> row(params.d);
    for (std::size_t p = 0; p < params.n; ++p) {
      for (double& v : row) v = unit_double(rng);
      std::size_t best = 0;
      double best_d2 = 0;
      for (std::size_t s = 0; s < params.sites; ++s) {
        double d2 = 0;
        for (std::size_t a = 0; a < params.d; ++a) {
          const double diff = row[a] - sites[s * params.d + a];
          d2 += diff * diff;
        }
        if (s == 0 || d2 < best_d2) {
          best = s;
          best_d2 = d2;
        }
      }
      ts.add(row, best % params.classes);
    }

    if (validate(ts).ok()) {
      if (used_seed != nullptr) *used_seed = seed;
      return ts;
    }
  }
}

}  // namespace nnc
