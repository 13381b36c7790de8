#include "bpt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bpt/error.hpp"
#include "bpt/kernels.hpp"
#include "json.hpp"

namespace bpt {

CompressionReport compression_ratio(const TokenSequence& seq, const QuantizedMesh& mesh) {
  if (mesh.faces.empty()) throw GeometryError("compression ratio of a mesh without faces");
  CompressionReport r;
  r.tokens = content_token_count(seq);
  r.faces = mesh.faces.size();
  r.ratio = static_cast<double>(r.tokens) / (9.0 * static_cast<double>(r.faces));
  return r;
}

double avd(std::span<const QuantizedVertex> stream, std::size_t t) {
  if (stream.size() < 2) throw GeometryError("AVD needs at least 2 vertices");
  if (t == 0) throw GeometryError("AVD window must be positive");
  const auto terms = kernels::omp::avd_terms(stream, t);
  double sum = 0.0;
  for (double v : terms) sum += v;
  return sum / static_cast<double>(terms.size());
}

AvdReport avd_report(std::span<const QuantizedVertex> stream, std::span<const std::size_t> windows) {
  AvdReport out;
  for (std::size_t t : windows) out[t] = avd(stream, t);
  return out;
}

namespace {

// 53 random bits -> [0, 1). Unlike std::uniform_real_distribution this is
// identical across standard library implementations.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

void require_points(const PointCloud& p, const PointCloud& q) {
  if (p.points.empty() || q.points.empty()) throw GeometryError("point cloud is empty");
}

}  // namespace

PointCloud sample_surface(const RawMesh& mesh, std::size_t n, std::uint64_t seed) {
  std::vector<double> cumulative;
  cumulative.reserve(mesh.faces.size());
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    total += triangle_area(mesh.positions[f.a], mesh.positions[f.b], mesh.positions[f.c]);
    cumulative.push_back(total);
  }
  if (!(total > 0.0)) throw GeometryError("mesh has zero surface area");

  std::mt19937_64 rng(seed);
  PointCloud cloud;
  cloud.seed = seed;
  cloud.points.reserve(n);
  cloud.source_faces.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = unit_double(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) {
      --it;
      // Step back over trailing zero-area faces.
      while (it != cumulative.begin() && *(it - 1) == *it) --it;
    }
    const auto face = static_cast<std::uint32_t>(it - cumulative.begin());
    const auto& f = mesh.faces[face];
    const double s = std::sqrt(unit_double(rng));
    const double r = unit_double(rng);
    const double wa = 1.0 - s, wb = s * (1.0 - r), wc = s * r;
    const auto& a = mesh.positions[f.a];
    const auto& b = mesh.positions[f.b];
    const auto& c = mesh.positions[f.c];
    cloud.points.push_back({wa * a[0] + wb * b[0] + wc * c[0], wa * a[1] + wb * b[1] + wc * c[1],
                            wa * a[2] + wb * b[2] + wc * c[2]});
    cloud.source_faces.push_back(face);
  }
  return cloud;
}

double chamfer(const PointCloud& p, const PointCloud& q, ChamferNormalization norm) {
  require_points(p, q);
  const auto pq = kernels::omp::nearest_distances(p.points, q.points);
  const auto qp = kernels::omp::nearest_distances(q.points, p.points);
  double spq = 0.0, sqp = 0.0;
  for (double d : pq) spq += d;
  for (double d : qp) sqp += d;
  if (norm == ChamferNormalization::sum) return spq + sqp;
  return spq / static_cast<double>(pq.size()) + sqp / static_cast<double>(qp.size());
}

double hausdorff(const PointCloud& p, const PointCloud& q) {
  require_points(p, q);
  const auto pq = kernels::omp::nearest_distances(p.points, q.points);
  const auto qp = kernels::omp::nearest_distances(q.points, p.points);
  return std::max(*std::max_element(pq.begin(), pq.end()), *std::max_element(qp.begin(), qp.end()));
}

DistanceReport mesh_distance(const RawMesh& a, const RawMesh& b, std::size_t n, std::uint64_t seed,
                             ChamferNormalization norm) {
  const PointCloud pa = sample_surface(a, n, seed);
  const PointCloud pb = sample_surface(b, n, seed);
  return {chamfer(pa, pb, norm), hausdorff(pa, pb), n, seed};
}

std::string to_json(const DistanceReport& r) {
  nlohmann::json j;
  j["cd"] = r.cd;
  j["hd"] = r.hd;
  j["n"] = r.n;
  j["seed"] = r.seed;
  return j.dump();
}

}  // namespace bpt
