#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bpt/mesh.hpp"
#include "bpt/tokenizer.hpp"

namespace bpt {

struct CompressionReport {
  std::size_t tokens = 0;  // content tokens, specials excluded
  std::size_t faces = 0;
  double ratio = 0.0;      // tokens / (9 * faces)
};

CompressionReport compression_ratio(const TokenSequence& seq, const QuantizedMesh& mesh);

// AVD@t: mean over positions i >= 1 of the mean Euclidean distance (grid
// units) between stream[i] and its previous min(t, i) entries.
double avd(std::span<const QuantizedVertex> stream, std::size_t t);

using AvdReport = std::map<std::size_t, double>;
AvdReport avd_report(std::span<const QuantizedVertex> stream, std::span<const std::size_t> windows);

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<std::uint32_t> source_faces;  // triangle each point was drawn from
  std::uint64_t seed = 0;
};

// Area-weighted triangle choice, uniform barycentric inside the triangle.
// Deterministic for a given seed on every platform.
PointCloud sample_surface(const RawMesh& mesh, std::size_t n = 1024, std::uint64_t seed = 0);

enum class ChamferNormalization { mean, sum };

// Symmetric Chamfer distance. `mean` divides each directed sum by its cloud
// size; `sum` keeps the raw sums.
double chamfer(const PointCloud& p, const PointCloud& q,
               ChamferNormalization norm = ChamferNormalization::mean);
double hausdorff(const PointCloud& p, const PointCloud& q);

struct DistanceReport {
  double cd = 0.0;
  double hd = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Samples both meshes with the same n and seed, then measures CD and HD.
DistanceReport mesh_distance(const RawMesh& a, const RawMesh& b, std::size_t n = 1024,
                             std::uint64_t seed = 0,
                             ChamferNormalization norm = ChamferNormalization::mean);

std::string to_json(const DistanceReport& r);

}  // namespace bpt
