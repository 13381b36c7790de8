#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bpt {

using Vec3 = std::array<double, 3>;

struct RawFace {
  std::uint32_t a = 0, b = 0, c = 0;
  friend bool operator==(const RawFace&, const RawFace&) = default;
};

// Real-valued triangle soup as read from disk.
struct RawMesh {
  std::vector<Vec3> positions;
  std::vector<RawFace> faces;
};

struct QuantizedVertex {
  std::int32_t x = 0, y = 0, z = 0;
  friend bool operator==(const QuantizedVertex&, const QuantizedVertex&) = default;
};

// Strict z-y-x ordering used for vertex sorting.
inline bool zyx_less(const QuantizedVertex& l, const QuantizedVertex& r) {
  if (l.z != r.z) return l.z < r.z;
  if (l.y != r.y) return l.y < r.y;
  return l.x < r.x;
}

struct Face {
  std::uint32_t a = 0, b = 0, c = 0;
  friend bool operator==(const Face&, const Face&) = default;
};

// Canonical integer mesh. Vertices are unique and sorted by (z, y, x), so a
// vertex index is also its sort rank. Each face starts at its lowest vertex
// and faces are ordered by (a, min(b,c), max(b,c), b).
struct QuantizedMesh {
  std::vector<QuantizedVertex> vertices;
  std::vector<Face> faces;
  int bits = 7;

  friend bool operator==(const QuantizedMesh&, const QuantizedMesh&) = default;
};

struct CanonicalizationReport {
  std::size_t merged_vertices = 0;
  std::size_t dropped_degenerate_faces = 0;
  std::size_t dropped_duplicate_faces = 0;
  std::size_t dropped_unreferenced_vertices = 0;

  friend bool operator==(const CanonicalizationReport&, const CanonicalizationReport&) = default;
};

inline constexpr int kMinBits = 1;
inline constexpr int kMaxBits = 10;
inline constexpr double kNormalizeEpsilon = 1.0 / (1 << 20);

// OBJ text -> RawMesh. n-gons are fan-triangulated from their first vertex.
RawMesh load_obj(std::string_view text);
RawMesh load_obj_file(const std::string& path);

void write_obj(std::ostream& out, const RawMesh& mesh);
std::string to_obj(const RawMesh& mesh);

// Centers the bounding box at 0.5^3 and scales its longest side to 1 - eps.
RawMesh normalize(const RawMesh& mesh);

// floor(p * 2^bits) clamped to the grid, followed by canonicalize().
QuantizedMesh quantize(const RawMesh& mesh, int bits = 7,
                       CanonicalizationReport* report = nullptr);

std::pair<QuantizedMesh, CanonicalizationReport> canonicalize(
    const std::vector<QuantizedVertex>& vertices, const std::vector<Face>& faces, int bits);

// Cell-center reconstruction: (q + 0.5) / 2^bits.
RawMesh dequantize(const QuantizedMesh& mesh);

// load -> normalize -> quantize, the path every corpus tool uses.
QuantizedMesh prepare_mesh(const RawMesh& raw, int bits = 7);

}  // namespace bpt
