#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bpt/mesh.hpp"

namespace bpt::fixtures {

RawMesh single_triangle();
RawMesh quad();          // one OBJ-style quad, two triangles
RawMesh quad_fan();      // square split into 4 triangles around its center
RawMesh cube();          // 8 vertices, 12 outward-facing triangles
RawMesh hexagon_fan();   // closed fan of 6 triangles around a hub
RawMesh open_fan(int faces);  // planar open fan around a hub, 1..12 faces
RawMesh bowtie();        // two triangles sharing one vertex
RawMesh fin();           // three triangles on one edge (non-manifold edge)
RawMesh icosphere(int level);  // 20 * 4^level faces
RawMesh heightfield(int nx, int ny, std::mt19937_64& rng);
RawMesh random_manifold(std::mt19937_64& rng);

// Quantized meshes built directly on the grid (no normalization).
QuantizedMesh grid_triangle(QuantizedVertex a, QuantizedVertex b, QuantizedVertex c, int bits = 7);
QuantizedMesh grid_hexagon_fan(QuantizedVertex hub, int radius = 4, int bits = 7);

struct NamedMesh {
  std::string name;
  QuantizedMesh mesh;
  bool manifold = true;
};

// Deterministic fixture corpus at 7 bits: hand-built meshes, icospheres
// 80..5120 faces, bowtie and fin. `random_count` fuzzed manifold meshes are
// appended (seeded).
std::vector<NamedMesh> fixture_corpus(int random_count = 0, std::uint64_t seed = 1234);

// Manifold meshes with at least two adjacent faces.
std::vector<NamedMesh> manifold_corpus();

// Writes `mesh` as OBJ under `dir` and returns the path.
std::string write_fixture(const std::string& dir, const std::string& name, const RawMesh& mesh);

}  // namespace bpt::fixtures
