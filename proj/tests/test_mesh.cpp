#include <algorithm>
#include <numeric>
#include <random>

#include "bpt/error.hpp"
#include "bpt/mesh.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bpt;

namespace {

// Independent check of the canonical invariants.
void check_canonical(const QuantizedMesh& m) {
  const std::int32_t top = (1 << m.bits) - 1;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const auto& v = m.vertices[i];
    CHECK((v.x >= 0 && v.y >= 0 && v.z >= 0 && v.x <= top && v.y <= top && v.z <= top));
    if (i > 0) CHECK(zyx_less(m.vertices[i - 1], v));
  }
  std::vector<char> used(m.vertices.size(), 0);
  for (std::size_t i = 0; i < m.faces.size(); ++i) {
    const auto& f = m.faces[i];
    CHECK(f.a < f.b);
    CHECK(f.a < f.c);
    CHECK(f.b != f.c);
    used[f.a] = used[f.b] = used[f.c] = 1;
    if (i > 0) {
      const auto& g = m.faces[i - 1];
      const auto kg = std::make_tuple(g.a, std::min(g.b, g.c), std::max(g.b, g.c), g.b);
      const auto kf = std::make_tuple(f.a, std::min(f.b, f.c), std::max(f.b, f.c), f.b);
      CHECK(kg < kf);
    }
  }
  CHECK(std::all_of(used.begin(), used.end(), [](char c) { return c != 0; }));
}

// Oriented faces as coordinate triples starting from the lowest vertex.
std::vector<std::array<QuantizedVertex, 3>> oriented_faces(const std::vector<QuantizedVertex>& v,
                                                          const std::vector<Face>& faces) {
  std::vector<std::array<QuantizedVertex, 3>> out;
  for (const auto& f : faces) {
    std::array<QuantizedVertex, 3> t{v[f.a], v[f.b], v[f.c]};
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    while (zyx_less(t[1], t[0]) || zyx_less(t[2], t[0])) std::rotate(t.begin(), t.begin() + 1, t.end());
    out.push_back(t);
  }
  auto less = [](const auto& l, const auto& r) {
    for (int k = 0; k < 3; ++k) {
      if (zyx_less(l[k], r[k])) return true;
      if (zyx_less(r[k], l[k])) return false;
    }
    return false;
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("load_obj parses a minimal triangle") {
  const RawMesh m = load_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  CHECK(m.positions.size() == 3);
  REQUIRE(m.faces.size() == 1);
  CHECK(m.faces[0] == RawFace{0, 1, 2});
}

TEST_CASE("load_obj fan-triangulates polygons from the first vertex") {
  const RawMesh m = load_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  REQUIRE(m.faces.size() == 2);
  CHECK(m.faces[0] == RawFace{0, 1, 2});
  CHECK(m.faces[1] == RawFace{0, 2, 3});
}

TEST_CASE("load_obj accepts slash syntax, negative indices, comments and CRLF") {
  const RawMesh m = load_obj(
      "# header\r\nvn 0 0 1\r\nv 0 0 0\r\nv 1 0 0 # trailing\r\nv 0 1 0\r\nvt 0 0\r\n"
      "f 1/1/1 2//1 3/1\r\nf -3 -2 -1\r\no ignored\r\n");
  REQUIRE(m.faces.size() == 2);
  CHECK(m.faces[0] == RawFace{0, 1, 2});
  CHECK(m.faces[1] == RawFace{0, 1, 2});
}

TEST_CASE("load_obj errors") {
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(load_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n"), ParseError);
  }
  SUBCASE("negative index before the first vertex") {
    CHECK_THROWS_AS(load_obj("v 0 0 0\nf -1 -2 -3\n"), ParseError);
  }
  SUBCASE("malformed number reports its line") {
    try {
      load_obj("v 0 0 0\nv 1 x 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("short records") {
    CHECK_THROWS_AS(load_obj("v 0 0\n"), ParseError);
    CHECK_THROWS_AS(load_obj("v 0 0 0\nv 1 0 0\nf 1 2\n"), ParseError);
  }
  SUBCASE("no faces") { CHECK_THROWS_AS(load_obj("v 0 0 0\n"), ParseError); }
}

TEST_CASE("OBJ writer output reloads to identical values") {
  const RawMesh m = fixtures::icosphere(1);
  const std::string text = to_obj(m);
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);
  const RawMesh back = load_obj(text);
  CHECK(back.positions == m.positions);
  CHECK(back.faces == m.faces);
}

TEST_CASE("normalize") {
  SUBCASE("unit cube stays centered with the epsilon shrink") {
    const RawMesh n = normalize(fixtures::cube());
    for (const auto& p : n.positions) {
      for (double c : p) {
        const bool at_low = std::abs(c - kNormalizeEpsilon / 2) < 1e-15;
        const bool at_high = std::abs(c - (1 - kNormalizeEpsilon / 2)) < 1e-15;
        CHECK((at_low || at_high));
      }
    }
  }
  SUBCASE("box [0,2]x[0,1]x[0,1] keeps its aspect ratio") {
    const RawMesh box{{{0, 0, 0}, {2, 1, 1}}, {{0, 1, 1}}};
    const RawMesh n = normalize(box);
    const double s = (1 - kNormalizeEpsilon) / 2.0;
    CHECK(n.positions[0][0] == doctest::Approx(0.5 - 2 * s / 2).epsilon(1e-15));
    CHECK(n.positions[1][0] == doctest::Approx(0.5 + 2 * s / 2).epsilon(1e-15));
    CHECK(n.positions[0][1] == doctest::Approx(0.5 - s / 2).epsilon(1e-15));
    CHECK(n.positions[1][2] == doctest::Approx(0.5 + s / 2).epsilon(1e-15));
    CHECK(n.positions[1][0] - n.positions[0][0] == doctest::Approx(1 - kNormalizeEpsilon));
    CHECK(n.positions[1][1] - n.positions[0][1] == doctest::Approx((1 - kNormalizeEpsilon) / 2));
  }
  SUBCASE("point-degenerate mesh is rejected") {
    const RawMesh pt{{{3, 4, 5}, {3, 4, 5}, {3, 4, 5}}, {{0, 1, 2}}};
    CHECK_THROWS_AS(normalize(pt), GeometryError);
  }
  SUBCASE("all coordinates land in [0,1)") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
      const RawMesh n = normalize(fixtures::random_manifold(rng));
      for (const auto& p : n.positions) {
        for (double c : p) CHECK((c >= 0.0 && c < 1.0));
      }
    }
  }
}

TEST_CASE("quantize maps to floor(p * 2^bits)") {
  auto one = [](Vec3 p) {
    // Anchor two extra vertices so the face is not degenerate.
    const RawMesh m{{p, {0.25, 0.75, 0.1}, {0.75, 0.1, 0.9}}, {{0, 1, 2}}};
    const QuantizedMesh q = quantize(m, 7);
    const QuantizedVertex target{static_cast<std::int32_t>(std::floor(p[0] * 128)),
                                 static_cast<std::int32_t>(std::floor(p[1] * 128)),
                                 static_cast<std::int32_t>(std::floor(p[2] * 128))};
    return std::find(q.vertices.begin(), q.vertices.end(), target) != q.vertices.end();
  };
  CHECK(one({0, 0, 0}));
  CHECK(one({0.5, 0.5, 0.5}));
  CHECK(one({0.999999, 0, 0}));

  const RawMesh m{{{0.5, 0.5, 0.5}, {0.999999, 0, 0}, {0, 0, 0}}, {{0, 1, 2}}};
  const QuantizedMesh q = quantize(m, 7);
  CHECK(q.vertices == std::vector<QuantizedVertex>{{0, 0, 0}, {127, 0, 0}, {64, 64, 64}});

  CHECK_THROWS_AS(quantize(RawMesh{{{1.0, 0, 0}, {0, 0, 0}, {0, 1e-3, 0}}, {{0, 1, 2}}}, 7), GeometryError);
  CHECK_THROWS_AS(quantize(RawMesh{{{-1e-9, 0, 0}, {0, 0, 0}, {0, 1e-3, 0}}, {{0, 1, 2}}}, 7), GeometryError);
  CHECK_THROWS_AS(quantize(normalize(fixtures::cube()), 0), ConfigError);
  CHECK_THROWS_AS(quantize(normalize(fixtures::cube()), 11), ConfigError);
}

TEST_CASE("canonicalize") {
  SUBCASE("already canonical triangle is a fixed point") {
    const std::vector<QuantizedVertex> v{{0, 0, 0}, {5, 0, 0}, {0, 5, 0}};
    const auto [m, rep] = canonicalize(v, {{0, 1, 2}}, 7);
    CHECK(m.vertices == v);
    CHECK(m.faces == std::vector<Face>{{0, 1, 2}});
    CHECK(rep == CanonicalizationReport{});
  }
  SUBCASE("face collapsing to two points is dropped") {
    const std::vector<QuantizedVertex> v{{0, 0, 0}, {5, 0, 0}, {0, 5, 0}, {5, 0, 0}};
    const auto [m, rep] = canonicalize(v, {{0, 1, 2}, {0, 1, 3}}, 7);
    CHECK(m.faces.size() == 1);
    CHECK(rep.merged_vertices == 1);
    CHECK(rep.dropped_degenerate_faces == 1);
  }
  SUBCASE("exact oriented duplicates are dropped, opposite twins kept") {
    const std::vector<QuantizedVertex> v{{0, 0, 0}, {5, 0, 0}, {0, 5, 0}};
    const auto [m, rep] = canonicalize(v, {{0, 1, 2}, {1, 2, 0}, {0, 2, 1}}, 7);
    CHECK(m.faces == std::vector<Face>{{0, 1, 2}, {0, 2, 1}});
    CHECK(rep.dropped_duplicate_faces == 1);
  }
  SUBCASE("rotation keeps winding") {
    const std::vector<QuantizedVertex> v{{9, 9, 9}, {0, 0, 0}, {3, 3, 3}};
    const auto [m, rep] = canonicalize(v, {{0, 1, 2}}, 7);
    // (9,1-> rank 2), (0 -> rank 0), (3 -> rank 1): input cycle 2,0,1 -> 0,1,2
    CHECK(m.faces == std::vector<Face>{{0, 1, 2}});
  }
  SUBCASE("everything dropped is an error") {
    const std::vector<QuantizedVertex> v{{1, 1, 1}, {1, 1, 1}, {2, 2, 2}};
    CHECK_THROWS_AS(canonicalize(v, {{0, 1, 2}}, 7), GeometryError);
  }
  SUBCASE("unreferenced vertices are removed") {
    const std::vector<QuantizedVertex> v{{0, 0, 0}, {5, 0, 0}, {0, 5, 0}, {50, 50, 50}};
    const auto [m, rep] = canonicalize(v, {{0, 1, 2}}, 7);
    CHECK(m.vertices.size() == 3);
    CHECK(rep.dropped_unreferenced_vertices == 1);
  }
  SUBCASE("cube is permutation invariant") {
    const RawMesh cube = normalize(fixtures::cube());
    const QuantizedMesh ref = quantize(cube, 7);
    CHECK(ref.vertices.size() == 8);
    CHECK(ref.faces.size() == 12);
    check_canonical(ref);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 16; ++trial) {
      RawMesh p = cube;
      std::vector<std::uint32_t> perm(p.positions.size());
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < perm.size(); ++i) p.positions[perm[i]] = cube.positions[i];
      for (auto& f : p.faces) {
        f = {perm[f.a], perm[f.b], perm[f.c]};
        for (std::uint64_t r = rng() % 3; r > 0; --r) f = {f.b, f.c, f.a};
      }
      std::shuffle(p.faces.begin(), p.faces.end(), rng);
      CHECK(quantize(p, 7) == ref);
    }
  }
}

TEST_CASE("canonicalize properties on random meshes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int bits = 3 + static_cast<int>(rng() % 6);
    const RawMesh raw = normalize(fixtures::random_manifold(rng));
    const QuantizedMesh m = quantize(raw, bits);
    check_canonical(m);

    // Idempotence.
    const auto again = canonicalize(m.vertices, m.faces, bits);
    CHECK(again.first == m);
    CHECK(again.second == CanonicalizationReport{});

    // Winding preservation: the surviving oriented faces are exactly the
    // non-degenerate input faces, as coordinate cycles.
    std::vector<QuantizedVertex> qv;
    for (const auto& p : raw.positions) {
      qv.push_back({static_cast<std::int32_t>(std::floor(p[0] * (1 << bits))),
                    static_cast<std::int32_t>(std::floor(p[1] * (1 << bits))),
                    static_cast<std::int32_t>(std::floor(p[2] * (1 << bits)))});
    }
    std::vector<Face> rf;
    for (const auto& f : raw.faces) rf.push_back({f.a, f.b, f.c});
    CHECK(oriented_faces(qv, rf) == oriented_faces(m.vertices, m.faces));

    // Permutation and rotation invariance.
    RawMesh p = raw;
    std::shuffle(p.faces.begin(), p.faces.end(), rng);
    for (auto& f : p.faces) {
      if (rng() & 1) f = {f.b, f.c, f.a};
    }
    CHECK(quantize(p, bits) == m);
  }
}

TEST_CASE("dequantize uses cell centers") {
  const QuantizedMesh m = fixtures::grid_triangle({0, 0, 0}, {127, 127, 127}, {0, 127, 0});
  const RawMesh d = dequantize(m);
  CHECK(d.positions[0] == Vec3{0.00390625, 0.00390625, 0.00390625});
  CHECK(d.positions.back() == Vec3{0.99609375, 0.99609375, 0.99609375});
  CHECK(quantize(d, 7) == m);
}

TEST_CASE("quantize(normalize(dequantize(M))) is the identity on quantized meshes") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const QuantizedMesh m = prepare_mesh(fixtures::random_manifold(rng), 7);
    CHECK(quantize(normalize(dequantize(m)), 7) == m);
    ++checked;
  }
  for (int level = 0; level <= 3; ++level) {
    const QuantizedMesh m = prepare_mesh(fixtures::icosphere(level), 7);
    CHECK(quantize(normalize(dequantize(m)), 7) == m);
  }
  CHECK(checked == 80);
}
