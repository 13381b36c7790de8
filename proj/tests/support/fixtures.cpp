#include "fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <utility>

namespace bpt::fixtures {

namespace {

RawMesh make(std::vector<Vec3> p, std::vector<RawFace> f) { return RawMesh{std::move(p), std::move(f)}; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

RawMesh single_triangle() { return make({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}); }

RawMesh quad() { return make({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}}); }

RawMesh quad_fan() {
  return make({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 0}},
              {{4, 0, 1}, {4, 1, 2}, {4, 2, 3}, {4, 3, 0}});
}

RawMesh cube() {
  return make({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},
              {{0, 2, 1}, {0, 3, 2},    // bottom
               {4, 5, 6}, {4, 6, 7},    // top
               {0, 1, 5}, {0, 5, 4},    // front
               {2, 3, 7}, {2, 7, 6},    // back
               {1, 2, 6}, {1, 6, 5},    // right
               {3, 0, 4}, {3, 4, 7}});  // left
}

RawMesh hexagon_fan() {
  std::vector<Vec3> p{{0, 0, 0}};
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    p.push_back({std::cos(a), std::sin(a), 0.0});
  }
  std::vector<RawFace> f;
  for (std::uint32_t k = 0; k < 6; ++k) f.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return make(std::move(p), std::move(f));
}

RawMesh open_fan(int faces) {
  std::vector<Vec3> p{{0, 0, 0}};
  for (int k = 0; k <= faces; ++k) {
    const double a = k * std::numbers::pi / 6.5;
    p.push_back({std::cos(a), std::sin(a), 0.0});
  }
  std::vector<RawFace> f;
  for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(faces); ++k) f.push_back({0, 1 + k, 2 + k});
  return make(std::move(p), std::move(f));
}

RawMesh bowtie() {
  return make({{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}}, {{0, 2, 1}, {0, 3, 4}});
}

RawMesh fin() {
  return make({{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {-1, 0.5, 0}, {-1, -0.5, 0}},
              {{0, 1, 2}, {1, 0, 3}, {1, 0, 4}});
}

RawMesh icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> p{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<RawFace> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto unit = [](Vec3 v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return Vec3{v[0] / n, v[1] / n, v[2] / n};
  };
  for (auto& v : p) v = unit(v);
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      if (auto it = mid.find(key); it != mid.end()) return it->second;
      p.push_back(unit({(p[a][0] + p[b][0]) / 2, (p[a][1] + p[b][1]) / 2, (p[a][2] + p[b][2]) / 2}));
      const auto id = static_cast<std::uint32_t>(p.size() - 1);
      mid[key] = id;
      return id;
    };
    std::vector<RawFace> next;
    next.reserve(f.size() * 4);
    for (const auto& tri : f) {
      const auto ab = midpoint(tri.a, tri.b), bc = midpoint(tri.b, tri.c), ca = midpoint(tri.c, tri.a);
      next.push_back({tri.a, ab, ca});
      next.push_back({tri.b, bc, ab});
      next.push_back({tri.c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  return make(std::move(p), std::move(f));
}

RawMesh heightfield(int nx, int ny, std::mt19937_64& rng) {
  std::vector<Vec3> p;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      p.push_back({i + uniform(rng, -0.3, 0.3), j + uniform(rng, -0.3, 0.3), uniform(rng, 0.0, 2.0)});
    }
  }
  std::vector<RawFace> f;
  auto id = [&](int i, int j) { return static_cast<std::uint32_t>(j * nx + i); };
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const auto a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (rng() & 1) {
        f.push_back({a, b, c});
        f.push_back({a, c, d});
      } else {
        f.push_back({a, b, d});
        f.push_back({b, c, d});
      }
    }
  }
  return make(std::move(p), std::move(f));
}

namespace {

RawMesh noisy_icosphere(std::mt19937_64& rng) {
  RawMesh m = icosphere(uniform_int(rng, 0, 2));
  for (auto& v : m.positions) {
    const double s = uniform(rng, 0.8, 1.2);
    v = {v[0] * s, v[1] * s, v[2] * s};
  }
  return m;
}

// Open cylinder band: ring of n vertices stacked h times.
RawMesh cylinder(std::mt19937_64& rng) {
  const int n = uniform_int(rng, 3, 16), h = uniform_int(rng, 2, 6);
  std::vector<Vec3> p;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < n; ++i) {
      const double a = 2 * std::numbers::pi * (i + uniform(rng, -0.2, 0.2)) / n;
      const double r = uniform(rng, 0.7, 1.3);
      p.push_back({r * std::cos(a), r * std::sin(a), j + uniform(rng, -0.2, 0.2)});
    }
  }
  std::vector<RawFace> f;
  auto id = [&](int i, int j) { return static_cast<std::uint32_t>(j * n + (i % n)); };
  for (int j = 0; j + 1 < h; ++j) {
    for (int i = 0; i < n; ++i) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return make(std::move(p), std::move(f));
}

}  // namespace

RawMesh random_manifold(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0:
      return heightfield(uniform_int(rng, 2, 12), uniform_int(rng, 2, 12), rng);
    case 1:
      return noisy_icosphere(rng);
    default:
      return cylinder(rng);
  }
}

QuantizedMesh grid_triangle(QuantizedVertex a, QuantizedVertex b, QuantizedVertex c, int bits) {
  return canonicalize({a, b, c}, {{0, 1, 2}}, bits).first;
}

QuantizedMesh grid_hexagon_fan(QuantizedVertex hub, int radius, int bits) {
  std::vector<QuantizedVertex> v{hub};
  const int r = radius, h = radius / 2;
  const int dx[6] = {r, h, -h, -r, -h, h};
  const int dy[6] = {0, r, r, 0, -r, -r};
  for (int k = 0; k < 6; ++k) v.push_back({hub.x + dx[k], hub.y + dy[k], hub.z});
  std::vector<Face> f;
  for (std::uint32_t k = 0; k < 6; ++k) f.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return canonicalize(v, f, bits).first;
}

std::vector<NamedMesh> manifold_corpus() {
  std::vector<NamedMesh> out;
  out.push_back({"quad_fan", prepare_mesh(quad_fan()), true});
  out.push_back({"cube", prepare_mesh(cube()), true});
  out.push_back({"hexagon_fan", prepare_mesh(hexagon_fan()), true});
  for (int level = 1; level <= 4; ++level) {
    out.push_back({"icosphere_" + std::to_string(20 << (2 * level)), prepare_mesh(icosphere(level)), true});
  }
  return out;
}

std::vector<NamedMesh> fixture_corpus(int random_count, std::uint64_t seed) {
  std::vector<NamedMesh> out;
  out.push_back({"triangle", prepare_mesh(single_triangle()), true});
  out.push_back({"quad", prepare_mesh(quad()), true});
  for (auto& m : manifold_corpus()) out.push_back(std::move(m));
  out.push_back({"bowtie", prepare_mesh(bowtie()), false});
  out.push_back({"fin", prepare_mesh(fin()), false});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    out.push_back({"random_" + std::to_string(i), prepare_mesh(random_manifold(rng)), false});
  }
  return out;
}

std::string write_fixture(const std::string& dir, const std::string& name, const RawMesh& mesh) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / (name + ".obj")).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  write_obj(out, mesh);
  return path;
}

}  // namespace bpt::fixtures
