#include "bpt/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "bpt/error.hpp"

namespace bpt {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("invalid number '" + std::string(tok) + "'", line);
  }
  return value;
}

long long parse_index(std::string_view tok, std::size_t line) {
  // Only the position index of "v/vt/vn" is used.
  const auto slash = tok.find('/');
  const std::string_view head = tok.substr(0, slash);
  long long value = 0;
  const char* first = head.data();
  const char* last = head.data() + head.size();
  if (!head.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (head.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("invalid face index '" + std::string(tok) + "'", line);
  }
  if (value == 0) throw ParseError("face index 0 is not valid in OBJ", line);
  return value;
}

}  // namespace

RawMesh load_obj(std::string_view text) {
  RawMesh mesh;
  struct PendingFace {
    std::array<long long, 3> idx;
    std::size_t line;
  };
  std::vector<PendingFace> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto toks = split_ws(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (toks[0] == "v") {
      if (toks.size() < 4) throw ParseError("vertex record needs 3 coordinates", line_no);
      mesh.positions.push_back({parse_double(toks[1], line_no), parse_double(toks[2], line_no),
                                parse_double(toks[3], line_no)});
    } else if (toks[0] == "f") {
      if (toks.size() < 4) throw ParseError("face record needs at least 3 indices", line_no);
      std::vector<long long> poly;
      poly.reserve(toks.size() - 1);
      const auto count = static_cast<long long>(mesh.positions.size());
      for (std::size_t k = 1; k < toks.size(); ++k) {
        long long idx = parse_index(toks[k], line_no);
        // Negative indices are relative to the vertices defined so far.
        idx = idx < 0 ? count + idx : idx - 1;
        if (idx < 0) throw ParseError("face index out of range", line_no);
        poly.push_back(idx);
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        pending.push_back({{poly[0], poly[k], poly[k + 1]}, line_no});
      }
    }
    if (eol == text.size()) break;
  }

  const auto count = static_cast<long long>(mesh.positions.size());
  mesh.faces.reserve(pending.size());
  for (const auto& f : pending) {
    for (long long i : f.idx) {
      if (i >= count) throw ParseError("face index out of range", f.line);
    }
    mesh.faces.push_back({static_cast<std::uint32_t>(f.idx[0]), static_cast<std::uint32_t>(f.idx[1]),
                          static_cast<std::uint32_t>(f.idx[2])});
  }
  if (mesh.faces.empty()) throw ParseError("mesh has no faces");
  return mesh;
}

RawMesh load_obj_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_obj(buf.str());
}

void write_obj(std::ostream& out, const RawMesh& mesh) {
  char buf[64];
  auto put = [&](double v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, end - buf);
  };
  for (const auto& p : mesh.positions) {
    out << "v ";
    put(p[0]);
    out << ' ';
    put(p[1]);
    out << ' ';
    put(p[2]);
    out << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f.a + 1 << ' ' << f.b + 1 << ' ' << f.c + 1 << '\n';
  }
}

std::string to_obj(const RawMesh& mesh) {
  std::ostringstream out;
  write_obj(out, mesh);
  return out.str();
}

RawMesh normalize(const RawMesh& mesh) {
  if (mesh.positions.empty()) throw GeometryError("cannot normalize a mesh without vertices");
  Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi{-lo[0], -lo[1], -lo[2]};
  for (const auto& p : mesh.positions) {
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(p[k])) throw GeometryError("non-finite vertex coordinate");
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  const double extent = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
  if (!(extent > 0.0)) throw GeometryError("bounding box has zero extent");

  const double scale = (1.0 - kNormalizeEpsilon) / extent;
  RawMesh out = mesh;
  for (auto& p : out.positions) {
    for (int k = 0; k < 3; ++k) {
      const double center = 0.5 * (lo[k] + hi[k]);
      p[k] = 0.5 + (p[k] - center) * scale;
    }
  }
  return out;
}

QuantizedMesh quantize(const RawMesh& mesh, int bits, CanonicalizationReport* report) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw ConfigError("bits must be in [" + std::to_string(kMinBits) + ", " +
                      std::to_string(kMaxBits) + "]");
  }
  const double res = static_cast<double>(1 << bits);
  const std::int32_t top = (1 << bits) - 1;

  std::vector<QuantizedVertex> verts;
  verts.reserve(mesh.positions.size());
  for (const auto& p : mesh.positions) {
    std::array<std::int32_t, 3> q{};
    for (int k = 0; k < 3; ++k) {
      if (!(p[k] >= 0.0 && p[k] < 1.0)) {
        throw GeometryError("coordinate outside [0,1); normalize the mesh first");
      }
      q[k] = std::clamp(static_cast<std::int32_t>(std::floor(p[k] * res)), 0, top);
    }
    verts.push_back({q[0], q[1], q[2]});
  }
  std::vector<Face> faces;
  faces.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) faces.push_back({f.a, f.b, f.c});

  auto [qm, rep] = canonicalize(verts, faces, bits);
  if (report) *report = rep;
  return std::move(qm);
}

std::pair<QuantizedMesh, CanonicalizationReport> canonicalize(
    const std::vector<QuantizedVertex>& vertices, const std::vector<Face>& faces, int bits) {
  if (bits < kMinBits || bits > kMaxBits) throw ConfigError("bits out of range");
  const std::int32_t top = (1 << bits) - 1;
  for (const auto& v : vertices) {
    if (v.x < 0 || v.y < 0 || v.z < 0 || v.x > top || v.y > top || v.z > top) {
      throw GeometryError("quantized vertex outside the grid");
    }
  }
  const auto n = static_cast<std::uint32_t>(vertices.size());
  for (const auto& f : faces) {
    if (f.a >= n || f.b >= n || f.c >= n) throw GeometryError("face index out of range");
  }

  CanonicalizationReport report;

  // Merge duplicates: rank every input vertex by its z-y-x position.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t l, std::uint32_t r) {
    return zyx_less(vertices[l], vertices[r]);
  });
  std::vector<QuantizedVertex> unique;
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i : order) {
    if (unique.empty() || !(unique.back() == vertices[i])) unique.push_back(vertices[i]);
    rank[i] = static_cast<std::uint32_t>(unique.size() - 1);
  }
  report.merged_vertices = n - unique.size();

  std::vector<Face> out;
  out.reserve(faces.size());
  for (const auto& f : faces) {
    Face g{rank[f.a], rank[f.b], rank[f.c]};
    if (g.a == g.b || g.b == g.c || g.a == g.c) {
      ++report.dropped_degenerate_faces;
      continue;
    }
    // Cyclic rotation keeps the winding.
    if (g.b < g.a && g.b < g.c) {
      g = {g.b, g.c, g.a};
    } else if (g.c < g.a && g.c < g.b) {
      g = {g.c, g.a, g.b};
    }
    out.push_back(g);
  }

  auto key = [](const Face& f) {
    return std::make_tuple(f.a, std::min(f.b, f.c), std::max(f.b, f.c), f.b);
  };
  std::sort(out.begin(), out.end(), [&](const Face& l, const Face& r) { return key(l) < key(r); });
  const auto last = std::unique(out.begin(), out.end());
  report.dropped_duplicate_faces = static_cast<std::size_t>(out.end() - last);
  out.erase(last, out.end());
  if (out.empty()) throw GeometryError("mesh is empty after canonicalization");

  // Compact away unreferenced vertices; compaction keeps the z-y-x order.
  std::vector<std::uint32_t> remap(unique.size(), 0);
  std::vector<char> used(unique.size(), 0);
  for (const auto& f : out) used[f.a] = used[f.b] = used[f.c] = 1;
  QuantizedMesh mesh;
  mesh.bits = bits;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (!used[i]) {
      ++report.dropped_unreferenced_vertices;
      continue;
    }
    remap[i] = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back(unique[i]);
  }
  mesh.faces.reserve(out.size());
  for (const auto& f : out) mesh.faces.push_back({remap[f.a], remap[f.b], remap[f.c]});
  return {std::move(mesh), report};
}

RawMesh dequantize(const QuantizedMesh& mesh) {
  const double res = static_cast<double>(1 << mesh.bits);
  RawMesh out;
  out.positions.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) {
    out.positions.push_back({(v.x + 0.5) / res, (v.y + 0.5) / res, (v.z + 0.5) / res});
  }
  out.faces.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) out.faces.push_back({f.a, f.b, f.c});
  return out;
}

QuantizedMesh prepare_mesh(const RawMesh& raw, int bits) { return quantize(normalize(raw), bits); }

}  // namespace bpt
