#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bpt/kernels.hpp"

namespace bpt::kernels {

int max_threads() { return omp_get_max_threads(); }

namespace omp {

std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to) {
  const auto n = static_cast<std::ptrdiff_t>(from.size());
  std::vector<double> out(from.size());
  const Vec3* q = to.data();
  const std::size_t m = to.size();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec3 p = from[i];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double dx = p[0] - q[j][0], dy = p[1] - q[j][1], dz = p[2] - q[j][2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best) best = d2;
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

std::vector<double> avd_terms(std::span<const QuantizedVertex> stream, std::size_t t) {
  const auto n = static_cast<std::ptrdiff_t>(stream.size());
  std::vector<double> out(stream.size() > 0 ? stream.size() - 1 : 0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    const std::size_t w = std::min(t, static_cast<std::size_t>(i));
    double sum = 0.0;
    for (std::size_t j = static_cast<std::size_t>(i) - w; j < static_cast<std::size_t>(i); ++j) {
      const double dx = stream[i].x - stream[j].x, dy = stream[i].y - stream[j].y,
                   dz = stream[i].z - stream[j].z;
      sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    out[i - 1] = sum / static_cast<double>(w);
  }
  return out;
}

}  // namespace omp
}  // namespace bpt::kernels
