#include <cmath>
#include <limits>

#include "bpt/kernels.hpp"

namespace bpt::kernels::serial {

std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to) {
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) {
      const double dx = from[i][0] - q[0], dy = from[i][1] - q[1], dz = from[i][2] - q[2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best) best = d2;
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

std::vector<double> avd_terms(std::span<const QuantizedVertex> stream, std::size_t t) {
  std::vector<double> out(stream.size() > 0 ? stream.size() - 1 : 0);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    const std::size_t w = std::min(t, i);
    double sum = 0.0;
    for (std::size_t j = i - w; j < i; ++j) {
      const double dx = stream[i].x - stream[j].x, dy = stream[i].y - stream[j].y,
                   dz = stream[i].z - stream[j].z;
      sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    out[i - 1] = sum / static_cast<double>(w);
  }
  return out;
}

}  // namespace bpt::kernels::serial
