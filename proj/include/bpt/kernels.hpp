#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bpt/mesh.hpp"

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; both produce bit-identical results for any thread count
// because every output element is computed independently and reductions
// are left to the caller in a fixed order.
namespace bpt::kernels {

namespace serial {

// out[i] = min_j |from[i] - to[j]|, exact brute force.
std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to);

// out[i - 1] = mean distance from stream[i] to the previous min(t, i) entries.
std::vector<double> avd_terms(std::span<const QuantizedVertex> stream, std::size_t t);

}  // namespace serial

namespace omp {

std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to);
std::vector<double> avd_terms(std::span<const QuantizedVertex> stream, std::size_t t);

}  // namespace omp

int max_threads();

}  // namespace bpt::kernels
