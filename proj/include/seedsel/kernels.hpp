#pragma once

#include <span>
#include <vector>

#include "seedsel/image.hpp"

namespace seedsel {

// Execution policy for the data-parallel kernels. Both variants produce
// bitwise-identical results: every output element is reduced by one thread
// in a fixed order.
enum class Exec { serial, parallel };

namespace kernels {

// d[i] = || x - scale * refs[i] ||^2
std::vector<double> scaled_distances_serial(const Image& x, std::span<const Image> refs,
                                            double scale);
std::vector<double> scaled_distances_omp(const Image& x, std::span<const Image> refs,
                                         double scale);

// out = sum_i weights[i] * refs[i], accumulated per sample in index order.
Image weighted_sum_serial(std::span<const Image> refs, std::span<const double> weights);
Image weighted_sum_omp(std::span<const Image> refs, std::span<const double> weights);

inline std::vector<double> scaled_distances(const Image& x, std::span<const Image> refs,
                                            double scale, Exec exec) {
  return exec == Exec::parallel ? scaled_distances_omp(x, refs, scale)
                                : scaled_distances_serial(x, refs, scale);
}

inline Image weighted_sum(std::span<const Image> refs, std::span<const double> weights,
                          Exec exec) {
  return exec == Exec::parallel ? weighted_sum_omp(refs, weights)
                                : weighted_sum_serial(refs, weights);
}

}  // namespace kernels
}  // namespace seedsel
