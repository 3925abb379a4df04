#include <omp.h>

#include "seedsel/kernels.hpp"

namespace seedsel::kernels {

std::vector<double> scaled_distances_omp(const Image& x, std::span<const Image> refs,
                                         double scale) {
  const long n = static_cast<long>(refs.size());
  std::vector<double> d(refs.size());
  auto xv = x.values();
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long i = 0; i < n; ++i) {
    auto rv = refs[i].values();
    double acc = 0.0;
    for (std::size_t p = 0; p < xv.size(); ++p) {
      const double diff = xv[p] - scale * rv[p];
      acc += diff * diff;
    }
    d[i] = acc;
  }
  return d;
}

Image weighted_sum_omp(std::span<const Image> refs, std::span<const double> weights) {
  Image out(refs.front().height(), refs.front().width());
  auto ov = out.values();
  const long n = static_cast<long>(ov.size());
  const std::size_t m = refs.size();
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long p = 0; p < n; ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += weights[i] * refs[i].values()[p];
    ov[p] = acc;
  }
  return out;
}

}  // namespace seedsel::kernels
