#include "seedsel/kernels.hpp"

namespace seedsel::kernels {

std::vector<double> scaled_distances_serial(const Image& x, std::span<const Image> refs,
                                            double scale) {
  std::vector<double> d(refs.size());
  auto xv = x.values();
  for (std::size_t i = 0; i < refs.size(); ++i) {
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

Image weighted_sum_serial(std::span<const Image> refs, std::span<const double> weights) {
  Image out(refs.front().height(), refs.front().width());
  auto ov = out.values();
  for (std::size_t p = 0; p < ov.size(); ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < refs.size(); ++i) acc += weights[i] * refs[i].values()[p];
    ov[p] = acc;
  }
  return out;
}

}  // namespace seedsel::kernels
