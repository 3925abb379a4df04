#pragma once

// Test-only reference computations kept independent of the library's
// sampler and metric code paths. Only the PRNG stream is shared, since the
// seed -> noise mapping is part of the contract being checked.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "seedsel/image.hpp"
#include "seedsel/rng.hpp"

namespace seedsel::oracle {

// Deterministic (eta = 0) unguided sampling with an empirical denoiser,
// written directly from the update equations.
inline std::vector<double> full_run(std::uint64_t seed, const std::vector<Image>& refs,
                                    const std::vector<double>& betas) {
  const int total = static_cast<int>(betas.size());
  std::vector<double> ab(total + 1, 1.0);
  for (int k = 1; k <= total; ++k) ab[k] = ab[k - 1] * (1.0 - betas[k - 1]);

  Rng rng(seed);
  const Image init = rng.normal_tensor(refs.front().height(), refs.front().width());
  std::vector<double> x(init.values().begin(), init.values().end());
  const std::size_t n = x.size();
  std::vector<double> x0(n);

  for (int k = total; k >= 1; --k) {
    const double s = std::sqrt(ab[k]);
    std::vector<double> logit(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        const double d = x[p] - s * refs[i].values()[p];
        d2 += d * d;
      }
      logit[i] = -d2 / (2.0 * (1.0 - ab[k]));
    }
    const double top = *std::max_element(logit.begin(), logit.end());
    double z = 0.0;
    for (double& l : logit) z += (l = std::exp(l - top));
    std::fill(x0.begin(), x0.end(), 0.0);
    for (std::size_t i = 0; i < refs.size(); ++i)
      for (std::size_t p = 0; p < n; ++p) x0[p] += logit[i] / z * refs[i].values()[p];
    for (std::size_t p = 0; p < n; ++p) {
      const double eps = (x[p] - s * x0[p]) / std::sqrt(1.0 - ab[k]);
      x[p] = std::sqrt(ab[k - 1]) * x0[p] + std::sqrt(1.0 - ab[k - 1]) * eps;
    }
  }
  return x0;
}

inline double y_psnr(const std::vector<double>& planar, const Image& truth) {
  const std::size_t m = truth.plane_size();
  double sum = 0.0;
  for (std::size_t p = 0; p < m; ++p) {
    auto c = [&](int ch) { return std::clamp(planar[ch * m + p], 0.0, 1.0); };
    const double y = 0.299 * c(0) + 0.587 * c(1) + 0.114 * c(2);
    const double yt = 0.299 * truth.plane(0)[p] + 0.587 * truth.plane(1)[p] +
                      0.114 * truth.plane(2)[p];
    sum += (y - yt) * (y - yt);
  }
  const double mse = sum / m;
  return mse > 0 ? std::min(100.0, -10.0 * std::log10(mse)) : 100.0;
}

inline int argmax(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace seedsel::oracle
