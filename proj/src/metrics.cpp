#include "seedsel/metrics.hpp"

#include <cmath>
#include <vector>

#include "seedsel/colorimetry.hpp"
#include "seedsel/errors.hpp"

namespace seedsel {

double psnr_from_mse(double mse) {
  if (!(mse > 0.0)) return kPsnrCapDb;
  return std::min(kPsnrCapDb, -10.0 * std::log10(mse));
}

double psnr(const Image& a, const Image& b, bool on_y_channel) {
  require_same_geometry(a, b, "psnr");
  const Image ca = clamp01(a);
  const Image cb = clamp01(b);
  double sum = 0.0;
  std::size_t count = 0;
  if (on_y_channel) {
    const auto ya = luma_plane(ca);
    const auto yb = luma_plane(cb);
    for (std::size_t i = 0; i < ya.size(); ++i) {
      const double d = ya[i] - yb[i];
      sum += d * d;
    }
    count = ya.size();
  } else {
    auto av = ca.values();
    auto bv = cb.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double d = av[i] - bv[i];
      sum += d * d;
    }
    count = av.size();
  }
  if (count == 0) throw DimensionError("psnr: empty image");
  return psnr_from_mse(sum / static_cast<double>(count));
}

namespace {

std::vector<double> ssim_window() {
  constexpr int r = kSsimWindow / 2;
  std::vector<double> w(kSsimWindow * kSsimWindow);
  double total = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * kSsimSigma * kSsimSigma));
      w[(dy + r) * kSsimWindow + (dx + r)] = v;
      total += v;
    }
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  require_same_geometry(a, b, "ssim");
  const int h = a.height();
  const int w = a.width();
  if (h < kSsimWindow || w < kSsimWindow) {
    throw ConfigError("ssim: image must be at least 11x11");
  }
  const auto ya = luma_plane(clamp01(a));
  const auto yb = luma_plane(clamp01(b));
  const auto win = ssim_window();
  constexpr double c1 = (kSsimK1 * 1.0) * (kSsimK1 * 1.0);
  constexpr double c2 = (kSsimK2 * 1.0) * (kSsimK2 * 1.0);

  double total = 0.0;
  int positions = 0;
  for (int y0 = 0; y0 + kSsimWindow <= h; ++y0) {
    for (int x0 = 0; x0 + kSsimWindow <= w; ++x0) {
      double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
      for (int dy = 0; dy < kSsimWindow; ++dy) {
        for (int dx = 0; dx < kSsimWindow; ++dx) {
          const double wt = win[dy * kSsimWindow + dx];
          const std::size_t i = static_cast<std::size_t>(y0 + dy) * w + (x0 + dx);
          const double va = ya[i];
          const double vb = yb[i];
          mu_a += wt * va;
          mu_b += wt * vb;
          aa += wt * (va * va);
          bb += wt * (vb * vb);
          ab += wt * (va * vb);
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      ++positions;
    }
  }
  return total / positions;
}

MetricReport compute_metrics(const Image& a, const Image& b) {
  MetricReport r;
  r.psnr_db = psnr(a, b, false);
  r.y_psnr_db = psnr(a, b, true);
  r.ssim = ssim(a, b);
  return r;
}

}  // namespace seedsel
