#include "seedsel/colorimetry.hpp"

#include <algorithm>

#include "seedsel/errors.hpp"

namespace seedsel {

namespace {

struct Rgb {
  double r, g, b;
};

inline Rgb invert(double y, double cb, double cr) {
  const double r = y + (cr - kChromaNeutral) / kCrScale;
  const double b = y + (cb - kChromaNeutral) / kCbScale;
  const double g = (y - kLumaR * r - kLumaB * b) / kLumaG;
  return {r, g, b};
}

Image to_rgb(const YCbCrImage& x, bool clamp) {
  const std::size_t n = static_cast<std::size_t>(x.height) * x.width;
  if (x.y.size() != n || x.cb.size() != n || x.cr.size() != n) {
    throw DimensionError("ycbcr_to_rgb: plane size mismatch");
  }
  Image out(x.height, x.width);
  auto r = out.plane(0);
  auto g = out.plane(1);
  auto b = out.plane(2);
  for (std::size_t i = 0; i < n; ++i) {
    Rgb p = invert(x.y[i], x.cb[i], x.cr[i]);
    if (clamp) {
      p.r = std::clamp(p.r, 0.0, 1.0);
      p.g = std::clamp(p.g, 0.0, 1.0);
      p.b = std::clamp(p.b, 0.0, 1.0);
    }
    r[i] = p.r;
    g[i] = p.g;
    b[i] = p.b;
  }
  return out;
}

}  // namespace

YCbCrImage rgb_to_ycbcr(const Image& x) {
  YCbCrImage out;
  out.height = x.height();
  out.width = x.width();
  const std::size_t n = x.plane_size();
  out.y.resize(n);
  out.cb.resize(n);
  out.cr.resize(n);
  auto r = x.plane(0);
  auto g = x.plane(1);
  auto b = x.plane(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = kLumaR * r[i] + kLumaG * g[i] + kLumaB * b[i];
    out.y[i] = y;
    out.cb[i] = kCbScale * (b[i] - y) + kChromaNeutral;
    out.cr[i] = kCrScale * (r[i] - y) + kChromaNeutral;
  }
  return out;
}

Image ycbcr_to_rgb(const YCbCrImage& x) { return to_rgb(x, true); }

Image ycbcr_to_rgb_unclamped(const YCbCrImage& x) { return to_rgb(x, false); }

std::vector<double> luma_plane(const Image& x) {
  std::vector<double> y(x.plane_size());
  auto r = x.plane(0);
  auto g = x.plane(1);
  auto b = x.plane(2);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = kLumaR * r[i] + kLumaG * g[i] + kLumaB * b[i];
  return y;
}

Image cc_merge(const Image& generated, const Image& machine) {
  require_same_geometry(generated, machine, "cc_merge");
  YCbCrImage merged = rgb_to_ycbcr(machine);
  merged.y = luma_plane(generated);
  return ycbcr_to_rgb(merged);
}

}  // namespace seedsel
