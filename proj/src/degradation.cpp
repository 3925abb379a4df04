#include "seedsel/degradation.hpp"

#include <algorithm>
#include <cmath>

#include "seedsel/colorimetry.hpp"
#include "seedsel/errors.hpp"

namespace seedsel {

void DegradationConfig::validate() const {
  if (!std::isfinite(blur_sigma) || blur_sigma < 0.0) {
    throw ConfigError("degradation.blur_sigma must be a finite value >= 0");
  }
  if (!std::isfinite(chroma_gain) || chroma_gain < 0.0 || chroma_gain > 1.0) {
    throw ConfigError("degradation.chroma_gain must lie in [0, 1]");
  }
  if (quant_levels < 0 || quant_levels == 1) {
    throw ConfigError("degradation.quant_levels must be 0 (off) or >= 2");
  }
}

std::vector<double> gaussian_kernel(double sigma) {
  if (sigma <= 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int j = -radius; j <= radius; ++j) {
    const double w = std::exp(-(j * j) / (2.0 * sigma * sigma));
    taps[j + radius] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - m;
}

namespace {

// Horizontal (axis = 1) or vertical (axis = 0) reflect-padded correlation of
// every plane. transpose = true applies the matrix transpose instead, by
// scattering each output tap back to the sample it was read from.
Image blur_pass(const Image& in, const std::vector<double>& taps, int axis, bool transpose) {
  const int radius = static_cast<int>(taps.size() / 2);
  const int h = in.height();
  const int w = in.width();
  Image out(h, w);
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double v = in.at(c, y, x);
        double acc = 0.0;
        for (int j = -radius; j <= radius; ++j) {
          const double tap = taps[j + radius];
          const int sy = axis == 0 ? reflect_index(y + j, h) : y;
          const int sx = axis == 1 ? reflect_index(x + j, w) : x;
          if (transpose) {
            out.at(c, sy, sx) += tap * v;
          } else {
            acc += tap * in.at(c, sy, sx);
          }
        }
        if (!transpose) out.at(c, y, x) = acc;
      }
    }
  }
  return out;
}

Image blur(const Image& x, double sigma) {
  if (sigma <= 0.0) return x;
  const auto taps = gaussian_kernel(sigma);
  return blur_pass(blur_pass(x, taps, 1, false), taps, 0, false);
}

Image blur_transpose(const Image& x, double sigma) {
  if (sigma <= 0.0) return x;
  const auto taps = gaussian_kernel(sigma);
  return blur_pass(blur_pass(x, taps, 0, true), taps, 1, true);
}

Image apply_color_matrix(const Image& x, const std::array<double, 9>& m) {
  Image out(x.height(), x.width());
  auto r = x.plane(0);
  auto g = x.plane(1);
  auto b = x.plane(2);
  auto orr = out.plane(0);
  auto og = out.plane(1);
  auto ob = out.plane(2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    orr[i] = m[0] * r[i] + m[1] * g[i] + m[2] * b[i];
    og[i] = m[3] * r[i] + m[4] * g[i] + m[5] * b[i];
    ob[i] = m[6] * r[i] + m[7] * g[i] + m[8] * b[i];
  }
  return out;
}

std::array<double, 9> transposed(const std::array<double, 9>& m) {
  return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
}

}  // namespace

std::array<double, 9> chroma_matrix(double gain) {
  // Columns are the images of the RGB unit vectors. The attenuation maps
  // zero to zero (the 0.5 offsets cancel), so the stage is linear.
  std::array<double, 9> m{};
  for (int col = 0; col < 3; ++col) {
    Image unit(1, 1);
    unit.at(col, 0, 0) = 1.0;
    YCbCrImage ycc = rgb_to_ycbcr(unit);
    ycc.cb[0] = kChromaNeutral + gain * (ycc.cb[0] - kChromaNeutral);
    ycc.cr[0] = kChromaNeutral + gain * (ycc.cr[0] - kChromaNeutral);
    const Image back = ycbcr_to_rgb_unclamped(ycc);
    for (int row = 0; row < 3; ++row) m[row * 3 + col] = back.at(row, 0, 0);
  }
  return m;
}

Image degrade_linear(const Image& x, const DegradationConfig& cfg) {
  cfg.validate();
  Image out = blur(x, cfg.blur_sigma);
  if (cfg.chroma_gain != 1.0) out = apply_color_matrix(out, chroma_matrix(cfg.chroma_gain));
  return out;
}

Image degrade_adjoint(const Image& y, const DegradationConfig& cfg) {
  cfg.validate();
  Image out = y;
  if (cfg.chroma_gain != 1.0) {
    out = apply_color_matrix(out, transposed(chroma_matrix(cfg.chroma_gain)));
  }
  return blur_transpose(out, cfg.blur_sigma);
}

Image degrade(const Image& x, const DegradationConfig& cfg) {
  Image out = degrade_linear(x, cfg);
  if (cfg.quant_levels >= 2) {
    const double steps = cfg.quant_levels - 1;
    for (double& v : out.values()) v = std::round(v * steps) / steps;
  }
  return clamp01(out);
}

}  // namespace seedsel
