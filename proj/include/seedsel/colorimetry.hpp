#pragma once

#include "seedsel/image.hpp"

namespace seedsel {

// BT.601 full-range constants. Normative for every Y/Cb/Cr computation in
// the library.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;
inline constexpr double kCbScale = 0.564;
inline constexpr double kCrScale = 0.713;
inline constexpr double kChromaNeutral = 0.5;

struct YCbCrImage {
  int height = 0;
  int width = 0;
  std::vector<double> y;
  std::vector<double> cb;
  std::vector<double> cr;
};

// Exact linear transform, no clamping.
YCbCrImage rgb_to_ycbcr(const Image& x);
// Algebraic inverse followed by a clamp to [0,1].
Image ycbcr_to_rgb(const YCbCrImage& x);
// Inverse without the clamp; used where a linear map is required.
Image ycbcr_to_rgb_unclamped(const YCbCrImage& x);

std::vector<double> luma_plane(const Image& x);

// Color controller merge: luminance from `generated`, chroma from `machine`.
Image cc_merge(const Image& generated, const Image& machine);

}  // namespace seedsel
