#pragma once

#include "seedsel/image.hpp"

namespace seedsel {

inline constexpr double kPsnrCapDb = 100.0;

// SSIM parameters: single scale on the luma plane, 11x11 Gaussian window.
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

struct MetricReport {
  double psnr_db = 0.0;
  double y_psnr_db = 0.0;
  double ssim = 0.0;
  // LPIPS needs a pretrained network and is never computed; serialized as
  // the string "not computed".
};

// Both inputs are clamped to [0,1] first. Peak 1.0, capped at kPsnrCapDb.
double psnr(const Image& a, const Image& b, bool on_y_channel);
inline double y_psnr(const Image& a, const Image& b) { return psnr(a, b, true); }

double psnr_from_mse(double mse);

// Mean SSIM over all valid window positions of the Y plane.
double ssim(const Image& a, const Image& b);

MetricReport compute_metrics(const Image& a, const Image& b);

}  // namespace seedsel
