#pragma once

#include <array>
#include <vector>

#include "seedsel/image.hpp"

namespace seedsel {

// Stand-in for a machine-oriented codec: keeps structure, drops texture and
// color fidelity. Stages run in order blur -> chroma attenuation ->
// quantization -> clamp.
struct DegradationConfig {
  double blur_sigma = 1.0;   // pixels; kernel radius ceil(3 * sigma)
  double chroma_gain = 0.3;  // scales Cb/Cr deviations from 0.5
  int quant_levels = 0;      // 0 disables; otherwise >= 2 reconstruction levels

  void validate() const;
  bool operator==(const DegradationConfig&) const = default;
};

// Normalized 1-D Gaussian taps, length 2 * radius + 1.
std::vector<double> gaussian_kernel(double sigma);

// Mirror index into [0, n) without repeating the edge sample (-1 -> 1).
int reflect_index(int i, int n);

// 3x3 RGB map of the chroma attenuation stage (row-major, out = M * in).
std::array<double, 9> chroma_matrix(double gain);

Image degrade(const Image& x, const DegradationConfig& cfg);

// Linear part of degrade (blur then chroma attenuation) and its exact
// adjoint. Quantization and clamping are excluded.
Image degrade_linear(const Image& x, const DegradationConfig& cfg);
Image degrade_adjoint(const Image& y, const DegradationConfig& cfg);

}  // namespace seedsel
