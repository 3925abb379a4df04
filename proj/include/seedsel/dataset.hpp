#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seedsel/diffusion.hpp"
#include "seedsel/image.hpp"

namespace seedsel {

enum class PatternFamily { gradient, stripes, disks, mixed };

PatternFamily parse_pattern_family(const std::string& name);
std::string to_string(PatternFamily family);

struct SynthParams {
  PatternFamily family = PatternFamily::mixed;
  int count = 64;            // evaluation images
  int reference_count = -1;  // denoiser references; -1 means same as count
  int height = 32;
  int width = 32;
  double noise_level = 0.02;  // stddev of additive pixel noise before clamping
  std::uint64_t master_seed = 0;
};

struct SynthDataset {
  std::vector<Image> images;  // held out: never part of the denoiser references
  DenoiserSpec denoiser;
};

// Pure function of `params`. Evaluation image i and reference j are drawn
// from disjoint seed streams of the same generator.
SynthDataset synth_dataset(const SynthParams& params);

// One pattern image from its own seed.
Image synth_image(PatternFamily family, int height, int width, double noise_level,
                  std::uint64_t seed);

}  // namespace seedsel
