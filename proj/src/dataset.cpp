#include "seedsel/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "seedsel/errors.hpp"
#include "seedsel/metrics.hpp"
#include "seedsel/rng.hpp"

namespace seedsel {

PatternFamily parse_pattern_family(const std::string& name) {
  if (name == "gradient") return PatternFamily::gradient;
  if (name == "stripes") return PatternFamily::stripes;
  if (name == "disks") return PatternFamily::disks;
  if (name == "mixed") return PatternFamily::mixed;
  throw ConfigError("dataset.pattern: unknown family '" + name + "'");
}

std::string to_string(PatternFamily family) {
  switch (family) {
    case PatternFamily::gradient: return "gradient";
    case PatternFamily::stripes: return "stripes";
    case PatternFamily::disks: return "disks";
    case PatternFamily::mixed: return "mixed";
  }
  return "mixed";
}

namespace {

using Color = std::array<double, 3>;

Color random_color(Rng& rng) { return {rng.uniform(), rng.uniform(), rng.uniform()}; }

void paint_gradient(Image& img, Rng& rng) {
  const Color c0 = random_color(rng);
  const Color c1 = random_color(rng);
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  const double h = img.height();
  const double w = img.width();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      // Projection onto the direction, mapped to [0,1] over the frame.
      const double t = 0.5 + ((x + 0.5) / w - 0.5) * ux + ((y + 0.5) / h - 0.5) * uy;
      const double f = std::clamp(t, 0.0, 1.0);
      for (int c = 0; c < 3; ++c) img.at(c, y, x) = (1.0 - f) * c0[c] + f * c1[c];
    }
  }
}

void paint_stripes(Image& img, Rng& rng, double amplitude) {
  const Color tint = random_color(rng);
  const double angle = std::numbers::pi * rng.uniform();
  const double period = 4.0 + 8.0 * rng.uniform();
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double s = std::sin(2.0 * std::numbers::pi * (x * ux + y * uy) / period + phase);
      for (int c = 0; c < 3; ++c) {
        img.at(c, y, x) += amplitude * s * (tint[c] - 0.5) * 2.0;
      }
    }
  }
}

void paint_disks(Image& img, Rng& rng, int count) {
  const double scale = std::min(img.height(), img.width());
  for (int d = 0; d < count; ++d) {
    const Color color = random_color(rng);
    const double cx = img.width() * rng.uniform();
    const double cy = img.height() * rng.uniform();
    const double r = scale * (0.12 + 0.2 * rng.uniform());
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) {
          for (int c = 0; c < 3; ++c) img.at(c, y, x) = color[c];
        }
      }
    }
  }
}

}  // namespace

Image synth_image(PatternFamily family, int height, int width, double noise_level,
                  std::uint64_t seed) {
  Rng rng(seed);
  Image img(height, width, 0.5);
  switch (family) {
    case PatternFamily::gradient:
      paint_gradient(img, rng);
      break;
    case PatternFamily::stripes:
      paint_stripes(img, rng, 0.35);
      break;
    case PatternFamily::disks:
      paint_disks(img, rng, 1 + static_cast<int>(rng.uniform() * 3.0));
      break;
    case PatternFamily::mixed:
      paint_gradient(img, rng);
      paint_stripes(img, rng, 0.08);
      paint_disks(img, rng, 1 + static_cast<int>(rng.uniform() * 3.0));
      break;
  }
  if (noise_level > 0.0) {
    const Tensor noise = rng.normal_tensor(height, width);
    auto v = img.values();
    auto n = noise.values();
    for (std::size_t p = 0; p < v.size(); ++p) v[p] += noise_level * n[p];
  }
  return clamp01(img);
}

SynthDataset synth_dataset(const SynthParams& params) {
  if (params.count < 1) throw ConfigError("dataset.count must be >= 1");
  if (params.height < kSsimWindow || params.width < kSsimWindow) {
    throw ConfigError("dataset geometry must be at least 11x11");
  }
  if (!(params.noise_level >= 0.0)) throw ConfigError("dataset.noise_level must be >= 0");
  const int refs = params.reference_count < 0 ? params.count : params.reference_count;
  if (refs < 1) throw ConfigError("dataset.reference_count must be >= 1");

  SynthDataset out;
  out.images.reserve(params.count);
  for (int i = 0; i < params.count; ++i) {
    out.images.push_back(synth_image(params.family, params.height, params.width,
                                     params.noise_level, derive_seed(params.master_seed, 2ULL * i)));
  }
  std::vector<Image> references;
  references.reserve(refs);
  for (int j = 0; j < refs; ++j) {
    references.push_back(synth_image(params.family, params.height, params.width,
                                     params.noise_level,
                                     derive_seed(params.master_seed, 2ULL * j + 1)));
  }
  out.denoiser = DenoiserSpec::empirical(std::move(references));
  return out;
}

}  // namespace seedsel
