#include "seedsel/image.hpp"

#include <algorithm>

#include "seedsel/errors.hpp"

namespace seedsel {

Image::Image(int height, int width, double fill) : height_(height), width_(width) {
  if (height < 0 || width < 0) {
    throw DimensionError("image dimensions must be non-negative");
  }
  data_.assign(static_cast<std::size_t>(kChannels) * height * width, fill);
}

void require_same_geometry(const Image& a, const Image& b, const std::string& what) {
  if (!a.same_geometry(b)) {
    throw DimensionError(what + ": geometry mismatch (" + std::to_string(a.height()) + "x" +
                         std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                         std::to_string(b.width()) + ")");
  }
}

Image clamp01(const Image& x) {
  Image out = x;
  for (double& v : out.values()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

double dot(const Image& a, const Image& b) {
  require_same_geometry(a, b, "dot");
  double acc = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) acc += av[i] * bv[i];
  return acc;
}

}  // namespace seedsel
