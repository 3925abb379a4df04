#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seedsel {

// Planar H x W x 3 raster of doubles. Pixel data lives in [0,1] for images;
// the same container also holds noise tensors and latents, which are
// unbounded.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t plane_size() const { return static_cast<std::size_t>(height_) * width_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  double at(int c, int y, int x) const { return data_[index(c, y, x)]; }

  std::span<double> plane(int c) { return {data_.data() + c * plane_size(), plane_size()}; }
  std::span<const double> plane(int c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_geometry(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Noise tensors share the image layout.
using Tensor = Image;

// Throws DimensionError naming `what` when geometries differ.
void require_same_geometry(const Image& a, const Image& b, const std::string& what);

Image clamp01(const Image& x);
double dot(const Image& a, const Image& b);

}  // namespace seedsel
