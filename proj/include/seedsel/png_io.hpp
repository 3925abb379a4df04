#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "seedsel/image.hpp"

namespace seedsel {

// 8-bit RGB PNG only. Samples map to [0,1] as byte / 255.
Image load_image(const std::filesystem::path& path);

// Samples are clamped and written as floor(v * 255 + 0.5).
void save_image(const std::filesystem::path& path, const Image& img);

std::uint8_t to_byte(double v);

// Round trip through 8-bit storage without touching the filesystem.
Image quantize8(const Image& img);

}  // namespace seedsel
