#include "seedsel/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "seedsel/errors.hpp"

namespace seedsel {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
}

Image quantize8(const Image& img) {
  Image out = img;
  for (double& v : out.values()) v = to_byte(v) / 255.0;
  return out;
}

Image load_image(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError(path.string() + ": cannot open for reading");

  png_byte header[8];
  if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    throw IoError(path.string() + ": not a PNG file");
  }

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn,
                                           png_warning_fn);
  if (!png) throw IoError(path.string() + ": libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError(path.string() + ": libpng init failed");
  }

  // Everything libpng-related that may longjmp stays in this block; C++
  // objects with destructors are created only after it completes.
  int width = 0, height = 0;
  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  volatile bool bad_format = false;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_RGB || png_get_bit_depth(png, info) != 8) {
    bad_format = true;
  } else {
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    pixels.resize(static_cast<std::size_t>(width) * height * 3);
    rows.resize(height);
    for (int y = 0; y < height; ++y) rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (bad_format) throw IoError(path.string() + ": only 8-bit RGB PNG is supported");

  Image img(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        img.at(c, y, x) = pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c] / 255.0;
      }
    }
  }
  return img;
}

void save_image(const std::filesystem::path& path, const Image& img) {
  if (img.empty()) throw IoError(path.string() + ": refusing to write an empty image");
  const int width = img.width();
  const int height = img.height();
  std::vector<png_byte> pixels(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c] = to_byte(img.at(c, y, x));
      }
    }
  }
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError(path.string() + ": cannot open for writing");

  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn,
                                            png_warning_fn);
  if (!png) throw IoError(path.string() + ": libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError(path.string() + ": libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace seedsel
