// Raster image containers shared by the whole pipeline.
// Coordinates: x = column (rightward), y = row (downward), origin at the
// top-left pixel centre. Pixel (x, y) lives at pixels[y * width + x].
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fpbz {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, one byte per sample

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h),
        pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  std::uint8_t at(int x, int y) const { return pixels[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels[index(x, y)]; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }

  bool operator==(const GrayImage&) const = default;
};

// One byte per pixel, value 0 (background) or 1 (foreground).
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryImage() = default;
  BinaryImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h),
        bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  std::uint8_t at(int x, int y) const { return bits[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return bits[index(x, y)]; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  int foreground_count() const {
    return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  }

  bool operator==(const BinaryImage&) const = default;
};

struct Pixel {
  int x = 0;
  int y = 0;
  bool operator==(const Pixel&) const = default;
};

// Row-major ordering: by row first, then column.
inline bool row_major_less(Pixel a, Pixel b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

}  // namespace fpbz
