#include "synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fpbz::testing {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint8_t quantize(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

}  // namespace

GrayImage make_ripple(std::uint32_t seed) {
  constexpr int kWidth = 256;
  constexpr int kHeight = 288;
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const double theta = uniform(25.0, 65.0) * kPi / 180.0;  // ridge normal
  const double period = uniform(4.1, 5.3);                 // ridge spacing, px
  const double bend = uniform(4.0, 10.0);                  // lateral sway, px
  const double bend_wavelength = uniform(280.0, 420.0);
  const double bend_phase = uniform(0.0, 2.0 * kPi);
  const double contrast_phase_x = uniform(0.0, 2.0 * kPi);
  const double contrast_phase_y = uniform(0.0, 2.0 * kPi);

  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  GrayImage img(kWidth, kHeight);
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const double u = x * ct + y * st;
      const double v = -x * st + y * ct;
      const double phase =
          2.0 * kPi / period *
          (u + bend * std::sin(2.0 * kPi * v / bend_wavelength + bend_phase));
      const double amplitude =
          55.0 + 25.0 * std::sin(2.0 * kPi * x / kWidth + contrast_phase_x) *
                     std::sin(2.0 * kPi * y / kHeight + contrast_phase_y);
      img.at(x, y) = quantize(127.5 + amplitude * std::cos(phase));
    }
  }
  return img;
}

GrayImage make_rings(int size, double period) {
  GrayImage img(size, size);
  const double c = (size - 1) / 2.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double r = std::hypot(x - c, y - c);
      img.at(x, y) = quantize(127.5 + 60.0 * std::cos(2.0 * kPi * r / period));
    }
  }
  return img;
}

BinaryImage make_mask(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty mask");
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows[0].size());
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    if (static_cast<int>(rows[y].size()) != w) {
      throw std::invalid_argument("ragged mask rows");
    }
    for (int x = 0; x < w; ++x) {
      img.bits[img.index(x, y)] = rows[y][x] == '#' ? 1 : 0;
    }
  }
  return img;
}

GrayImage make_gray(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty image");
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows[0].size());
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    if (static_cast<int>(rows[y].size()) != w) {
      throw std::invalid_argument("ragged image rows");
    }
    for (int x = 0; x < w; ++x) {
      const char ch = rows[y][x];
      int digit = 0;
      if (ch >= '0' && ch <= '9') {
        digit = ch - '0';
      } else if (ch >= 'a' && ch <= 'f') {
        digit = ch - 'a' + 10;
      } else {
        throw std::invalid_argument("non-hex cell");
      }
      img.at(x, y) = static_cast<std::uint8_t>(digit * 255 / 15);
    }
  }
  return img;
}

}  // namespace fpbz::testing
