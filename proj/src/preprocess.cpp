#include "fpbz/preprocess.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpbz/kernels.hpp"

namespace fpbz {
namespace {

// Dense n x n transform matrices, W[j*n + k] = e^(sign * 2*pi*i * j*k / n).
struct DftPlan {
  int n;
  std::vector<double> fwd_re, fwd_im, inv_re, inv_im;

  explicit DftPlan(int size) : n(size) {
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    fwd_re.resize(nn);
    fwd_im.resize(nn);
    inv_re.resize(nn);
    inv_im.resize(nn);
    const double step = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double ang = step * ((static_cast<long long>(j) * k) % n);
        fwd_re[static_cast<std::size_t>(j) * n + k] = std::cos(ang);
        fwd_im[static_cast<std::size_t>(j) * n + k] = -std::sin(ang);
        inv_re[static_cast<std::size_t>(j) * n + k] = std::cos(ang);
        inv_im[static_cast<std::size_t>(j) * n + k] = std::sin(ang);
      }
    }
  }
};

// Separable 2-D pass: rows then columns through complex_mac.
void transform2(const DftPlan& plan, bool inverse, std::vector<double>& re,
                std::vector<double>& im) {
  const int n = plan.n;
  const double* w_re = inverse ? plan.inv_re.data() : plan.fwd_re.data();
  const double* w_im = inverse ? plan.inv_im.data() : plan.fwd_im.data();
  std::vector<double> tmp_re(re.size()), tmp_im(im.size());
  for (int y = 0; y < n; ++y) {
    const std::size_t off = static_cast<std::size_t>(y) * n;
    kernels::complex_mac(re.data() + off, im.data() + off, w_re, w_im,
                         tmp_re.data() + off, tmp_im.data() + off, n, n);
  }
  std::vector<double> col_re(n), col_im(n), out_re(n), out_im(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      col_re[y] = tmp_re[static_cast<std::size_t>(y) * n + x];
      col_im[y] = tmp_im[static_cast<std::size_t>(y) * n + x];
    }
    kernels::complex_mac(col_re.data(), col_im.data(), w_re, w_im, out_re.data(),
                         out_im.data(), n, n);
    for (int y = 0; y < n; ++y) {
      re[static_cast<std::size_t>(y) * n + x] = out_re[y];
      im[static_cast<std::size_t>(y) * n + x] = out_im[y];
    }
  }
}

int clamp_round_u8(double v) {
  long r = std::lround(v);
  if (r < 0) return 0;
  if (r > 255) return 255;
  return static_cast<int>(r);
}

int neighbor_count8(const BinaryImage& img, int x, int y) {
  int c = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      int nx = x + dx, ny = y + dy;
      if (img.in_bounds(nx, ny) && img.at(nx, ny)) ++c;
    }
  }
  return c;
}

}  // namespace

GrayImage histogram_equalize(const GrayImage& img) {
  if (img.pixels.empty()) {
    throw std::invalid_argument("histogram_equalize: empty image");
  }
  std::size_t hist[256] = {};
  for (std::uint8_t p : img.pixels) ++hist[p];
  const double total = static_cast<double>(img.pixels.size());
  std::uint8_t lut[256];
  std::size_t cum = 0;
  for (int p = 0; p < 256; ++p) {
    cum += hist[p];
    lut[p] = static_cast<std::uint8_t>(std::lround(255.0 * cum / total));
  }
  GrayImage out(img.width, img.height);
  kernels::apply_lut(img.pixels.data(), out.pixels.data(), img.pixels.size(), lut);
  return out;
}

std::vector<std::complex<double>> block_dft2(std::span<const double> data, int n) {
  if (n < 1 || data.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("block_dft2: data must be n*n");
  }
  DftPlan plan(n);
  std::vector<double> re(data.begin(), data.end());
  std::vector<double> im(data.size(), 0.0);
  transform2(plan, false, re, im);
  std::vector<std::complex<double>> out(data.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

std::vector<double> block_idft2_real(std::span<const std::complex<double>> freq, int n) {
  if (n < 1 || freq.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("block_idft2_real: data must be n*n");
  }
  DftPlan plan(n);
  std::vector<double> re(freq.size()), im(freq.size());
  for (std::size_t i = 0; i < freq.size(); ++i) {
    re[i] = freq[i].real();
    im[i] = freq[i].imag();
  }
  transform2(plan, true, re, im);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (double& v : re) v *= scale;
  return re;
}

void enhance_spectrum(std::span<std::complex<double>> freq, double k) {
  if (k == 0.0) return;
  for (auto& f : freq) {
    f *= std::pow(std::abs(f), k);
  }
}

GrayImage fft_enhance(const GrayImage& img, int block, double k) {
  if (block < 1) {
    throw std::invalid_argument("fft_enhance: block size must be >= 1");
  }
  if (!(k >= 0.0)) {
    throw std::invalid_argument("fft_enhance: exponent must be >= 0");
  }
  const int n = block;
  const std::size_t area = static_cast<std::size_t>(n) * n;
  DftPlan plan(n);
  GrayImage out(img.width, img.height);
  std::vector<double> tile(area), re(area), im(area);

  for (int by = 0; by < img.height; by += n) {
    for (int bx = 0; bx < img.width; bx += n) {
      // Input moments over the visible part of the tile only; a tile hanging
      // past the image edge must not see synthetic padding contrast.
      const int vis_w = std::min(n, img.width - bx);
      const int vis_h = std::min(n, img.height - by);
      const double vis_area = static_cast<double>(vis_w) * vis_h;
      double sum = 0.0;
      for (int ty = 0; ty < vis_h; ++ty) {
        for (int tx = 0; tx < vis_w; ++tx) {
          sum += img.at(bx + tx, by + ty);
        }
      }
      const double mean_in = sum / vis_area;
      double var_in = 0.0;
      for (int ty = 0; ty < vis_h; ++ty) {
        for (int tx = 0; tx < vis_w; ++tx) {
          const double d = img.at(bx + tx, by + ty) - mean_in;
          var_in += d * d;
        }
      }
      var_in /= vis_area;

      // Pad with the visible mean: no step edge, and a constant tile stays
      // exactly constant through the transform.
      for (int ty = 0; ty < n; ++ty) {
        for (int tx = 0; tx < n; ++tx) {
          int x = bx + tx, y = by + ty;
          tile[static_cast<std::size_t>(ty) * n + tx] =
              img.in_bounds(x, y) ? img.at(x, y) : mean_in;
        }
      }

      re.assign(tile.begin(), tile.end());
      im.assign(area, 0.0);
      transform2(plan, false, re, im);
      if (k != 0.0) {
        for (std::size_t i = 0; i < area; ++i) {
          double m = std::hypot(re[i], im[i]);
          double f = std::pow(m, k);
          re[i] *= f;
          im[i] *= f;
        }
      }
      transform2(plan, true, re, im);
      const double inv_scale = 1.0 / static_cast<double>(area);
      for (std::size_t i = 0; i < area; ++i) re[i] *= inv_scale;
      // Output moments over the same visible region, so the remap below maps
      // visible statistics onto visible statistics.
      double sum_raw = 0.0;
      for (int ty = 0; ty < vis_h; ++ty) {
        for (int tx = 0; tx < vis_w; ++tx) {
          sum_raw += re[static_cast<std::size_t>(ty) * n + tx];
        }
      }
      const double mean_raw = sum_raw / vis_area;
      double var_raw = 0.0;
      for (int ty = 0; ty < vis_h; ++ty) {
        for (int tx = 0; tx < vis_w; ++tx) {
          const double d = re[static_cast<std::size_t>(ty) * n + tx] - mean_raw;
          var_raw += d * d;
        }
      }
      var_raw /= vis_area;

      // Remap into the tile's original dynamic range so the gain |F|^k cannot
      // saturate the output; degenerates to the identity when k = 0.
      const bool flat = var_in <= 0.0 || var_raw < 1e-12;
      const double scale = flat ? 0.0 : std::sqrt(var_in / var_raw);
      for (int ty = 0; ty < n; ++ty) {
        int y = by + ty;
        if (y >= img.height) break;
        for (int tx = 0; tx < n; ++tx) {
          int x = bx + tx;
          if (x >= img.width) break;
          double raw = re[static_cast<std::size_t>(ty) * n + tx];
          double v = flat ? mean_in : (raw - mean_raw) * scale + mean_in;
          out.at(x, y) = static_cast<std::uint8_t>(clamp_round_u8(v));
        }
      }
    }
  }
  return out;
}

int otsu_threshold(const GrayImage& img) {
  if (img.pixels.empty()) {
    throw std::invalid_argument("otsu_threshold: empty image");
  }
  std::size_t hist[256] = {};
  for (std::uint8_t p : img.pixels) ++hist[p];
  const double total = static_cast<double>(img.pixels.size());
  double sum_all = 0.0;
  for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * hist[v];

  double best_sigma = 0.0;
  int best_t = -1;
  double w0 = 0.0, s0 = 0.0;
  for (int t = 0; t < 256; ++t) {
    w0 += static_cast<double>(hist[t]);
    s0 += static_cast<double>(t) * hist[t];
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = s0 / w0;
    const double mu1 = (sum_all - s0) / w1;
    const double sigma = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (sigma > best_sigma) {
      best_sigma = sigma;
      best_t = t;
    }
  }
  // No positive-variance split: a single occupied level. Classify everything
  // as background rather than everything as ridge.
  if (best_t < 0) return 255;
  return best_t;
}

BinaryImage binarize(const GrayImage& img, int threshold) {
  int t = threshold;
  if (t == kAutoThreshold) {
    t = otsu_threshold(img);
  }
  if (t < 0 || t > 255) {
    throw std::invalid_argument("binarize: threshold " + std::to_string(threshold) +
                                " outside 0..255");
  }
  BinaryImage out(img.width, img.height);
  kernels::threshold_gt(img.pixels.data(), out.bits.data(), img.pixels.size(),
                        static_cast<std::uint8_t>(t));
  return out;
}

OrientationField estimate_orientation(const GrayImage& img, int block) {
  if (block < 3) {
    throw std::invalid_argument("estimate_orientation: block size must be >= 3");
  }
  OrientationField field;
  field.block_size = block;
  field.cols = (img.width + block - 1) / block;
  field.rows = (img.height + block - 1) / block;
  field.angles.assign(static_cast<std::size_t>(field.cols) * field.rows, 0.0);

  auto sample = [&](int x, int y) -> double {
    if (x < 0) x = 0;
    if (x >= img.width) x = img.width - 1;
    if (y < 0) y = 0;
    if (y >= img.height) y = img.height - 1;
    return img.at(x, y);
  };

  for (int by = 0; by < field.rows; ++by) {
    for (int bx = 0; bx < field.cols; ++bx) {
      const int x0 = bx * block, y0 = by * block;
      const int x1 = std::min(x0 + block, img.width);
      const int y1 = std::min(y0 + block, img.height);
      double sum_cross = 0.0;  // sum of 2*gx*gy
      double sum_diff = 0.0;   // sum of gx^2 - gy^2
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          double gx = (sample(x + 1, y) - sample(x - 1, y)) * 0.5;
          double gy = (sample(x, y + 1) - sample(x, y - 1)) * 0.5;
          sum_cross += 2.0 * gx * gy;
          sum_diff += gx * gx - gy * gy;
        }
      }
      double theta = 0.0;
      if (sum_cross != 0.0 || sum_diff != 0.0) {
        theta = 0.5 * std::atan2(sum_cross, sum_diff) + std::numbers::pi / 2.0;
        if (theta >= std::numbers::pi) theta -= std::numbers::pi;
        if (theta < 0.0) theta += std::numbers::pi;
      }
      field.angles[static_cast<std::size_t>(by) * field.cols + bx] = theta;
    }
  }
  return field;
}

BinaryImage morph_clean(const BinaryImage& img) {
  BinaryImage out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y) && neighbor_count8(img, x, y) == 0) {
        out.at(x, y) = 0;
      }
    }
  }
  return out;
}

BinaryImage morph_hbreak(const BinaryImage& img) {
  auto bit = [&](int x, int y) -> int {
    return img.in_bounds(x, y) ? img.at(x, y) : 0;
  };
  BinaryImage out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.at(x, y)) continue;
      int nw = bit(x - 1, y - 1), nn = bit(x, y - 1), ne = bit(x + 1, y - 1);
      int ww = bit(x - 1, y), ee = bit(x + 1, y);
      int sw = bit(x - 1, y + 1), ss = bit(x, y + 1), se = bit(x + 1, y + 1);
      // Exact H masks: full top and bottom rows with free sides, or the
      // 90-degree rotation (full columns with the crossbar through p).
      bool h1 = nw && nn && ne && !ww && !ee && sw && ss && se;
      bool h2 = nw && !nn && ne && ww && ee && sw && !ss && se;
      if (h1 || h2) out.at(x, y) = 0;
    }
  }
  return out;
}

BinaryImage morph_spur(const BinaryImage& img, int iters) {
  if (iters < 0) {
    throw std::invalid_argument("morph_spur: iteration count must be >= 0");
  }
  BinaryImage cur = img;
  for (int it = 0; it < iters; ++it) {
    BinaryImage next = cur;
    bool changed = false;
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        if (cur.at(x, y) && neighbor_count8(cur, x, y) == 1) {
          next.at(x, y) = 0;
          changed = true;
        }
      }
    }
    cur = std::move(next);
    if (!changed) break;
  }
  return cur;
}

BinaryImage morph_cleanup(const BinaryImage& img, int spur_iters) {
  return morph_spur(morph_hbreak(morph_clean(img)), spur_iters);
}

}  // namespace fpbz
