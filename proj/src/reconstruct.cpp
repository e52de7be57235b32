#include "fpbz/reconstruct.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "fpbz/kernels.hpp"

namespace fpbz {
namespace {

constexpr double kFar = 1e20;  // finite stand-in for "no foreground anywhere"

// 1-D squared distance transform, lower envelope of parabolas.
void dt_1d(const std::vector<double>& f, std::vector<double>& d, int n,
           std::vector<int>& v, std::vector<double>& z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + static_cast<double>(q) * q) -
                (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + static_cast<double>(q) * q) -
           (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

BinaryImage rasterize(const CompressedFingerprint& cf) {
  if (cf.width < 1 || cf.height < 1) {
    throw std::invalid_argument("rasterize: image dimensions must be >= 1");
  }
  BinaryImage out(cf.width, cf.height);
  std::vector<double> us, xs, ys;
  for (const CubicBezier& c : cf.ridges) {
    const double poly_len = std::hypot(c.p1.x - c.p0.x, c.p1.y - c.p0.y) +
                            std::hypot(c.p2.x - c.p1.x, c.p2.y - c.p1.y) +
                            std::hypot(c.p3.x - c.p2.x, c.p3.y - c.p2.y);
    // |B'(u)| <= 3 * max control-polygon edge <= 3 * poly_len, so this sample
    // count bounds consecutive sample steps by 1 px and keeps the rounded
    // pixel trace of each curve 8-connected.
    const std::size_t samples = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(3.0 * poly_len)) + 1);
    us.resize(samples);
    xs.resize(samples);
    ys.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      us[i] = static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    const double px[4] = {c.p0.x, c.p1.x, c.p2.x, c.p3.x};
    const double py[4] = {c.p0.y, c.p1.y, c.p2.y, c.p3.y};
    kernels::cubic_eval_batch(px, py, us.data(), xs.data(), ys.data(), samples);
    for (std::size_t i = 0; i < samples; ++i) {
      long x = std::lround(xs[i]);
      long y = std::lround(ys[i]);
      if (x >= 0 && x < cf.width && y >= 0 && y < cf.height) {
        out.at(static_cast<int>(x), static_cast<int>(y)) = 1;
      }
    }
  }
  return out;
}

GrayImage superimpose(const BinaryImage& extracted, const BinaryImage& reconstructed) {
  if (extracted.width != reconstructed.width ||
      extracted.height != reconstructed.height) {
    throw std::invalid_argument("superimpose: image dimensions differ");
  }
  GrayImage out(extracted.width, extracted.height);
  kernels::overlay3(extracted.bits.data(), reconstructed.bits.data(),
                    out.pixels.data(), out.pixels.size());
  return out;
}

std::vector<double> squared_distance_field(const BinaryImage& img) {
  const int w = img.width, h = img.height;
  std::vector<double> field(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < field.size(); ++i) {
    field[i] = img.bits[i] ? 0.0 : kFar;
  }
  const int longest = std::max(w, h);
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = field[static_cast<std::size_t>(y) * w + x];
    dt_1d(f, d, h, v, z);
    for (int y = 0; y < h; ++y) field[static_cast<std::size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = field[static_cast<std::size_t>(y) * w + x];
    dt_1d(f, d, w, v, z);
    for (int x = 0; x < w; ++x) field[static_cast<std::size_t>(y) * w + x] = d[x];
  }
  for (double& val : field) {
    if (val >= kFar * 0.5) val = std::numeric_limits<double>::infinity();
  }
  return field;
}

OverlapReport overlap_metrics(const BinaryImage& extracted,
                              const BinaryImage& reconstructed, double tol) {
  if (extracted.width != reconstructed.width ||
      extracted.height != reconstructed.height) {
    throw std::invalid_argument("overlap_metrics: image dimensions differ");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("overlap_metrics: tolerance must be >= 0");
  }
  OverlapReport r;
  r.tol = tol;
  const double tol2 = tol * tol;

  const std::vector<double> to_recon = squared_distance_field(reconstructed);
  std::size_t fwd_total = 0, fwd_close = 0;
  double sum = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < extracted.bits.size(); ++i) {
    if (!extracted.bits[i]) continue;
    ++fwd_total;
    const double d2 = to_recon[i];
    if (d2 <= tol2) ++fwd_close;
    const double dist = std::sqrt(d2);
    sum += dist;
    if (dist > worst) worst = dist;
  }
  r.forward_cover = fwd_total == 0
                        ? 1.0
                        : static_cast<double>(fwd_close) / static_cast<double>(fwd_total);
  r.mean_dist = fwd_total == 0 ? 0.0 : sum / static_cast<double>(fwd_total);
  r.max_dist = fwd_total == 0 ? 0.0 : worst;

  const std::vector<double> to_extr = squared_distance_field(extracted);
  std::size_t rev_total = 0, rev_close = 0;
  for (std::size_t i = 0; i < reconstructed.bits.size(); ++i) {
    if (!reconstructed.bits[i]) continue;
    ++rev_total;
    if (to_extr[i] <= tol2) ++rev_close;
  }
  r.reverse_cover = rev_total == 0
                        ? 1.0
                        : static_cast<double>(rev_close) / static_cast<double>(rev_total);
  return r;
}

std::string report_to_text(const OverlapReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "forward_cover: %.6f\n"
                "reverse_cover: %.6f\n"
                "mean_dist: %.6f\n"
                "max_dist: %.6f\n"
                "tol: %.6f\n",
                r.forward_cover, r.reverse_cover, r.mean_dist, r.max_dist, r.tol);
  return buf;
}

}  // namespace fpbz
