// Reference implementations. The SIMD backends must match these bit-for-bit,
// so the arithmetic here fixes the evaluation order per element.
#include "fpbz/kernels.hpp"

namespace fpbz::kernels::scalar {

void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = src[i] > threshold ? 1 : 0;
  }
}

void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = lut256[src[i]];
  }
}

void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t any = a[i] | b[i];
    std::uint8_t both = a[i] & b[i];
    dst[i] = static_cast<std::uint8_t>(255 - 127 * any - 128 * both);
  }
}

void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = u[i];
    double s = 1.0 - t;
    double b0 = (s * s) * s;
    double b1 = 3.0 * ((s * s) * t);
    double b2 = 3.0 * ((s * t) * t);
    double b3 = (t * t) * t;
    out_x[i] = (px[0] * b0 + px[1] * b1) + (px[2] * b2 + px[3] * b3);
    out_y[i] = (py[0] * b0 + py[1] * b1) + (py[2] * b2 + py[3] * b3);
  }
}

void complex_mac(const double* a_re, const double* a_im, const double* w_re,
                 const double* w_im, double* out_re, double* out_im,
                 std::size_t n_in, std::size_t n_out) {
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t j = 0; j < n_in; ++j) {
      double wr = w_re[j * n_out + k];
      double wi = w_im[j * n_out + k];
      acc_re += a_re[j] * wr - a_im[j] * wi;
      acc_im += a_re[j] * wi + a_im[j] * wr;
    }
    out_re[k] = acc_re;
    out_im[k] = acc_im;
  }
}

}  // namespace fpbz::kernels::scalar
