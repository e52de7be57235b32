// Inner-loop kernels with scalar reference implementations and AVX2 variants.
// The active backend is picked once at startup from CPUID (FPBZ_BACKEND=scalar
// or =avx2 overrides it). Every SIMD variant is bit-for-bit equivalent to its
// scalar reference: identical arithmetic per element, no reassociation, no FMA.
#pragma once

#include <cstddef>
#include <cstdint>

namespace fpbz::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
// Throws std::runtime_error if the backend is not available on this host.
void force_backend(Backend b);

// dst[i] = src[i] > threshold ? 1 : 0
void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold);

// dst[i] = lut256[src[i]]
void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256);

// Three-level merge of two 0/1 masks: both set -> 0, exactly one -> 128,
// neither -> 255.
void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n);

// Evaluates the cubic Bernstein form at each u[i]:
//   s = 1-u;  out = p[0]*s^3 + p[1]*3s^2u + p[2]*3su^2 + p[3]*u^3
// px/py hold the four control coordinates per axis.
void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n);

// Complex matrix-vector accumulate: for k in [0, n_out)
//   out[k] = sum_j a[j] * w[j * n_out + k]
// with all operands split into re/im planes. Accumulation runs in ascending j
// order for every k, in both backends.
void complex_mac(const double* a_re, const double* a_im, const double* w_re,
                 const double* w_im, double* out_re, double* out_im,
                 std::size_t n_in, std::size_t n_out);

namespace scalar {
void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold);
void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256);
void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n);
void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n);
void complex_mac(const double* a_re, const double* a_im, const double* w_re,
                 const double* w_im, double* out_re, double* out_im,
                 std::size_t n_in, std::size_t n_out);
}  // namespace scalar

#if defined(FPBZ_HAVE_AVX2)
namespace avx2 {
void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold);
void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256);
void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n);
void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n);
void complex_mac(const double* a_re, const double* a_im, const double* w_re,
                 const double* w_im, double* out_re, double* out_im,
                 std::size_t n_in, std::size_t n_out);
}  // namespace avx2
#endif

}  // namespace fpbz::kernels
