// AVX2 variants. Compiled with -mavx2 only (no FMA), so the double kernels
// keep the exact per-element operation order of the scalar references and the
// results match them bit-for-bit. Tail elements reuse the scalar expressions.
#include "fpbz/kernels.hpp"

#if defined(FPBZ_HAVE_AVX2)

#include <immintrin.h>

#include <cstdint>

namespace fpbz::kernels::avx2 {

void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold) {
  const __m256i tvec = _mm256_set1_epi8(static_cast<char>(threshold));
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ones = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i diff = _mm256_subs_epu8(x, tvec);       // 0 iff x <= threshold
    __m256i is_le = _mm256_cmpeq_epi8(diff, zero);
    __m256i res = _mm256_andnot_si256(is_le, ones);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), res);
  }
  for (; i < n; ++i) {
    dst[i] = src[i] > threshold ? 1 : 0;
  }
}

void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256) {
  alignas(32) std::int32_t lut32[256];
  for (int v = 0; v < 256; ++v) lut32[v] = lut256[v];
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m256i idx_lo = _mm256_cvtepu8_epi32(s);
    __m256i idx_hi = _mm256_cvtepu8_epi32(_mm_srli_si128(s, 8));
    __m256i v_lo = _mm256_i32gather_epi32(lut32, idx_lo, 4);
    __m256i v_hi = _mm256_i32gather_epi32(lut32, idx_hi, 4);
    __m256i p16 = _mm256_packus_epi32(v_lo, v_hi);
    p16 = _mm256_permute4x64_epi64(p16, _MM_SHUFFLE(3, 1, 2, 0));
    __m128i lo128 = _mm256_castsi256_si128(p16);
    __m128i hi128 = _mm256_extracti128_si256(p16, 1);
    __m128i bytes = _mm_packus_epi16(lo128, hi128);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), bytes);
  }
  for (; i < n; ++i) {
    dst[i] = lut256[src[i]];
  }
}

void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n) {
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i v127 = _mm256_set1_epi8(127);
  const __m256i v128 = _mm256_set1_epi8(static_cast<char>(128));
  const __m256i v255 = _mm256_set1_epi8(static_cast<char>(255));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i any_mask = _mm256_cmpeq_epi8(_mm256_or_si256(av, bv), one);
    __m256i both_mask = _mm256_cmpeq_epi8(_mm256_and_si256(av, bv), one);
    __m256i r = _mm256_sub_epi8(v255, _mm256_and_si256(any_mask, v127));
    r = _mm256_sub_epi8(r, _mm256_and_si256(both_mask, v128));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  for (; i < n; ++i) {
    std::uint8_t any = a[i] | b[i];
    std::uint8_t both = a[i] & b[i];
    dst[i] = static_cast<std::uint8_t>(255 - 127 * any - 128 * both);
  }
}

void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d px0 = _mm256_set1_pd(px[0]);
  const __m256d px1 = _mm256_set1_pd(px[1]);
  const __m256d px2 = _mm256_set1_pd(px[2]);
  const __m256d px3 = _mm256_set1_pd(px[3]);
  const __m256d py0 = _mm256_set1_pd(py[0]);
  const __m256d py1 = _mm256_set1_pd(py[1]);
  const __m256d py2 = _mm256_set1_pd(py[2]);
  const __m256d py3 = _mm256_set1_pd(py[3]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_loadu_pd(u + i);
    __m256d s = _mm256_sub_pd(one, t);
    __m256d ss = _mm256_mul_pd(s, s);
    __m256d st = _mm256_mul_pd(s, t);
    __m256d b0 = _mm256_mul_pd(ss, s);
    __m256d b1 = _mm256_mul_pd(three, _mm256_mul_pd(ss, t));
    __m256d b2 = _mm256_mul_pd(three, _mm256_mul_pd(st, t));
    __m256d b3 = _mm256_mul_pd(_mm256_mul_pd(t, t), t);
    __m256d x = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(px0, b0), _mm256_mul_pd(px1, b1)),
        _mm256_add_pd(_mm256_mul_pd(px2, b2), _mm256_mul_pd(px3, b3)));
    __m256d y = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(py0, b0), _mm256_mul_pd(py1, b1)),
        _mm256_add_pd(_mm256_mul_pd(py2, b2), _mm256_mul_pd(py3, b3)));
    _mm256_storeu_pd(out_x + i, x);
    _mm256_storeu_pd(out_y + i, y);
  }
  for (; i < n; ++i) {
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
  std::size_t k = 0;
  for (; k + 4 <= n_out; k += 4) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n_in; ++j) {
      __m256d ar = _mm256_set1_pd(a_re[j]);
      __m256d ai = _mm256_set1_pd(a_im[j]);
      __m256d wr = _mm256_loadu_pd(w_re + j * n_out + k);
      __m256d wi = _mm256_loadu_pd(w_im + j * n_out + k);
      acc_re = _mm256_add_pd(
          acc_re, _mm256_sub_pd(_mm256_mul_pd(ar, wr), _mm256_mul_pd(ai, wi)));
      acc_im = _mm256_add_pd(
          acc_im, _mm256_add_pd(_mm256_mul_pd(ar, wi), _mm256_mul_pd(ai, wr)));
    }
    _mm256_storeu_pd(out_re + k, acc_re);
    _mm256_storeu_pd(out_im + k, acc_im);
  }
  for (; k < n_out; ++k) {
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

}  // namespace fpbz::kernels::avx2

#endif  // FPBZ_HAVE_AVX2
