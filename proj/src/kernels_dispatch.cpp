#include "fpbz/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fpbz::kernels {
namespace {

struct Table {
  decltype(&scalar::threshold_gt) threshold_gt;
  decltype(&scalar::apply_lut) apply_lut;
  decltype(&scalar::overlay3) overlay3;
  decltype(&scalar::cubic_eval_batch) cubic_eval_batch;
  decltype(&scalar::complex_mac) complex_mac;
};

constexpr Table kScalarTable{
    &scalar::threshold_gt, &scalar::apply_lut, &scalar::overlay3,
    &scalar::cubic_eval_batch, &scalar::complex_mac,
};

#if defined(FPBZ_HAVE_AVX2)
constexpr Table kAvx2Table{
    &avx2::threshold_gt, &avx2::apply_lut, &avx2::overlay3,
    &avx2::cubic_eval_batch, &avx2::complex_mac,
};
#endif

bool cpu_supports_avx2() {
#if defined(FPBZ_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("FPBZ_BACKEND");
  if (env != nullptr) {
    std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && cpu_supports_avx2()) return Backend::avx2;
  }
  return cpu_supports_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend& current_backend() {
  static Backend backend = initial_backend();
  return backend;
}

const Table& table() {
#if defined(FPBZ_HAVE_AVX2)
  if (current_backend() == Backend::avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_supports_avx2();
}

Backend active_backend() { return current_backend(); }

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("kernel backend not available: ") +
                             backend_name(b));
  }
  current_backend() = b;
}

void threshold_gt(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold) {
  table().threshold_gt(src, dst, n, threshold);
}

void apply_lut(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
               const std::uint8_t* lut256) {
  table().apply_lut(src, dst, n, lut256);
}

void overlay3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n) {
  table().overlay3(a, b, dst, n);
}

void cubic_eval_batch(const double px[4], const double py[4], const double* u,
                      double* out_x, double* out_y, std::size_t n) {
  table().cubic_eval_batch(px, py, u, out_x, out_y, n);
}

void complex_mac(const double* a_re, const double* a_im, const double* w_re,
                 const double* w_im, double* out_re, double* out_im,
                 std::size_t n_in, std::size_t n_out) {
  table().complex_mac(a_re, a_im, w_re, w_im, out_re, out_im, n_in, n_out);
}

}  // namespace fpbz::kernels
