// Gray-level preprocessing: equalization, block-spectrum enhancement, global
// thresholding, block orientation estimation, and binary cleanup.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fpbz/raster.hpp"

namespace fpbz {

inline constexpr int kAutoThreshold = -1;

struct OrientationField {
  int block_size = 0;
  int cols = 0;
  int rows = 0;
  std::vector<double> angles;  // row-major per block, each in [0, pi)

  double at(int bx, int by) const {
    return angles[static_cast<std::size_t>(by) * cols + bx];
  }
};

// Cumulative-histogram mapping q = round(255 * cdf(p)). Monotone; preserves
// pixel-count per mapped level.
GrayImage histogram_equalize(const GrayImage& img);

// Per-block spectral sharpening. Each block x block tile (edge tiles padded
// with their visible mean) is transformed, every bin scaled by |F|^k,
// inverse-transformed, and the real part remapped to the tile's original
// mean/variance before clamping to 0..255. Moments are taken over the visible
// pixels only. k = 0 degenerates to the identity up to rounding.
GrayImage fft_enhance(const GrayImage& img, int block, double k);

// Seams for the block transform, exposed for spectrum-level verification.
std::vector<std::complex<double>> block_dft2(std::span<const double> data, int n);
std::vector<double> block_idft2_real(std::span<const std::complex<double>> freq, int n);
void enhance_spectrum(std::span<std::complex<double>> freq, double k);

// Exhaustive between-class-variance sweep over all 256 candidates. Lowest
// maximizer wins ties; a histogram with no positive-variance split (single
// occupied level) yields 255 so that nothing is classified as foreground.
int otsu_threshold(const GrayImage& img);

// pixel > threshold -> 1. Pass kAutoThreshold to use otsu_threshold.
BinaryImage binarize(const GrayImage& img, int threshold);

// Gradient-based block ridge-flow angles, central differences with edge
// replication. Blocks with zero gradient energy report angle 0.
OrientationField estimate_orientation(const GrayImage& img, int block);

// Removes isolated pixels (no 8-neighbour).
BinaryImage morph_clean(const BinaryImage& img);
// Removes centres of exact H-bridges (both 3x3 H masks).
BinaryImage morph_hbreak(const BinaryImage& img);
// Removes endpoint pixels (exactly one 8-neighbour), iters times.
BinaryImage morph_spur(const BinaryImage& img, int iters);
// clean, then hbreak, then spur x spur_iters. Output subset of input.
BinaryImage morph_cleanup(const BinaryImage& img, int spur_iters);

}  // namespace fpbz
