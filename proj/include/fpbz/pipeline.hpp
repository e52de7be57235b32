// End-to-end compression pipeline and its configuration.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpbz/codec.hpp"
#include "fpbz/preprocess.hpp"
#include "fpbz/ridge_extract.hpp"

namespace fpbz {

struct PipelineConfig {
  int fft_block = 32;
  double fft_k = 0.45;
  int threshold = kAutoThreshold;  // 0..255, or kAutoThreshold
  int orientation_block = 16;
  int spur_iters = 3;
  int min_ridge_px = 4;
  double tol = 2.0;
};

// Throws std::invalid_argument when a field is out of range.
void validate_config(const PipelineConfig& cfg);

// Parses "key=value" lines ('#' comments and blank lines allowed) and applies
// them on top of cfg. Known keys: fft_block, fft_k, threshold (integer or
// "auto"), orientation_block, spur_iters, min_ridge_px, tol. Unknown keys are
// an error.
void apply_config_text(PipelineConfig& cfg, const std::string& text);
void apply_config_file(PipelineConfig& cfg, const std::string& path);

// Intermediates, filled when a stage sink is passed to compress_image.
// Stages skipped by skip_preprocess stay empty.
struct PipelineStages {
  GrayImage equalized;
  GrayImage enhanced;
  BinaryImage binarized;
  OrientationField orientation;
  BinaryImage cleaned;
  BinaryImage skeleton;
  BinaryImage separated;  // skeleton with bifurcations removed
};

struct CompressionResult {
  CompressedFingerprint compressed;
  std::vector<RidgePath> ridges;
  std::vector<MinutiaPoint> minutiae;
};

// Full chain: equalize, enhance, binarize, orientation (diagnostic), cleanup,
// thin, minutiae, disconnect, label, order, fit. With skip_preprocess the
// input is taken as an already-binary skeleton image (pixel < 128 means
// foreground) and the gray stages are bypassed.
CompressionResult compress_image(const GrayImage& img, const PipelineConfig& cfg,
                                 bool skip_preprocess = false,
                                 PipelineStages* stages = nullptr);

// Union of the path pixels as a mask.
BinaryImage render_paths(int width, int height, const std::vector<RidgePath>& ridges);

}  // namespace fpbz
