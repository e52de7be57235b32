// Curve rasterization and overlap scoring between an extracted skeleton and
// its reconstruction.
#pragma once

#include <string>
#include <vector>

#include "fpbz/codec.hpp"
#include "fpbz/raster.hpp"

namespace fpbz {

struct OverlapReport {
  double forward_cover = 0.0;  // extracted pixels within tol of reconstruction
  double reverse_cover = 0.0;  // reconstructed pixels within tol of extraction
  double mean_dist = 0.0;      // over forward distances
  double max_dist = 0.0;
  double tol = 0.0;
};

// Samples each curve densely enough that consecutive samples move at most one
// pixel apart (sample count max(2, ceil(3 * control-polygon length) + 1), which
// bounds the step because the derivative never exceeds 3x the polygon length)
// and sets the nearest pixel per sample. The traced pixels of one curve are
// therefore 8-connected. Out-of-bounds samples are clipped silently.
BinaryImage rasterize(const CompressedFingerprint& cf);

// 255 background, 128 where exactly one mask is set, 0 where both are.
// Dimensions must match.
GrayImage superimpose(const BinaryImage& extracted, const BinaryImage& reconstructed);

// Exact squared Euclidean distance to the nearest foreground pixel, per pixel.
// Pixels of an all-background image get infinity.
std::vector<double> squared_distance_field(const BinaryImage& img);

// Exact nearest-foreground distances in both directions. An empty source set
// counts as fully covered; mean/max are over the forward distances.
OverlapReport overlap_metrics(const BinaryImage& extracted,
                              const BinaryImage& reconstructed, double tol);

// key: value lines.
std::string report_to_text(const OverlapReport& r);

}  // namespace fpbz
