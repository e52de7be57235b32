// Splits a skeleton into individual ridge components and orders each one into
// a traversal path.
#pragma once

#include <string>
#include <vector>

#include "fpbz/raster.hpp"
#include "fpbz/skeleton.hpp"

namespace fpbz {

// Pixels of one connected component, sorted row-major.
using PixelSet = std::vector<Pixel>;

// Ordered ridge traversal: consecutive entries 8-adjacent, no repeats,
// length >= 2.
using RidgePath = std::vector<Pixel>;

// Clears bifurcation minutiae pixels; endings are left alone.
BinaryImage disconnect_at_minutiae(const BinaryImage& skeleton,
                                   const std::vector<MinutiaPoint>& minutiae);

// 8-connected components ordered by their smallest row-major pixel index.
// Components with fewer than min_ridge_px pixels are dropped.
std::vector<PixelSet> label_components(const BinaryImage& img, int min_ridge_px);

// Walks the component from its endpoint with the smallest row-major index
// (closed loops are cut at the smallest row-major pixel). At a fork the
// continuation with the smallest turning from the current heading wins;
// remaining ties go to the smallest row-major index. Throws
// std::invalid_argument for components smaller than 2 pixels.
RidgePath order_ridge_pixels(const PixelSet& component);

// One text line per ridge: "id: (x,y) (x,y) ...".
std::string dump_ridges(const std::vector<RidgePath>& ridges);

}  // namespace fpbz
