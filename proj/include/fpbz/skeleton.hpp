// Two-subiteration checkerboard thinning and crossing-number minutiae.
//
// Neighbour numbering around p, 1-based and counter-clockwise starting east:
//   x4 x3 x2
//   x5  p x1
//   x6 x7 x8
// Indices are cyclic: x9 means x1. Out-of-image neighbours read as 0.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fpbz/raster.hpp"

namespace fpbz {

struct Neighborhood {
  std::array<std::uint8_t, 8> x{};  // x[0] = x1 ... x[7] = x8

  std::uint8_t get(int i) const { return x[(i - 1) & 7]; }  // 1-based, cyclic
};

Neighborhood neighborhood_at(const BinaryImage& img, int x, int y);

// G1: exactly one 0->1 transition pattern, counted as
//   b_i = 1 iff x_{2i-1} = 0 and (x_{2i} = 1 or x_{2i+1} = 1), i = 1..4.
bool condition_g1(const Neighborhood& n);
// G2: 2 <= min(n1, n2) <= 3 with the paired neighbour counts.
bool condition_g2(const Neighborhood& n);
// G3:  (x2 | x3 | ~x8) & x1 == 0
bool condition_g3(const Neighborhood& n);
// G3': G3 rotated 180 degrees: (x6 | x7 | ~x4) & x5 == 0
bool condition_g3_prime(const Neighborhood& n);

// Deletes, per full iteration, first the pixels satisfying G1 & G2 & G3,
// then those satisfying G1 & G2 & G3'. Each subiteration decides on a
// snapshot of the image and applies deletions afterwards. The directional
// conditions alone can leave solid 2x2 blocks (junction pixels fail G1,
// pixels with both horizontal neighbours fail G3 and G3'), so iterations
// alternate with a block-cleanup sweep that removes one component-count
// preserving member per remaining block. Runs to a joint fixpoint: output
// is a subset of the input, idempotent, component-count preserving, and
// free of fully-foreground 2x2 squares.
BinaryImage thin(const BinaryImage& img);

// CN(p) = half the cyclic absolute-difference sum around p. Throws
// std::invalid_argument if (x, y) is not foreground.
int crossing_number(const BinaryImage& img, int x, int y);

enum class MinutiaKind { Ending, Bifurcation };

struct MinutiaPoint {
  int x = 0;
  int y = 0;
  MinutiaKind kind = MinutiaKind::Ending;
  bool operator==(const MinutiaPoint&) const = default;
};

// CN = 1 -> ending, CN >= 3 -> bifurcation, scanned row-major. Pixels within
// one pixel of the image edge are excluded.
std::vector<MinutiaPoint> find_minutiae(const BinaryImage& skeleton);

}  // namespace fpbz
