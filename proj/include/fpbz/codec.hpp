// Container format for compressed fingerprints.
//
// Layout, all integers little-endian:
//   bytes 0..3   magic "FPBZ"
//   byte  4      version (1)
//   byte  5      reserved (0)
//   bytes 6..7   image width   (u16)
//   bytes 8..9   image height  (u16)
//   bytes 10..13 ridge count n (u32)
//   then n * 32 bytes: per ridge the four control points p0..p3, each as
//   x then y, each an s32 fixed-point value with 8 fractional bits (24.8).
// Total size is exactly 14 + 32 n.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpbz/bezier.hpp"
#include "fpbz/errors.hpp"

namespace fpbz {

inline constexpr std::size_t kCodecHeaderSize = 14;
inline constexpr std::size_t kCodecRidgeSize = 32;

struct CompressedFingerprint {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::vector<CubicBezier> ridges;
  bool operator==(const CompressedFingerprint&) const = default;
};

// Quantization to 24.8: round(coord * 256). Throws CodecFormatError
// (CoordinateOverflow) when the result leaves the signed 24-bit integer range.
std::int32_t to_fixed(double coord);
double from_fixed(std::int32_t fixed);

std::vector<std::uint8_t> encode(const CompressedFingerprint& cf);

// Strict inverse of encode. Throws CodecFormatError; kinds: BadMagic,
// UnsupportedVersion, Truncated (message names the offset where data ran
// out), TrailingBytes.
CompressedFingerprint decode(std::span<const std::uint8_t> bytes);

// original / compressed. Throws std::invalid_argument if either is zero.
double compression_stats(std::uint64_t original_bytes, std::uint64_t compressed_bytes);

}  // namespace fpbz
