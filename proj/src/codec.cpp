#include "fpbz/codec.hpp"

#include <cmath>
#include <string>

namespace fpbz {
namespace {

constexpr std::int64_t kFixedMax = (std::int64_t{1} << 23) - 1;
constexpr std::int64_t kFixedMin = -(std::int64_t{1} << 23);

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

void put_s32(std::vector<std::uint8_t>& out, std::int32_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::int32_t get_s32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::int32_t>(get_u32(b, off));
}

}  // namespace

std::int32_t to_fixed(double coord) {
  if (!std::isfinite(coord)) {
    throw CodecFormatError(CodecError::CoordinateOverflow,
                           "codec: non-finite coordinate");
  }
  const long long fixed = std::llround(coord * 256.0);
  if (fixed < kFixedMin || fixed > kFixedMax) {
    throw CodecFormatError(CodecError::CoordinateOverflow,
                           "codec: coordinate " + std::to_string(coord) +
                               " outside the 24.8 fixed-point range");
  }
  return static_cast<std::int32_t>(fixed);
}

double from_fixed(std::int32_t fixed) {
  return static_cast<double>(fixed) / 256.0;
}

std::vector<std::uint8_t> encode(const CompressedFingerprint& cf) {
  std::vector<std::uint8_t> out;
  out.reserve(kCodecHeaderSize + kCodecRidgeSize * cf.ridges.size());
  out.push_back('F');
  out.push_back('P');
  out.push_back('B');
  out.push_back('Z');
  out.push_back(1);  // version
  out.push_back(0);  // reserved
  put_u16(out, cf.width);
  put_u16(out, cf.height);
  put_u32(out, static_cast<std::uint32_t>(cf.ridges.size()));
  for (const CubicBezier& c : cf.ridges) {
    for (const Point2* p : {&c.p0, &c.p1, &c.p2, &c.p3}) {
      put_s32(out, to_fixed(p->x));
      put_s32(out, to_fixed(p->y));
    }
  }
  return out;
}

CompressedFingerprint decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 &&
      !(bytes[0] == 'F' && bytes[1] == 'P' && bytes[2] == 'B' && bytes[3] == 'Z')) {
    throw CodecFormatError(CodecError::BadMagic, "codec: bad magic");
  }
  if (bytes.size() < kCodecHeaderSize) {
    throw CodecFormatError(CodecError::Truncated,
                           "codec: truncated at offset " + std::to_string(bytes.size()) +
                               ", header needs " + std::to_string(kCodecHeaderSize) +
                               " bytes");
  }
  if (bytes[4] != 1) {
    throw CodecFormatError(CodecError::UnsupportedVersion,
                           "codec: unsupported version " + std::to_string(bytes[4]));
  }
  CompressedFingerprint cf;
  cf.width = get_u16(bytes, 6);
  cf.height = get_u16(bytes, 8);
  const std::uint32_t count = get_u32(bytes, 10);
  const std::size_t expected = kCodecHeaderSize + kCodecRidgeSize * static_cast<std::size_t>(count);
  if (bytes.size() < expected) {
    throw CodecFormatError(CodecError::Truncated,
                           "codec: truncated at offset " + std::to_string(bytes.size()) +
                               ", expected " + std::to_string(expected) + " bytes");
  }
  if (bytes.size() > expected) {
    throw CodecFormatError(CodecError::TrailingBytes,
                           "codec: " + std::to_string(bytes.size() - expected) +
                               " trailing bytes after " + std::to_string(expected));
  }
  cf.ridges.reserve(count);
  std::size_t off = kCodecHeaderSize;
  for (std::uint32_t i = 0; i < count; ++i) {
    CubicBezier c;
    for (Point2* p : {&c.p0, &c.p1, &c.p2, &c.p3}) {
      p->x = from_fixed(get_s32(bytes, off));
      p->y = from_fixed(get_s32(bytes, off + 4));
      off += 8;
    }
    cf.ridges.push_back(c);
  }
  return cf;
}

double compression_stats(std::uint64_t original_bytes, std::uint64_t compressed_bytes) {
  if (original_bytes == 0 || compressed_bytes == 0) {
    throw std::invalid_argument("compression_stats: zero byte count");
  }
  return static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
}

}  // namespace fpbz
