#include "fpbz/pgm.hpp"

#include <cctype>
#include <string>

namespace fpbz {
namespace {

constexpr int kMaxDimension = 65535;

bool is_ws(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

// Header token scanner: skips whitespace and '#'-to-end-of-line comments.
struct TokenReader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  void skip_separators() {
    while (pos < bytes.size()) {
      if (is_ws(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  std::string next_token() {
    skip_separators();
    std::string tok;
    while (pos < bytes.size() && !is_ws(bytes[pos]) && bytes[pos] != '#') {
      tok.push_back(static_cast<char>(bytes[pos]));
      ++pos;
    }
    return tok;
  }
};

long parse_header_int(const std::string& tok, const char* what) {
  if (tok.empty()) {
    throw PgmParseError(PgmError::Truncated,
                        std::string("pgm: stream ended before ") + what);
  }
  long value = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw PgmParseError(PgmError::BadSample,
                          std::string("pgm: non-numeric ") + what + " '" + tok + "'");
    }
    value = value * 10 + (c - '0');
    if (value > 1000000L) break;  // cap before overflow; rejected below anyway
  }
  return value;
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  TokenReader rd{bytes};
  std::string magic = rd.next_token();
  if (magic != "P5" && magic != "P2") {
    throw PgmParseError(PgmError::BadMagic, "pgm: magic '" + magic + "' is not P5 or P2");
  }
  const bool binary = magic == "P5";

  long w = parse_header_int(rd.next_token(), "width");
  long h = parse_header_int(rd.next_token(), "height");
  if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension) {
    throw PgmParseError(PgmError::BadDimension,
                        "pgm: dimension " + std::to_string(w) + "x" + std::to_string(h) +
                            " outside 1..65535");
  }
  long maxval = parse_header_int(rd.next_token(), "maxval");
  if (maxval < 1 || maxval > 255) {
    throw PgmParseError(PgmError::BadMaxval,
                        "pgm: maxval " + std::to_string(maxval) + " not in 1..255");
  }

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  const std::size_t count = img.pixels.size();

  if (binary) {
    // Exactly one separator byte between the maxval token and the raster.
    if (rd.pos >= bytes.size() || !is_ws(bytes[rd.pos])) {
      throw PgmParseError(PgmError::Truncated, "pgm: missing raster after header");
    }
    ++rd.pos;
    if (bytes.size() - rd.pos < count) {
      throw PgmParseError(PgmError::Truncated,
                          "pgm: raster has " + std::to_string(bytes.size() - rd.pos) +
                              " bytes, needs " + std::to_string(count));
    }
    for (std::size_t i = 0; i < count; ++i) {
      img.pixels[i] = bytes[rd.pos + i];
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::string tok = rd.next_token();
      if (tok.empty()) {
        throw PgmParseError(PgmError::Truncated,
                            "pgm: raster ended at sample " + std::to_string(i) + " of " +
                                std::to_string(count));
      }
      long v = parse_header_int(tok, "sample");
      if (v > 255) {
        throw PgmParseError(PgmError::BadSample,
                            "pgm: sample value " + std::to_string(v) + " exceeds 255");
      }
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  std::string header = "P5\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.pixels.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

GrayImage binary_to_gray(const BinaryImage& mask, std::uint8_t fg, std::uint8_t bg) {
  if (fg == bg) {
    throw std::invalid_argument("binary_to_gray: foreground and background levels equal");
  }
  GrayImage out(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    out.pixels[i] = mask.bits[i] ? fg : bg;
  }
  return out;
}

}  // namespace fpbz
