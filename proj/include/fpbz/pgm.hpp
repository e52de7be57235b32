// PGM (P5 binary / P2 ASCII) reading and writing, maxval up to 255.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpbz/errors.hpp"
#include "fpbz/raster.hpp"

namespace fpbz {

// Parses a P5 or P2 stream. '#' comment lines are allowed between header
// tokens. Throws PgmParseError; kinds: BadMagic, BadMaxval, BadDimension,
// Truncated, BadSample.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

// Serializes as binary P5 with maxval 255: "P5\n<w> <h>\n255\n" + raw rows.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

// Renders a mask as a gray image. fg and bg must differ.
GrayImage binary_to_gray(const BinaryImage& mask, std::uint8_t fg, std::uint8_t bg);

}  // namespace fpbz
