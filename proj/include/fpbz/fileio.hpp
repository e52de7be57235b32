#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fpbz {

// Whole-file helpers. Both throw std::runtime_error on I/O failure.
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace fpbz
