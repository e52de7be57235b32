#pragma once

#include <stdexcept>
#include <string>

namespace fpbz {

enum class PgmError {
  BadMagic,
  BadMaxval,
  BadDimension,
  Truncated,
  BadSample,
};

class PgmParseError : public std::runtime_error {
 public:
  PgmParseError(PgmError kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  PgmError kind() const { return kind_; }

 private:
  PgmError kind_;
};

enum class CodecError {
  BadMagic,
  UnsupportedVersion,
  Truncated,
  TrailingBytes,
  CoordinateOverflow,
};

class CodecFormatError : public std::runtime_error {
 public:
  CodecFormatError(CodecError kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  CodecError kind() const { return kind_; }

 private:
  CodecError kind_;
};

}  // namespace fpbz
