#pragma once

#include <stdexcept>
#include <string>

namespace xspectral {

/// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input image has the wrong width/height/channel count for an operation.
struct DimensionError : Error {
  using Error::Error;
};

/// A NIR/VIS twin required by the dataset layout is missing.
struct PairingError : Error {
  using Error::Error;
};

/// Malformed file name, CSV row, or config field.
struct ParseError : Error {
  using Error::Error;
};

/// A stage was started without its prerequisite artifacts.
struct PrerequisiteError : Error {
  using Error::Error;
};

}  // namespace xspectral
