#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace horncore {

using Index = std::int64_t;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or dimension contract violated by an operation's arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration file, preset name or run option.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File format or filesystem failure (checkpoints, datasets, images).
class IoError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline void require_shape(bool cond, const std::string& msg) {
  if (!cond) throw ShapeError(msg);
}

}  // namespace horncore
