#pragma once

#include <stdexcept>
#include <string>

namespace mcms {

/// Invalid user input: malformed configuration, seed off an admissible ray.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold exactly did not.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant (arithmetic bug, inconsistent construction).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcms
