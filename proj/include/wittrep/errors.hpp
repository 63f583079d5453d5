#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wittrep {

/// Malformed descriptor text, mismatched operands or other caller mistakes.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size bound.
class BoundExceeded : public std::runtime_error {
public:
  BoundExceeded(const std::string& what, std::uint64_t required, std::uint64_t bound)
      : std::runtime_error(what + " (requires " + std::to_string(required) +
                           ", bound " + std::to_string(bound) + ")"),
        required_(required), bound_(bound) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t bound() const noexcept { return bound_; }

private:
  std::uint64_t required_;
  std::uint64_t bound_;
};

/// Something that must hold mathematically did not.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Randomized eigenspace splitting made no progress; retry with another seed.
class SplittingStalled : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace wittrep
