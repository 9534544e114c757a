#pragma once

#include <stdexcept>
#include <string>

namespace repfield {

// Mismatched ring tags, precisions, or dimensions.
class TypeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Caller violated a documented precondition (non-Howell input, non-unital algebra, ...).
class PreconditionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// An enumeration would exceed the configured cap.
class ResourceError : public std::runtime_error {
  public:
    ResourceError(const std::string& what, unsigned long long needed, unsigned long long cap)
        : std::runtime_error(what + " (needs " + std::to_string(needed) + ", cap " + std::to_string(cap) + ")"),
          needed_(needed), cap_(cap) {}

    unsigned long long needed() const noexcept { return needed_; }
    unsigned long long cap() const noexcept { return cap_; }

  private:
    unsigned long long needed_;
    unsigned long long cap_;
};

// Bad user-supplied configuration, or a field embedding that cannot be built.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace repfield
