#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gossipage {

/// Invalid topology parameters, malformed configs, preconditions.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exact computation would exceed its configured state cap.
/// Carries the number of states reached before giving up.
class cap_exceeded_error : public std::runtime_error {
public:
  cap_exceeded_error(const std::string& what, std::size_t reached)
      : std::runtime_error(what + " (reached " + std::to_string(reached) + " states)"),
        reached_(reached) {}

  std::size_t reached() const noexcept { return reached_; }

private:
  std::size_t reached_;
};

} // namespace gossipage
