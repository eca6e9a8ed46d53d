#pragma once

#include <stdexcept>
#include <string>

namespace gwdk {

// Every failure raised by the library carries a short machine-readable code
// ("precondition", "config", "io", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error("precondition", message) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& message) : Error("singularity", message) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace gwdk
