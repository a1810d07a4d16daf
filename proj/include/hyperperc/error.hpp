#pragma once

#include <stdexcept>
#include <string>

namespace hyperperc {

enum class ErrorKind {
  Degenerate,
  CapExceeded,
  DegenerateInput,
  NotInterior,
  NotHyperbolic,
  TooLarge,
  Disconnected,
  NoCrossing,
  InsufficientData,
  OriginNotInterior,
  Config,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hyperperc
