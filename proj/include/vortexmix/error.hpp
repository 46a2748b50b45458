#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortexmix {

enum class ErrorKind {
  Parameter,
  Containment,
  Shape,
  Sampling,
  Extraction,
  DegenerateInput,
  UnphysicalScenario,
  UndefinedPhase,
  InconsistentInterferogram,
  NoFringe,
  UndefinedRotation,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vortexmix
