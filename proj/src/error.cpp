#include "vortexmix/error.hpp"

namespace vortexmix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Containment: return "containment error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Sampling: return "sampling error";
    case ErrorKind::Extraction: return "extraction error";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::UnphysicalScenario: return "unphysical scenario";
    case ErrorKind::UndefinedPhase: return "undefined phase";
    case ErrorKind::InconsistentInterferogram: return "inconsistent interferogram";
    case ErrorKind::NoFringe: return "no fringes";
    case ErrorKind::UndefinedRotation: return "undefined rotation";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

}  // namespace vortexmix
