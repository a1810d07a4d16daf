#include "hyperperc/error.hpp"

namespace hyperperc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hyperperc
