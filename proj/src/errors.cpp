#include "sgate/errors.hpp"

namespace sgate {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Symbol: return "symbol";
    case ErrorKind::Preset: return "preset";
    case ErrorKind::Layout: return "layout";
    case ErrorKind::Certificate: return "certificate";
    case ErrorKind::SpectrumHit: return "spectrum_hit";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Translation: return "translation";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::NonConvergence: return "non_convergence";
  }
  return "unknown";
}

}  // namespace sgate
