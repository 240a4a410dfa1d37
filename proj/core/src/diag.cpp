#include "fluidic/diag.hpp"

#include "fluidic/error.hpp"

#include <sstream>

namespace fluidic {

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  if (span) {
    os << span->file << ":" << span->line << ":" << span->column << ": ";
  }
  os << (severity == Severity::Error ? "error: " : "warning: ");
  os << message;
  if (!path.empty()) {
    os << " [" << path << "]";
  }
  return os.str();
}

Diagnostic make_error(std::string message, std::string path) {
  Diagnostic d;
  d.message = std::move(message);
  d.path = std::move(path);
  return d;
}

Diagnostic make_error_at(std::string message, SourceSpan span) {
  Diagnostic d;
  d.message = std::move(message);
  d.span = std::move(span);
  return d;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Diagnostic::Severity::Error) return true;
  }
  return false;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    out += d.to_string();
    out += '\n';
  }
  return out;
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownCell: return "UnknownCell";
    case Errc::BehavioralAtValveLevel: return "BehavioralAtValveLevel";
    case Errc::NotFlattened: return "NotFlattened";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::OscillationAtInstant: return "OscillationAtInstant";
    case Errc::FloatingNode: return "FloatingNode";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::NandFanInExceeded: return "NandFanInExceeded";
    case Errc::UnknownNet: return "UnknownNet";
    case Errc::InvalidNetlist: return "InvalidNetlist";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

} // namespace fluidic
