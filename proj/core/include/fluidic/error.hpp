#pragma once

#include <stdexcept>
#include <string>

namespace fluidic {

/// Failure categories raised by operations whose preconditions are violated
/// or that hit an unrecoverable condition mid-run. Recoverable input problems
/// are reported as Diagnostic values instead (see diag.hpp).
enum class Errc {
  UnknownCell,
  BehavioralAtValveLevel,
  NotFlattened,
  ArityMismatch,
  OscillationAtInstant,
  FloatingNode,
  NonConvergence,
  TooManyVariables,
  NandFanInExceeded,
  UnknownNet,
  InvalidNetlist,
  InvalidArgument,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

const char* errc_name(Errc code);

} // namespace fluidic
