#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fluidic {

/// Location of a token inside a source file. Lines and columns are 1-based.
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;
  /// Hierarchical cell/component path for netlist diagnostics ("top/u1").
  std::string path;
  /// Set when the diagnostic points into a source file.
  std::optional<SourceSpan> span;

  std::string to_string() const;
};

Diagnostic make_error(std::string message, std::string path = {});
Diagnostic make_error_at(std::string message, SourceSpan span);

bool has_errors(const std::vector<Diagnostic>& diags);
std::string format_diagnostics(const std::vector<Diagnostic>& diags);

} // namespace fluidic
