#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fluidic/diag.hpp"

namespace fluidic::detail {

struct Token {
  enum class Kind { Ident, Number, Punct };
  Kind kind = Kind::Ident;
  std::string text;    // identifier or punctuation spelling
  double number = 0.0; // raw numeric value, unscaled
  double scale = 1.0;  // unit suffix multiplier (to SI)
  bool has_suffix = false;
  SourceSpan span;

  bool is_punct(std::string_view p) const {
    return kind == Kind::Punct && text == p;
  }
  bool is_ident() const { return kind == Kind::Ident; }
  bool is_number() const { return kind == Kind::Number; }
  /// Numeric value scaled to SI units.
  double si() const { return number * scale; }
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

/// Line-oriented tokenizer shared by all frontends: '#' comments,
/// identifiers [A-Za-z_][A-Za-z0-9_]*, numbers with optional SI suffix
/// (s, ms, us, ns, Pa, kPa, MPa), punctuation = , -> ( ) ! & | * @.
/// Lexical errors are reported and the rest of the line is skipped; the
/// tokenizer accepts any byte sequence without crashing.
std::vector<Line> tokenize(std::string_view text, std::string_view filename,
                           std::vector<Diagnostic>& diags);

} // namespace fluidic::detail
