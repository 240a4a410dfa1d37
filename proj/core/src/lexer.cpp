#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace fluidic::detail {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  // '/' appears in hierarchical net names produced by flattening
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/';
}

bool suffix_scale(std::string_view suffix, double* scale) {
  if (suffix == "s") return *scale = 1.0, true;
  if (suffix == "ms") return *scale = 1e-3, true;
  if (suffix == "us") return *scale = 1e-6, true;
  if (suffix == "ns") return *scale = 1e-9, true;
  if (suffix == "Pa") return *scale = 1.0, true;
  if (suffix == "kPa") return *scale = 1e3, true;
  if (suffix == "MPa") return *scale = 1e6, true;
  return false;
}

} // namespace

std::vector<Line> tokenize(std::string_view text, std::string_view filename,
                           std::vector<Diagnostic>& diags) {
  std::vector<Line> lines;
  size_t pos = 0;
  int line_no = 1;

  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Line line;
    line.number = line_no;
    size_t i = 0;
    auto span_at = [&](size_t col, size_t len) {
      return SourceSpan{std::string(filename), line_no, static_cast<int>(col + 1),
                        static_cast<int>(len)};
    };

    while (i < raw.size()) {
      char c = raw[i];
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      if (c == '#') break; // comment to end of line

      if (ident_start(c)) {
        size_t start = i;
        while (i < raw.size() && ident_char(raw[i])) ++i;
        Token t;
        t.kind = Token::Kind::Ident;
        t.text = std::string(raw.substr(start, i - start));
        t.span = span_at(start, i - start);
        line.tokens.push_back(std::move(t));
        continue;
      }

      bool neg_number = c == '-' && i + 1 < raw.size() &&
                        (std::isdigit(static_cast<unsigned char>(raw[i + 1])) ||
                         raw[i + 1] == '.');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || neg_number ||
          (c == '+' && i + 1 < raw.size() &&
           std::isdigit(static_cast<unsigned char>(raw[i + 1])))) {
        size_t start = i;
        if (c == '+') ++i; // from_chars rejects a leading plus
        double value = 0.0;
        auto res = std::from_chars(raw.data() + i, raw.data() + raw.size(), value);
        if (res.ec != std::errc{}) {
          diags.push_back(
              make_error_at("malformed number", span_at(start, 1)));
          break; // skip rest of line
        }
        i = res.ptr - raw.data();
        Token t;
        t.kind = Token::Kind::Number;
        t.number = value;
        if (i < raw.size() && ident_start(raw[i])) {
          size_t sstart = i;
          while (i < raw.size() && ident_char(raw[i])) ++i;
          std::string_view suffix = raw.substr(sstart, i - sstart);
          double scale = 1.0;
          if (!suffix_scale(suffix, &scale)) {
            diags.push_back(make_error_at(
                "unknown unit suffix '" + std::string(suffix) + "'",
                span_at(sstart, suffix.size())));
            break;
          }
          t.scale = scale;
          t.has_suffix = true;
        }
        t.text = std::string(raw.substr(start, i - start));
        t.span = span_at(start, i - start);
        line.tokens.push_back(std::move(t));
        continue;
      }

      if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        Token t;
        t.kind = Token::Kind::Punct;
        t.text = "->";
        t.span = span_at(i, 2);
        line.tokens.push_back(std::move(t));
        i += 2;
        continue;
      }
      if (std::string_view("=,()!&|*@").find(c) != std::string_view::npos) {
        Token t;
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, c);
        t.span = span_at(i, 1);
        line.tokens.push_back(std::move(t));
        ++i;
        continue;
      }

      diags.push_back(make_error_at(
          std::string("unexpected character '") + c + "'", span_at(i, 1)));
      break; // skip rest of line
    }

    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line_no;
  }
  return lines;
}

} // namespace fluidic::detail
