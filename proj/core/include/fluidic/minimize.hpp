#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace fluidic {

enum class TtVal : uint8_t { F0 = 0, F1 = 1, DC = 2 };

/// Single-output truth table over up to 16 variables. Row r assigns variable
/// i the bit value (r >> i) & 1.
struct TruthTable {
  int vars = 0;
  std::vector<TtVal> column; // size 1 << vars

  static TruthTable constant(int vars, TtVal v);
  uint32_t rows() const { return 1u << vars; }
  TtVal at(uint32_t row) const { return column[row]; }
  void set(uint32_t row, TtVal v) { column[row] = v; }
  bool operator==(const TruthTable&) const = default;
};

struct Literal {
  int var = 0;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

/// Product of literals; empty means the constant-true term.
struct Term {
  std::vector<Literal> lits; // sorted by var, one per var
  bool eval(uint32_t row) const;
  auto operator<=>(const Term&) const = default;
};

/// Sum of products. Empty term list is the constant-false cover.
struct CoverExpr {
  std::vector<Term> terms;
  bool eval(uint32_t row) const;
  int literal_count() const;
  bool operator==(const CoverExpr&) const = default;
};

/// Exact two-level minimization (Quine–McCluskey prime generation plus
/// branch-and-bound minimum cover). The result is prime and minimal in term
/// count, ties broken by fewer total literals then lexicographic order, and
/// agrees with the table on every non-dontcare row. Throws
/// Error{TooManyVariables} for more than 10 variables.
CoverExpr minimize(const TruthTable& table);

} // namespace fluidic
