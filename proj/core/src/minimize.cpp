#include "fluidic/minimize.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <set>

#include "fluidic/error.hpp"

namespace fluidic {

TruthTable TruthTable::constant(int vars, TtVal v) {
  TruthTable t;
  t.vars = vars;
  t.column.assign(1u << vars, v);
  return t;
}

bool Term::eval(uint32_t row) const {
  for (const auto& lit : lits) {
    bool bit = (row >> lit.var) & 1u;
    if (bit != lit.positive) return false;
  }
  return true;
}

bool CoverExpr::eval(uint32_t row) const {
  for (const auto& t : terms) {
    if (t.eval(row)) return true;
  }
  return false;
}

int CoverExpr::literal_count() const {
  int n = 0;
  for (const auto& t : terms) n += static_cast<int>(t.lits.size());
  return n;
}

namespace {

// Implicant over n vars: `mask` bits mark eliminated positions, `bits` holds
// the fixed values on the remaining ones (zero where masked).
struct Implicant {
  uint32_t bits = 0;
  uint32_t mask = 0;
  auto operator<=>(const Implicant&) const = default;
  bool covers(uint32_t row) const { return (row & ~mask) == bits; }
};

Term implicant_to_term(const Implicant& imp, int vars) {
  Term t;
  for (int v = 0; v < vars; ++v) {
    uint32_t bit = 1u << v;
    if (imp.mask & bit) continue;
    t.lits.push_back({v, (imp.bits & bit) != 0});
  }
  return t;
}

// Classic merge table: combine implicants differing in one care bit until no
// combination is possible; the uncombined ones are prime.
std::vector<Implicant> prime_implicants(const TruthTable& tt) {
  std::set<Implicant> current;
  for (uint32_t row = 0; row < tt.rows(); ++row) {
    if (tt.at(row) != TtVal::F0) current.insert({row, 0});
  }

  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> combined;
    for (auto it = current.begin(); it != current.end(); ++it) {
      for (auto jt = std::next(it); jt != current.end(); ++jt) {
        if (it->mask != jt->mask) continue;
        uint32_t diff = it->bits ^ jt->bits;
        if (diff == 0 || (diff & (diff - 1)) != 0) continue;
        next.insert({it->bits & jt->bits, it->mask | diff});
        combined.insert(*it);
        combined.insert(*jt);
      }
    }
    for (const auto& imp : current) {
      if (!combined.count(imp)) primes.push_back(imp);
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

// Exact minimum unate cover by branch and bound over the prime chart.
// Cost order: term count, then total literals, then lexicographic prime
// set. Equal-cost branches are explored so the tiebreak is exact.
struct CoverSearch {
  const std::vector<int>& literal_cost;        // per prime
  const std::vector<std::vector<int>>& prime_rows; // per prime: ON rows hit
  const std::vector<std::vector<int>>& row_primes; // per ON row: candidates

  std::vector<int> chosen;
  std::vector<int> cover_count;
  int best_terms = INT_MAX;
  int best_literals = INT_MAX;
  std::vector<int> best_set;

  // Rows whose candidate prime sets are pairwise disjoint each need their
  // own prime; the count is a valid lower bound on the remaining terms.
  int remaining_lower_bound() const {
    std::vector<char> used(literal_cost.size(), 0);
    int bound = 0;
    for (size_t r = 0; r < row_primes.size(); ++r) {
      if (cover_count[r] > 0) continue;
      bool disjoint = true;
      for (int p : row_primes[r]) {
        if (used[p]) disjoint = false;
      }
      if (!disjoint) continue;
      for (int p : row_primes[r]) used[p] = 1;
      ++bound;
    }
    return bound;
  }

  void descend(int terms, int literals) {
    if (terms > best_terms) return;
    if (terms == best_terms && literals > best_literals) return;
    if (terms + remaining_lower_bound() > best_terms) return;

    int pick = -1;
    size_t fewest = SIZE_MAX;
    for (size_t r = 0; r < row_primes.size(); ++r) {
      if (cover_count[r] > 0) continue;
      if (row_primes[r].size() < fewest) {
        fewest = row_primes[r].size();
        pick = static_cast<int>(r);
      }
    }
    if (pick < 0) { // complete cover
      std::vector<int> key = chosen;
      std::sort(key.begin(), key.end());
      if (terms < best_terms ||
          (terms == best_terms &&
           (literals < best_literals ||
            (literals == best_literals && key < best_set)))) {
        best_terms = terms;
        best_literals = literals;
        best_set = std::move(key);
      }
      return;
    }
    if (terms + 1 > best_terms) return; // any extension needs one more term

    for (int p : row_primes[pick]) {
      chosen.push_back(p);
      for (int r : prime_rows[p]) ++cover_count[r];
      descend(terms + 1, literals + literal_cost[p]);
      for (int r : prime_rows[p]) --cover_count[r];
      chosen.pop_back();
    }
  }
};

} // namespace

CoverExpr minimize(const TruthTable& table) {
  if (table.vars > 10)
    throw Error(Errc::TooManyVariables,
                "exact minimization is limited to 10 variables, got " +
                    std::to_string(table.vars));
  if (table.column.size() != table.rows())
    throw Error(Errc::InvalidArgument, "truth table column length mismatch");

  std::vector<uint32_t> on_rows;
  for (uint32_t row = 0; row < table.rows(); ++row) {
    if (table.at(row) == TtVal::F1) on_rows.push_back(row);
  }
  if (on_rows.empty()) return {};

  std::vector<Implicant> primes = prime_implicants(table);

  std::vector<int> literal_cost(primes.size());
  std::vector<std::vector<int>> prime_rows(primes.size());
  std::vector<std::vector<int>> row_primes(on_rows.size());
  for (size_t p = 0; p < primes.size(); ++p) {
    literal_cost[p] = table.vars - std::popcount(primes[p].mask);
    for (size_t r = 0; r < on_rows.size(); ++r) {
      if (primes[p].covers(on_rows[r])) {
        prime_rows[p].push_back(static_cast<int>(r));
        row_primes[r].push_back(static_cast<int>(p));
      }
    }
  }

  CoverSearch search{literal_cost, prime_rows, row_primes,
                     {}, std::vector<int>(on_rows.size(), 0),
                     INT_MAX, INT_MAX, {}};
  search.descend(0, 0);

  CoverExpr cover;
  for (int p : search.best_set)
    cover.terms.push_back(implicant_to_term(primes[p], table.vars));
  std::sort(cover.terms.begin(), cover.terms.end());
  return cover;
}

} // namespace fluidic
