#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qlo/polynomial.hpp"
#include "qlo/trace.hpp"

namespace qlo {

struct GrowthRow {
  Rational lambda;
  BigInt count;
  friend bool operator==(const GrowthRow&, const GrowthRow&) = default;
};

// Distinct weight levels lambda_0 = 0 < lambda_1 < ... <= cutoff realised by
// P, with their multiplicities.
struct GrowthTable {
  std::vector<GrowthRow> rows;
  Rational cutoff;

  BigInt total() const;
  friend bool operator==(const GrowthTable&, const GrowthTable&) = default;
};

// All nonempty cliques of the commutation graph, ascending as bitmasks.
std::vector<LetterSet> nonempty_cliques(const IndependenceGraph& g);

// Successor relation on Foata blocks: next[i] lists the cliques that may follow
// cliques[i] in a normal form.
struct CliqueAutomaton {
  std::vector<LetterSet> cliques;
  std::vector<std::int64_t> units;
  std::vector<std::vector<int>> next;
  std::vector<std::vector<int>> prev;
};
CliqueAutomaton clique_automaton(const IndependenceGraph& g);

// Visits every trace of weight <= cutoff exactly once (DFS order).
void for_each_up_to(const GraphPtr& g, const Rational& cutoff,
                    const std::function<void(const Trace&)>& visit);

// Every trace of weight <= cutoff, sorted by canonical_less.
std::vector<Trace> enumerate_up_to(const GraphPtr& g, const Rational& cutoff);

// Counts per lattice weight level k/scale, k = 0..cutoff_units.
std::vector<BigInt> growth_counts(const IndependenceGraph& g, const Rational& cutoff);
GrowthTable growth_table(const IndependenceGraph& g, const Rational& cutoff);
GrowthTable table_from_counts(const IndependenceGraph& g, const std::vector<BigInt>& counts,
                              const Rational& cutoff);

WeightedPolynomial clique_polynomial(const IndependenceGraph& g);

struct InversionMismatch {
  Rational lambda;
  BigInt series_coefficient;
  BigInt growth_count;
};

struct InversionReport {
  bool match = true;
  std::optional<InversionMismatch> first_mismatch;
};

InversionReport verify_inversion(const IndependenceGraph& g, const Rational& cutoff);

bool is_lattice_ordered(const IndependenceGraph& g);

// Single-threaded reference versions of the parallel kernels above.
namespace serial {
std::vector<Trace> enumerate_up_to(const GraphPtr& g, const Rational& cutoff);
std::vector<BigInt> growth_counts(const IndependenceGraph& g, const Rational& cutoff);
}  // namespace serial

}  // namespace qlo
