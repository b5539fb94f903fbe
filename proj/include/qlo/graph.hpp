#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlo/rational.hpp"

namespace qlo {

using Generator = int;
// Set of generators as a bitmask; graphs are limited to 64 generators.
using LetterSet = std::uint64_t;

inline constexpr std::size_t kMaxGenerators = 64;

inline LetterSet letter_bit(Generator s) { return LetterSet{1} << s; }
inline int popcount(LetterSet set) { return std::popcount(set); }

template <typename Fn>
void for_each_letter(LetterSet set, Fn&& fn) {
  while (set != 0) {
    fn(static_cast<Generator>(std::countr_zero(set)));
    set &= set - 1;
  }
}

// Weighted commutation graph of a right-angled Artin monoid. Two generators
// commute iff they are joined by an edge. Weights w(s) = log N(s) are exact
// positive rationals, stored internally as integers on the lattice (1/scale)Z.
class IndependenceGraph {
 public:
  static std::shared_ptr<const IndependenceGraph> build(
      std::vector<std::string> names, std::vector<Rational> weights,
      const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return names_.size(); }
  LetterSet all_letters() const {
    return size() == 64 ? ~LetterSet{0} : (LetterSet{1} << size()) - 1;
  }

  const std::string& name(Generator s) const { return names_[static_cast<std::size_t>(s)]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Generator> find(std::string_view name) const;

  const Rational& weight(Generator s) const { return weights_[static_cast<std::size_t>(s)]; }
  const std::vector<Rational>& weights() const { return weights_; }
  // w(s) * scale(), an exact positive integer.
  std::int64_t weight_units(Generator s) const { return units_[static_cast<std::size_t>(s)]; }
  // lcm of the weight denominators.
  std::int64_t scale() const { return scale_; }
  Rational units_to_rational(std::int64_t units) const { return make_rational(units, scale_); }
  double units_to_double(std::int64_t units) const {
    return static_cast<double>(units) / static_cast<double>(scale_);
  }
  std::int64_t min_weight_units() const;
  std::int64_t set_weight_units(LetterSet set) const;

  // Generators commuting with s (s itself excluded).
  LetterSet neighbors(Generator s) const { return adjacency_[static_cast<std::size_t>(s)]; }
  // Generators that do not commute with s, including s itself.
  LetterSet dependents(Generator s) const { return all_letters() & ~neighbors(s); }
  bool commute(Generator s, Generator r) const { return (neighbors(s) & letter_bit(r)) != 0; }
  bool is_clique(LetterSet set) const;
  bool is_complete() const;

  std::vector<std::pair<Generator, Generator>> edges() const;

  friend bool operator==(const IndependenceGraph& a, const IndependenceGraph& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_ && a.adjacency_ == b.adjacency_;
  }

 private:
  IndependenceGraph() = default;

  std::vector<std::string> names_;
  std::vector<Rational> weights_;
  std::vector<std::int64_t> units_;
  std::vector<LetterSet> adjacency_;
  std::int64_t scale_ = 1;
};

using GraphPtr = std::shared_ptr<const IndependenceGraph>;

GraphPtr build_graph(std::vector<std::string> generators, std::vector<Rational> weights,
                     const std::vector<std::pair<std::string, std::string>>& edges);

// Default generator names: a, b, ..., z, then s26, s27, ...
std::string default_generator_name(std::size_t index);

namespace presets {

GraphPtr free_monoid(std::size_t n);
GraphPtr free_abelian(std::size_t k);
GraphPtr path(std::size_t n);
GraphPtr cycle(std::size_t n);
// Unit-weight graph on n vertices from an explicit edge mask over all pairs i<j
// (pair index enumerates (0,1),(0,2),...,(n-2,n-1)).
GraphPtr from_pair_mask(std::size_t n, std::uint64_t pair_mask);
// "free:n", "abelian:k", "path:n", "cycle:n".
GraphPtr parse(std::string_view spec);

}  // namespace presets

}  // namespace qlo
