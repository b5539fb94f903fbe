#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlo/graph.hpp"

namespace qlo {

// Monoid element in Foata normal form: a sequence of cliques B_1..B_k such that
// every letter of B_{i+1} fails to commute with some letter of B_i (or repeats
// one of them). The empty sequence is the identity e.
class Trace {
 public:
  explicit Trace(GraphPtr graph) : graph_(std::move(graph)) {}

  static Trace identity(GraphPtr graph) { return Trace(std::move(graph)); }
  static Trace letter(GraphPtr graph, Generator s);

  const GraphPtr& graph() const { return graph_; }
  const std::vector<LetterSet>& blocks() const { return blocks_; }
  bool is_identity() const { return blocks_.empty(); }
  std::size_t length() const { return length_; }
  std::int64_t weight_units() const { return weight_units_; }
  Rational weight() const { return graph_->units_to_rational(weight_units_); }
  double weight_double() const { return graph_->units_to_double(weight_units_); }
  LetterSet alphabet() const;

  // Blocks in order, letters ascending inside each block.
  std::vector<Generator> word() const;

  // Right-multiplies by one letter (heap insertion).
  void push_back(Generator s);

  friend bool operator==(const Trace& a, const Trace& b);

 private:
  GraphPtr graph_;
  std::vector<LetterSet> blocks_;
  std::int64_t weight_units_ = 0;
  std::size_t length_ = 0;

  friend Trace left_quotient(const Trace& p, const Trace& x);
};

bool same_graph(const Trace& a, const Trace& b);

Trace normalize(const GraphPtr& graph, std::span<const Generator> word);
// Words are written as generator names; single-character names may be
// concatenated ("abc"), otherwise separate names by spaces. "e" or "" is the identity.
Trace parse_trace(const GraphPtr& graph, std::string_view text);
// Blocks rendered as "[a,b][c]"; the identity renders as "e".
std::string to_string(const Trace& t);
// Word rendering with spaces between letters; "e" for the identity.
std::string to_word_string(const Trace& t);

Trace multiply(const Trace& p, const Trace& q);
bool divides(const Trace& p, const Trace& x);
Trace left_quotient(const Trace& p, const Trace& x);
LetterSet min_letters(const Trace& p);
// p (q^{-1} x); q must divide x.
Trace replace_prefix(const Trace& q, const Trace& p, const Trace& x);

class JoinResult {
 public:
  static JoinResult finite(Trace t) { return JoinResult(std::move(t)); }
  static JoinResult infinity() { return JoinResult(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Trace& value() const { return value_.value(); }

  friend bool operator==(const JoinResult& a, const JoinResult& b) = default;

 private:
  JoinResult() = default;
  explicit JoinResult(Trace t) : value_(std::move(t)) {}
  std::optional<Trace> value_;
};

JoinResult join(const Trace& p, const Trace& q);

struct WickPair {
  Trace left;   // p^{-1}(p v q)
  Trace right;  // q^{-1}(p v q)
};

// L_p^* L_q = L_a L_b^* with (a, b) = wick(p, q); nullopt when p v q is infinite.
std::optional<WickPair> wick(const Trace& p, const Trace& q);

// Deterministic total order: weight, then block sequence compared as sorted
// index lists.
bool canonical_less(const Trace& a, const Trace& b);

struct TraceHash {
  std::size_t operator()(const Trace& t) const noexcept;
};

}  // namespace qlo
