#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qlo/trace.hpp"

namespace qlo {

using Rng = std::mt19937_64;

// Uniform length in [0, max_length], uniform letters.
std::vector<Generator> random_word(const IndependenceGraph& g, Rng& rng, std::size_t max_length);
Trace random_trace(const GraphPtr& g, Rng& rng, std::size_t max_length);

// Unit-weight graph on n vertices, each pair joined with probability edge_probability.
GraphPtr random_graph(std::size_t n, Rng& rng, double edge_probability = 0.5);

// Every trace with at most max_length letters, sorted by canonical_less.
std::vector<Trace> traces_up_to_length(const GraphPtr& g, std::size_t max_length);

}  // namespace qlo
