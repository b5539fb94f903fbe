#include "qlo/sampling.hpp"

#include <algorithm>
#include <unordered_set>

namespace qlo {

std::vector<Generator> random_word(const IndependenceGraph& g, Rng& rng, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(g.size()) - 1);
  std::vector<Generator> word(len(rng));
  for (auto& s : word) s = letter(rng);
  return word;
}

Trace random_trace(const GraphPtr& g, Rng& rng, std::size_t max_length) {
  const auto word = random_word(*g, rng, max_length);
  return normalize(g, word);
}

GraphPtr random_graph(std::size_t n, Rng& rng, double edge_probability) {
  std::bernoulli_distribution coin(edge_probability);
  std::uint64_t mask = 0;
  const std::size_t pairs = n * (n - 1) / 2;
  for (std::size_t b = 0; b < pairs; ++b)
    if (coin(rng)) mask |= std::uint64_t{1} << b;
  return presets::from_pair_mask(n, mask);
}

std::vector<Trace> traces_up_to_length(const GraphPtr& g, std::size_t max_length) {
  std::vector<Trace> all{Trace(g)};
  std::vector<Trace> frontier = all;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::unordered_set<Trace, TraceHash> seen;
    std::vector<Trace> next;
    for (const auto& t : frontier) {
      for (std::size_t s = 0; s < g->size(); ++s) {
        Trace grown = t;
        grown.push_back(static_cast<Generator>(s));
        if (seen.insert(grown).second) next.push_back(std::move(grown));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), canonical_less);
  return all;
}

}  // namespace qlo
