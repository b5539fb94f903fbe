#include "qlo/trace.hpp"

#include <algorithm>
#include <cctype>

#include "qlo/errors.hpp"

namespace qlo {
namespace {

void require_same_graph(const Trace& a, const Trace& b, const char* op) {
  if (!same_graph(a, b)) throw ValidationError(std::string(op) + ": traces belong to different graphs");
}

// Residual of one letter against q: q with a front s removed, q itself when s
// commutes past all of q, or nothing when s v q is infinite.
std::optional<Trace> letter_residual(Generator s, const Trace& q) {
  const auto& g = *q.graph();
  if ((min_letters(q) & letter_bit(s)) != 0) {
    return left_quotient(Trace::letter(q.graph(), s), q);
  }
  if ((q.alphabet() & ~g.neighbors(s)) == 0) return q;
  return std::nullopt;
}

}  // namespace

Trace Trace::letter(GraphPtr graph, Generator s) {
  Trace t(std::move(graph));
  t.push_back(s);
  return t;
}

LetterSet Trace::alphabet() const {
  LetterSet set = 0;
  for (LetterSet b : blocks_) set |= b;
  return set;
}

std::vector<Generator> Trace::word() const {
  std::vector<Generator> out;
  out.reserve(length_);
  for (LetterSet b : blocks_) for_each_letter(b, [&](Generator s) { out.push_back(s); });
  return out;
}

void Trace::push_back(Generator s) {
  const LetterSet blockers = graph_->dependents(s);
  std::size_t level = blocks_.size();
  while (level > 0 && (blocks_[level - 1] & blockers) == 0) --level;
  if (level == blocks_.size()) blocks_.push_back(0);
  blocks_[level] |= letter_bit(s);
  weight_units_ += graph_->weight_units(s);
  ++length_;
}

bool operator==(const Trace& a, const Trace& b) {
  return a.blocks_ == b.blocks_ && same_graph(a, b);
}

bool same_graph(const Trace& a, const Trace& b) {
  return a.graph() == b.graph() || *a.graph() == *b.graph();
}

Trace normalize(const GraphPtr& graph, std::span<const Generator> word) {
  Trace t(graph);
  for (Generator s : word) {
    if (s < 0 || static_cast<std::size_t>(s) >= graph->size()) {
      throw ValidationError("unknown generator index " + std::to_string(s));
    }
    t.push_back(s);
  }
  return t;
}

Trace parse_trace(const GraphPtr& graph, std::string_view text) {
  std::vector<Generator> word;
  auto lookup = [&](std::string_view name) {
    auto s = graph->find(name);
    if (!s) throw ValidationError("unknown generator '" + std::string(name) + "'");
    word.push_back(*s);
  };
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed.empty() || (trimmed == "e" && !graph->find("e"))) return Trace(graph);

  if (trimmed.find(' ') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos < trimmed.size()) {
      auto next = trimmed.find(' ', pos);
      if (next == std::string_view::npos) next = trimmed.size();
      if (next > pos) lookup(trimmed.substr(pos, next - pos));
      pos = next + 1;
    }
  } else if (graph->find(trimmed)) {
    lookup(trimmed);
  } else {
    for (std::size_t i = 0; i < trimmed.size(); ++i) lookup(trimmed.substr(i, 1));
  }
  return normalize(graph, word);
}

std::string to_string(const Trace& t) {
  if (t.is_identity()) return "e";
  std::string out;
  for (LetterSet b : t.blocks()) {
    out += '[';
    bool first = true;
    for_each_letter(b, [&](Generator s) {
      if (!first) out += ',';
      out += t.graph()->name(s);
      first = false;
    });
    out += ']';
  }
  return out;
}

std::string to_word_string(const Trace& t) {
  if (t.is_identity()) return "e";
  std::string out;
  for (Generator s : t.word()) {
    if (!out.empty()) out += ' ';
    out += t.graph()->name(s);
  }
  return out;
}

Trace multiply(const Trace& p, const Trace& q) {
  require_same_graph(p, q, "multiply");
  Trace out = p;
  for (LetterSet b : q.blocks()) for_each_letter(b, [&](Generator s) { out.push_back(s); });
  return out;
}

LetterSet min_letters(const Trace& p) { return p.is_identity() ? 0 : p.blocks().front(); }

namespace {

// Removes the letters of p, in order, from the front of word; each must occur
// with no dependent letter before it. False if some letter cannot be removed.
bool strip_prefix(const IndependenceGraph& g, const Trace& p, std::vector<Generator>& word) {
  for (const LetterSet block : p.blocks()) {
    bool ok = true;
    for_each_letter(block, [&](Generator s) {
      if (!ok) return;
      LetterSet seen = 0;
      for (std::size_t i = 0; i < word.size(); ++i) {
        const Generator r = word[i];
        if (r == s && (seen & g.dependents(s)) == 0) {
          word.erase(word.begin() + static_cast<std::ptrdiff_t>(i));
          return;
        }
        seen |= letter_bit(r);
      }
      ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool divides(const Trace& p, const Trace& x) {
  require_same_graph(p, x, "divides");
  if (p.length() > x.length() || p.weight_units() > x.weight_units()) return false;
  if (p.is_identity()) return true;
  // Minimal letters of p stay minimal in any multiple p y.
  if ((min_letters(p) & ~min_letters(x)) != 0) return false;
  std::vector<Generator> rest = x.word();
  return strip_prefix(*x.graph(), p, rest);
}

Trace left_quotient(const Trace& p, const Trace& x) {
  require_same_graph(p, x, "left_quotient");
  std::vector<Generator> rest = x.word();
  if (!strip_prefix(*x.graph(), p, rest)) {
    throw ValidationError("left_quotient: " + to_string(p) + " does not divide " + to_string(x));
  }
  return normalize(x.graph(), rest);
}

Trace replace_prefix(const Trace& q, const Trace& p, const Trace& x) {
  require_same_graph(q, x, "replace_prefix");
  require_same_graph(p, x, "replace_prefix");
  std::vector<Generator> rest = x.word();
  if (!strip_prefix(*x.graph(), q, rest)) {
    throw ValidationError("replace_prefix: " + to_string(q) + " does not divide " + to_string(x));
  }
  Trace out = p;
  for (Generator s : rest) out.push_back(s);
  return out;
}

JoinResult join(const Trace& p, const Trace& q) {
  require_same_graph(p, q, "join");
  Trace prefix(p.graph());
  Trace left = p;
  Trace right = q;
  while (!left.is_identity()) {
    const Generator s = static_cast<Generator>(std::countr_zero(min_letters(left)));
    auto residual = letter_residual(s, right);
    if (!residual) return JoinResult::infinity();
    right = std::move(*residual);
    left = left_quotient(Trace::letter(p.graph(), s), left);
    prefix.push_back(s);
  }
  return JoinResult::finite(multiply(prefix, right));
}

std::optional<WickPair> wick(const Trace& p, const Trace& q) {
  auto j = join(p, q);
  if (j.is_infinite()) return std::nullopt;
  return WickPair{left_quotient(p, j.value()), left_quotient(q, j.value())};
}

bool canonical_less(const Trace& a, const Trace& b) {
  if (a.weight_units() != b.weight_units()) return a.weight_units() < b.weight_units();
  const auto& ab = a.blocks();
  const auto& bb = b.blocks();
  const std::size_t n = std::min(ab.size(), bb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ab[i] == bb[i]) continue;
    // Compare blocks as ascending index lists. Letters below the lowest
    // differing one x are shared; the list holding x is smaller iff the other
    // still has a letter above x (otherwise the other list is a prefix).
    const LetterSet diff = ab[i] ^ bb[i];
    const LetterSet low = diff & (~diff + 1);
    const LetterSet above = ~(low | (low - 1));
    if ((ab[i] & low) != 0) return (bb[i] & above) != 0;
    return (ab[i] & above) == 0;
  }
  return ab.size() < bb.size();
}

std::size_t TraceHash::operator()(const Trace& t) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (LetterSet b : t.blocks()) {
    h ^= static_cast<std::size_t>(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace qlo
