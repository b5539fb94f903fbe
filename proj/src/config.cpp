#include "qlo/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qlo/errors.hpp"

namespace qlo {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("config field '" + field + "': " + what);
}

std::int64_t positive_int(const json& node, const std::string& field) {
  if (!node.is_number_integer()) fail(field, "expected an integer");
  const auto v = node.get<std::int64_t>();
  if (v <= 0) fail(field, "must be a positive integer");
  return v;
}

const json& require(const json& obj, const char* key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

}  // namespace

MonoidConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "generators" && key != "commuting_pairs" && key != "label") fail(key, "unknown field");
  }
  MonoidConfig cfg;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) fail("label", "expected a string");
    cfg.label = it->get<std::string>();
  }

  const json& gens = require(doc, "generators", "$");
  if (!gens.is_array() || gens.empty()) fail("generators", "expected a nonempty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string field = "generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    if (!g.is_object()) fail(field, "expected an object");
    const json& name = require(g, "name", field);
    if (!name.is_string() || name.get<std::string>().empty()) fail(field + ".name", "expected a nonempty string");
    const json& weight = require(g, "weight", field);
    if (!weight.is_object()) fail(field + ".weight", "expected {num, den}");
    GeneratorSpec spec;
    spec.name = name.get<std::string>();
    spec.num = positive_int(require(weight, "num", field + ".weight"), field + ".weight.num");
    spec.den = positive_int(require(weight, "den", field + ".weight"), field + ".weight.den");
    if (!names.insert(spec.name).second) fail(field + ".name", "duplicate generator '" + spec.name + "'");
    cfg.generators.push_back(std::move(spec));
  }

  if (auto it = doc.find("commuting_pairs"); it != doc.end()) {
    if (!it->is_array()) fail("commuting_pairs", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "commuting_pairs[" + std::to_string(i) + "]";
      const json& pair = (*it)[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        fail(field, "expected [name, name]");
      }
      auto a = pair[0].get<std::string>();
      auto b = pair[1].get<std::string>();
      if (!names.count(a)) fail(field, "unknown generator '" + a + "'");
      if (!names.count(b)) fail(field, "unknown generator '" + b + "'");
      if (a == b) fail(field, "a generator cannot be paired with itself");
      cfg.commuting_pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  // Remaining graph invariants (duplicate edges) are checked by the graph itself.
  try {
    (void)to_graph(cfg);
  } catch (const ValidationError& e) {
    fail("commuting_pairs", e.what());
  }
  return cfg;
}

MonoidConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
  return parse_config(doc);
}

MonoidConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json emit_config(const MonoidConfig& config) {
  json doc;
  if (config.label) doc["label"] = *config.label;
  doc["generators"] = json::array();
  for (const auto& g : config.generators) {
    doc["generators"].push_back({{"name", g.name}, {"weight", {{"num", g.num}, {"den", g.den}}}});
  }
  doc["commuting_pairs"] = json::array();
  for (const auto& [a, b] : config.commuting_pairs) doc["commuting_pairs"].push_back({a, b});
  return doc;
}

GraphPtr to_graph(const MonoidConfig& config) {
  std::vector<std::string> names;
  std::vector<Rational> weights;
  for (const auto& g : config.generators) {
    names.push_back(g.name);
    weights.push_back(make_rational(g.num, g.den));
  }
  return build_graph(std::move(names), std::move(weights), config.commuting_pairs);
}

MonoidConfig config_from_graph(const IndependenceGraph& g, std::optional<std::string> label) {
  MonoidConfig cfg;
  cfg.label = std::move(label);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& w = g.weight(static_cast<Generator>(i));
    cfg.generators.push_back({g.name(static_cast<Generator>(i)), w.get_num().get_si(), w.get_den().get_si()});
  }
  for (auto [a, b] : g.edges()) cfg.commuting_pairs.emplace_back(g.name(a), g.name(b));
  return cfg;
}

}  // namespace qlo
