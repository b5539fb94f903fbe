#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlo/graph.hpp"

namespace qlo {

struct GeneratorSpec {
  std::string name;
  std::int64_t num = 1;
  std::int64_t den = 1;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// On-disk form of an IndependenceGraph:
//   {"label": "...", "generators": [{"name": "a", "weight": {"num": 1, "den": 1}}, ...],
//    "commuting_pairs": [["a", "b"], ...]}
struct MonoidConfig {
  std::vector<GeneratorSpec> generators;
  std::vector<std::pair<std::string, std::string>> commuting_pairs;
  std::optional<std::string> label;
  friend bool operator==(const MonoidConfig&, const MonoidConfig&) = default;
};

// Schema and graph-invariant violations throw ValidationError naming the field.
MonoidConfig parse_config(const nlohmann::json& doc);
MonoidConfig parse_config_text(const std::string& text);
MonoidConfig parse_config_file(const std::filesystem::path& path);

nlohmann::json emit_config(const MonoidConfig& config);

GraphPtr to_graph(const MonoidConfig& config);
MonoidConfig config_from_graph(const IndependenceGraph& g, std::optional<std::string> label = {});

}  // namespace qlo
