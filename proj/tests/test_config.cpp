#include <doctest.h>

#include <string>

#include "qlo/config.hpp"
#include "qlo/errors.hpp"
#include "qlo/sampling.hpp"

using namespace qlo;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(QLO_TEST_DATA_DIR) / name; }

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("presets match the hand-written configs") {
  CHECK(*to_graph(parse_config_file(data("free2.json"))) == *presets::free_monoid(2));
  CHECK(*to_graph(parse_config_file(data("abelian2.json"))) == *presets::free_abelian(2));
  CHECK(*to_graph(parse_config_file(data("path3.json"))) == *presets::path(3));
  CHECK(*to_graph(parse_config_file(data("cycle5.json"))) == *presets::cycle(5));
  CHECK(parse_config_file(data("free2.json")).label == "free:2");
}

TEST_CASE("rational weights survive parsing") {
  auto g = to_graph(parse_config_file(data("rational_weight.json")));
  CHECK(g->weight(1) == make_rational(3, 2));
  CHECK(g->scale() == 2);
}

TEST_CASE("schema errors name the offending field") {
  CHECK_THROWS_AS(parse_config_file(data("self_pair.json")), ValidationError);
  CHECK_THROWS_AS(parse_config_file(data("malformed.json")), ValidationError);
  CHECK_THROWS_AS(parse_config_file(data("does_not_exist.json")), ValidationError);

  const std::string gen = R"({"name": "a", "weight": {"num": 1, "den": 1}})";
  CHECK(error_of(R"({"generators": [{"name": "a", "weight": {"num": 0, "den": 1}}], "commuting_pairs": []})")
            .find("generators[0].weight.num") != std::string::npos);
  CHECK(error_of(R"({"generators": [{"name": "a", "weight": {"num": 1.5, "den": 1}}], "commuting_pairs": []})")
            .find("generators[0].weight.num") != std::string::npos);
  CHECK(error_of("{\"generators\": [" + gen + "," + gen + "], \"commuting_pairs\": []}").find("generators[1].name") !=
        std::string::npos);
  CHECK(error_of("{\"generators\": [" + gen + "], \"commuting_pairs\": [[\"a\", \"z\"]]}").find("commuting_pairs[0]") !=
        std::string::npos);
  CHECK(error_of("{\"generators\": [" + gen + "], \"commuting_pairs\": [], \"extra\": 1}").find("extra") !=
        std::string::npos);
  CHECK(error_of("{\"commuting_pairs\": []}").find("generators") != std::string::npos);
}

TEST_CASE("emit and parse round trip") {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    auto g = random_graph(1 + static_cast<std::size_t>(k % 6), rng);
    auto config = config_from_graph(*g, k % 2 ? std::optional<std::string>("g" + std::to_string(k)) : std::nullopt);
    CHECK(parse_config(emit_config(config)) == config);
    CHECK(*to_graph(config) == *g);
  }
  auto weighted = build_graph({"x", "y"}, {make_rational(2, 3), Rational(5)}, {{"x", "y"}});
  auto config = config_from_graph(*weighted);
  CHECK(parse_config_text(emit_config(config).dump()) == config);
  CHECK(config.generators[0].num == 2);
  CHECK(config.generators[0].den == 3);
}
