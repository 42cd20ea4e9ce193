#include <gtest/gtest.h>

#include "dpamimo/config_io.hpp"
#include "dpamimo/errors.hpp"
#include "dpamimo/random_instances.hpp"

using namespace dpamimo;

namespace {

const std::string kSourceDir = DPAMIMO_SOURCE_DIR;

std::string path_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<accepted>";
}

const char* kMinimal = R"({
  "schema_version": 1,
  "layout": {"preset": "top_bottom"},
  "fabric": {"n_wigig_if": 1, "n_sub6_fe": 0},
  "nodes": [{"id": "ue", "role": "ue", "position": [0, 0]},
            {"id": "bs", "role": "base_station", "position": [50, 0]}],
  "requirement": {"min_throughput_bps": 1e9, "max_latency_ms": 20}
})";

}  // namespace

TEST(ConfigIo, ShippedFig8MatchesBuiltIn) {
    EXPECT_EQ(load_scenario(kSourceDir + "/configs/fig8_default.json"), default_fig8_scenario());
}

TEST(ConfigIo, MinimalConfigTakesDefaults) {
    const auto c = parse_scenario(kMinimal);
    EXPECT_EQ(c.fabric.n_bf, 2);
    EXPECT_EQ(c.layout_name, "top_bottom");
    EXPECT_EQ(c.grip, GripScenario::FreeSpace);
    EXPECT_EQ(c.nodes[1].radio, default_radio(NodeRole::BaseStation));
    EXPECT_EQ(c.catalog, default_catalog());
    EXPECT_EQ(c.model, ModelKnobs{});
}

TEST(ConfigIo, RoundTripsRandomScenarios) {
    for (std::uint64_t s = 1; s <= 200; ++s) {
        const auto c = random_scenario(s);
        const auto text = to_json(c);
        const auto back = parse_scenario(text);
        EXPECT_EQ(back, c) << s;
        EXPECT_EQ(to_json(back), text) << s;
    }
}

TEST(ConfigIo, CustomCatalogRoundTrip) {
    const auto text = catalog_to_json(default_catalog());
    EXPECT_EQ(catalog_from_json(text), default_catalog());
}

TEST(ConfigIo, RejectsUnknownKeysWithPath) {
    std::string t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"grip\"") == std::string::npos ? 1 : 0, 0, "\"gripp\": 1, ")), "gripp");
    t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"n_sub6_fe\""), 11, "\"n_sub6\"")), "fabric/n_sub6");
    t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"position\": [50"), 10, "\"pos\"")).rfind("nodes/1", 0), 0u);
}

TEST(ConfigIo, RejectsBadValuesWithPath) {
    std::string t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"schema_version\": 1"), 19, "\"schema_version\": 2")), "schema_version");
    t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"n_wigig_if\": 1"), 15, "\"n_wigig_if\": 3")), "fabric/n_wigig_if");
    t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("top_bottom"), 10, "triangle")), "layout/preset");
    t = kMinimal;
    EXPECT_EQ(path_of(t.replace(t.find("\"role\": \"ue\""), 12, "\"role\": \"car\"")), "nodes/0/role");
    EXPECT_THROW(parse_scenario("{not json"), ConfigError);
    EXPECT_THROW(load_scenario(kSourceDir + "/does/not/exist.json"), ConfigError);
}

TEST(ConfigIo, ExplicitModules) {
    const auto c = load_scenario(kSourceDir + "/tests/data/tight_spacing.json");
    EXPECT_EQ(c.layout.size(), 3u);
    EXPECT_EQ(c.layout_name, "custom");
    EXPECT_EQ(c.layout[2].supported_band_ids, (std::vector<std::string>{"cell_28", "cell_39"}));
}

TEST(Grid, ExpandsInSortedKeyOrder) {
    const auto points = expand_grid(read_file(kSourceDir + "/configs/grip_sweep.json"), kSourceDir + "/configs");
    ASSERT_EQ(points.size(), 12u);
    EXPECT_EQ(points[0].label, "grip=free_space,nodes/1/position/0=50");
    EXPECT_EQ(points[1].label, "grip=free_space,nodes/1/position/0=100");
    for (const auto& p : points) ASSERT_TRUE(p.config.has_value()) << p.label;
    EXPECT_EQ(points[4].config->grip, GripScenario::OneHandCenter);
    EXPECT_EQ(points[4].config->nodes[1].position.x, 100.0);
}

TEST(Grid, EmptyAxisAndBadPoints) {
    const std::string base = to_json(default_fig8_scenario());
    EXPECT_TRUE(expand_grid(R"({"schema_version": 1, "base": )" + base + R"(, "grid": {"grip": []}})").empty());
    const auto single = expand_grid(R"({"schema_version": 1, "base": )" + base + R"(, "grid": {}})");
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(*single[0].config, default_fig8_scenario());
    const auto bad = expand_grid(R"({"schema_version": 1, "base": )" + base +
                                 R"(, "grid": {"fabric/n_wigig_if": [1, 9]}})");
    ASSERT_EQ(bad.size(), 2u);
    EXPECT_TRUE(bad[0].config.has_value());
    EXPECT_TRUE(bad[1].error.has_value());
    EXPECT_THROW(expand_grid(R"({"schema_version": 1, "base": 3, "grid": {}})"), ConfigError);
}
