#include <gtest/gtest.h>

#include "dpamimo/blockage.hpp"
#include "dpamimo/errors.hpp"

using namespace dpamimo;

namespace {

bool contains(const Rect& outer, const Rect& inner) {
    return inner.x >= outer.x && inner.y >= outer.y && inner.x + inner.w <= outer.x + outer.w &&
           inner.y + inner.h <= outer.y + outer.h;
}

}  // namespace

TEST(OcclusionZones, Geometry) {
    const HousingSpec h{};
    EXPECT_TRUE(occlusion_zones(GripScenario::FreeSpace, h).empty());

    const auto landscape = occlusion_zones(GripScenario::TwoHandLandscape, h);
    ASSERT_EQ(landscape.size(), 2u);
    for (const auto& z : landscape) {
        EXPECT_DOUBLE_EQ(z.w, h.width_mm);
        EXPECT_DOUBLE_EQ(z.h, 0.3 * h.height_mm);
    }
    EXPECT_DOUBLE_EQ(landscape[0].y, 0.0);
    EXPECT_DOUBLE_EQ(landscape[1].y + landscape[1].h, h.height_mm);

    const auto center = occlusion_zones(GripScenario::OneHandCenter, h);
    ASSERT_EQ(center.size(), 1u);
    EXPECT_NEAR(center[0].w * center[0].h, 0.4 * h.width_mm * h.height_mm, 1e-9);
    EXPECT_TRUE(contains(center[0], preset(LayoutPreset::ConventionalCenter)[0].footprint));

    const auto bottom = occlusion_zones(GripScenario::OneHandPortraitBottom, h);
    ASSERT_EQ(bottom.size(), 1u);
    EXPECT_DOUBLE_EQ(bottom[0].h, 0.35 * h.height_mm);
}

TEST(OccludedArea, CountsOverlapsOnce) {
    const Rect r{0, 0, 10, 10};
    EXPECT_DOUBLE_EQ(occluded_area(r, {}), 0.0);
    EXPECT_DOUBLE_EQ(occluded_area(r, {{5, 0, 10, 10}}), 50.0);
    EXPECT_DOUBLE_EQ(occluded_area(r, {{5, 0, 10, 10}, {0, 5, 10, 10}}), 75.0);
    EXPECT_DOUBLE_EQ(occluded_area(r, {{-5, -5, 30, 30}, {2, 2, 3, 3}}), 100.0);
}

TEST(Attenuation, RampAndSaturation) {
    EXPECT_EQ(attenuation_for_overlap(0.0), 0.0);
    EXPECT_DOUBLE_EQ(attenuation_for_overlap(0.25), 17.5);
    EXPECT_EQ(attenuation_for_overlap(0.5), 35.0);
    EXPECT_EQ(attenuation_for_overlap(0.9), 35.0);
    double prev = 0.0;
    for (double phi = 0.0; phi <= 1.0; phi += 0.01) {
        const double a = attenuation_for_overlap(phi);
        EXPECT_GE(a, prev);
        EXPECT_LE(a, 40.0);
        prev = a;
    }
    BlockageModel m;
    m.full_blockage_db = 41.0;
    EXPECT_THROW(m.validate(), ConfigError);
    m.full_blockage_db = 30.0;
    EXPECT_NO_THROW(m.validate());
}

TEST(BlockageMask, FreeSpaceIsClear) {
    for (auto p : {LayoutPreset::ConventionalCenter, LayoutPreset::TopBottom, LayoutPreset::Dpa8}) {
        const auto layout = preset(p);
        const auto mask = blockage_mask(layout, GripScenario::FreeSpace);
        EXPECT_EQ(mask.attenuation_db.size(), layout.size());
        EXPECT_EQ(mask.count_below(1e-12), layout.size());
    }
}

TEST(BlockageMask, TwoHandLandscapeBlocksTopBottomButNotDpa8) {
    const auto tb = blockage_mask(preset(LayoutPreset::TopBottom), GripScenario::TwoHandLandscape);
    EXPECT_EQ(tb.count_at_least(30.0), 2u);
    const auto dpa = blockage_mask(preset(LayoutPreset::Dpa8), GripScenario::TwoHandLandscape);
    EXPECT_GE(dpa.count_below(3.0), 2u);
}

TEST(BlockageMask, Dpa8NeverWorseThanTopBottom) {
    for (GripScenario g : kAllGrips) {
        const auto tb = blockage_mask(preset(LayoutPreset::TopBottom), g);
        const auto dpa = blockage_mask(preset(LayoutPreset::Dpa8), g);
        EXPECT_GE(dpa.count_below(3.0), tb.count_below(3.0)) << to_string(g);
        EXPECT_EQ(blockage_mask(preset(LayoutPreset::Dpa8), g).attenuation_db, dpa.attenuation_db);
    }
}

TEST(BlockageMask, OneHandCenterCoversConventionalModule) {
    const auto mask = blockage_mask(preset(LayoutPreset::ConventionalCenter), GripScenario::OneHandCenter);
    EXPECT_EQ(mask.count_at_least(30.0), 1u);
}

TEST(GripNames, RoundTrip) {
    for (GripScenario g : kAllGrips) EXPECT_EQ(parse_grip(to_string(g)), g);
    EXPECT_FALSE(parse_grip("pocket").has_value());
}
