#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpamimo/layout.hpp"

namespace dpamimo {

enum class GripScenario { FreeSpace, OneHandCenter, TwoHandLandscape, OneHandPortraitBottom };

inline constexpr GripScenario kAllGrips[] = {GripScenario::FreeSpace, GripScenario::OneHandCenter,
                                             GripScenario::TwoHandLandscape,
                                             GripScenario::OneHandPortraitBottom};

/// Hand geometry, as fractions of the housing.
struct OcclusionGeometry {
    double center_area_fraction = 0.40;     // one palm over the middle of the back
    double landscape_strip_fraction = 0.30; // each hand's share of the long dimension
    double bottom_fraction = 0.35;          // portrait grip from the bottom edge

    bool operator==(const OcclusionGeometry&) const = default;
};

struct BlockageModel {
    double full_blockage_db = 35.0;   // must lie in [30, 40]
    double saturation_fraction = 0.5; // overlap at which full blockage is reached
    OcclusionGeometry geometry;

    /// Throws ConfigError when a knob is out of range.
    void validate() const;

    bool operator==(const BlockageModel&) const = default;
};

/// Attenuation per module id, dB in [0, 40].
struct BlockageMask {
    std::map<std::string, double> attenuation_db;

    double at(std::string_view id) const;
    /// Modules with attenuation strictly below `db`.
    std::size_t count_below(double db) const;
    std::size_t count_at_least(double db) const;
};

std::vector<Rect> occlusion_zones(GripScenario grip, const HousingSpec& housing,
                                  const OcclusionGeometry& geometry = {});

/// Area of r covered by the union of zones.
double occluded_area(const Rect& r, const std::vector<Rect>& zones);

/// Linear ramp: full_blockage_db * min(1, overlap / saturation_fraction).
double attenuation_for_overlap(double overlap_fraction, const BlockageModel& model = {});

BlockageMask blockage_mask(const UeLayout& layout, GripScenario grip,
                           const BlockageModel& model = {});

std::string_view to_string(GripScenario g);
std::optional<GripScenario> parse_grip(std::string_view name);

}  // namespace dpamimo
