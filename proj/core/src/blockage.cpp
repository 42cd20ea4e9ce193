#include "dpamimo/blockage.hpp"

#include <algorithm>
#include <cmath>

#include "dpamimo/errors.hpp"

namespace dpamimo {

void BlockageModel::validate() const {
    if (!(full_blockage_db >= 30.0 && full_blockage_db <= 40.0)) {
        throw ConfigError("full blockage must lie in [30, 40] dB", "model/full_blockage_db");
    }
    if (!(saturation_fraction > 0.0 && saturation_fraction <= 1.0)) {
        throw ConfigError("saturation fraction must lie in (0, 1]", "model/saturation_fraction");
    }
    const auto& g = geometry;
    if (!(g.center_area_fraction > 0.0 && g.center_area_fraction <= 1.0)) {
        throw ConfigError("must lie in (0, 1]", "model/occlusion/center_area_fraction");
    }
    if (!(g.landscape_strip_fraction > 0.0 && g.landscape_strip_fraction <= 0.5)) {
        throw ConfigError("must lie in (0, 0.5]", "model/occlusion/landscape_strip_fraction");
    }
    if (!(g.bottom_fraction > 0.0 && g.bottom_fraction <= 1.0)) {
        throw ConfigError("must lie in (0, 1]", "model/occlusion/bottom_fraction");
    }
}

double BlockageMask::at(std::string_view id) const {
    auto it = attenuation_db.find(std::string(id));
    if (it == attenuation_db.end()) {
        throw ConfigError("no blockage entry for module '" + std::string(id) + "'");
    }
    return it->second;
}

std::size_t BlockageMask::count_below(double db) const {
    return static_cast<std::size_t>(std::count_if(attenuation_db.begin(), attenuation_db.end(),
                                                  [&](const auto& kv) { return kv.second < db; }));
}

std::size_t BlockageMask::count_at_least(double db) const {
    return attenuation_db.size() - count_below(db);
}

std::vector<Rect> occlusion_zones(GripScenario grip, const HousingSpec& housing,
                                  const OcclusionGeometry& geometry) {
    const double w = housing.width_mm;
    const double h = housing.height_mm;
    switch (grip) {
        case GripScenario::FreeSpace:
            return {};
        case GripScenario::OneHandCenter: {
            // Same aspect ratio as the housing, area = fraction of the housing.
            const double s = std::sqrt(geometry.center_area_fraction);
            return {{(w - s * w) / 2.0, (h - s * h) / 2.0, s * w, s * h}};
        }
        case GripScenario::TwoHandLandscape: {
            // Landscape left/right are the portrait bottom/top short-edge strips.
            const double strip = geometry.landscape_strip_fraction * h;
            return {{0.0, 0.0, w, strip}, {0.0, h - strip, w, strip}};
        }
        case GripScenario::OneHandPortraitBottom:
            return {{0.0, 0.0, w, geometry.bottom_fraction * h}};
    }
    return {};
}

double occluded_area(const Rect& r, const std::vector<Rect>& zones) {
    // Coordinate compression over the clipped zones; exact for any zone count.
    std::vector<Rect> clipped;
    std::vector<double> xs{r.x, r.right()};
    std::vector<double> ys{r.y, r.top()};
    for (const auto& z : zones) {
        const double x0 = std::max(r.x, z.x), x1 = std::min(r.right(), z.right());
        const double y0 = std::max(r.y, z.y), y1 = std::min(r.top(), z.top());
        if (x1 <= x0 || y1 <= y0) continue;
        clipped.push_back({x0, y0, x1 - x0, y1 - y0});
        xs.insert(xs.end(), {x0, x1});
        ys.insert(ys.end(), {y0, y1});
    }
    if (clipped.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    double area = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const double mx = (xs[i] + xs[i + 1]) / 2.0;
            const double my = (ys[j] + ys[j + 1]) / 2.0;
            const bool covered = std::any_of(clipped.begin(), clipped.end(), [&](const Rect& c) {
                return mx > c.x && mx < c.right() && my > c.y && my < c.top();
            });
            if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
        }
    }
    return area;
}

double attenuation_for_overlap(double overlap_fraction, const BlockageModel& model) {
    const double phi = std::clamp(overlap_fraction, 0.0, 1.0);
    if (phi >= model.saturation_fraction) return model.full_blockage_db;
    return model.full_blockage_db * (phi / model.saturation_fraction);
}

BlockageMask blockage_mask(const UeLayout& layout, GripScenario grip, const BlockageModel& model) {
    model.validate();
    const auto zones = occlusion_zones(grip, layout.housing(), model.geometry);
    BlockageMask mask;
    for (const auto& p : layout.placements()) {
        const double phi = occluded_area(p.footprint, zones) / p.footprint.area();
        mask.attenuation_db[p.id] = attenuation_for_overlap(phi, model);
    }
    return mask;
}

std::string_view to_string(GripScenario g) {
    switch (g) {
        case GripScenario::FreeSpace: return "free_space";
        case GripScenario::OneHandCenter: return "one_hand_center";
        case GripScenario::TwoHandLandscape: return "two_hand_landscape";
        case GripScenario::OneHandPortraitBottom: return "one_hand_portrait_bottom";
    }
    return "";
}

std::optional<GripScenario> parse_grip(std::string_view name) {
    for (auto g : kAllGrips) {
        if (to_string(g) == name) return g;
    }
    return std::nullopt;
}

}  // namespace dpamimo
