#include "dpamimo/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dpamimo/errors.hpp"

namespace dpamimo {

double intersection_area(const Rect& a, const Rect& b) {
    const double w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const double h = std::min(a.top(), b.top()) - std::max(a.y, b.y);
    return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

UeLayout::UeLayout(HousingSpec housing, std::vector<ModulePlacement> placements)
    : housing_(housing), placements_(std::move(placements)) {
    if (!(housing_.width_mm > 0.0) || !(housing_.height_mm > 0.0)) {
        throw ConfigError("housing dimensions must be positive", "layout/housing");
    }
    std::set<std::string_view> ids;
    for (std::size_t i = 0; i < placements_.size(); ++i) {
        const auto& p = placements_[i];
        const std::string path = "layout/modules/" + std::to_string(i);
        if (p.id.empty()) throw ConfigError("module id must not be empty", path);
        if (!ids.insert(p.id).second) throw ConfigError("duplicate module id '" + p.id + "'", path);
        const Rect& r = p.footprint;
        if (!(r.w > 0.0) || !(r.h > 0.0)) {
            throw ConfigError("footprint of '" + p.id + "' must have positive size", path);
        }
        if (r.x < 0.0 || r.y < 0.0 || r.right() > housing_.width_mm ||
            r.top() > housing_.height_mm) {
            throw ConfigError("footprint of '" + p.id + "' leaves the housing", path);
        }
    }
    for (std::size_t i = 0; i < placements_.size(); ++i) {
        for (std::size_t j = i + 1; j < placements_.size(); ++j) {
            if (intersection_area(placements_[i].footprint, placements_[j].footprint) > 0.0) {
                throw ConfigError("footprints of '" + placements_[i].id + "' and '" +
                                      placements_[j].id + "' overlap",
                                  "layout/modules");
            }
        }
    }
}

std::size_t UeLayout::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < placements_.size(); ++i) {
        if (placements_[i].id == id) return i;
    }
    return placements_.size();
}

bool AdjacencyGraph::adjacent(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::vector<std::size_t> AdjacencyGraph::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& [u, v] : edges) {
        if (u == i) out.push_back(v);
        if (v == i) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double edge_to_edge_distance(const ModulePlacement& a, const ModulePlacement& b) {
    if (a.id == b.id) throw DomainError("edge_to_edge_distance: same module '" + a.id + "'");
    const Rect& p = a.footprint;
    const Rect& q = b.footprint;
    const double dx = std::max({0.0, q.x - p.right(), p.x - q.right()});
    const double dy = std::max({0.0, q.y - p.top(), p.y - q.top()});
    return std::hypot(dx, dy);
}

SpacingReport validate_spacing(const UeLayout& layout, const BandCatalog& catalog) {
    // Resolve every referenced band up front so unknown ids fail even for
    // single-module layouts.
    std::vector<std::vector<const Band*>> supported(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (const auto& id : layout[i].supported_band_ids) {
            const Band* band = catalog.find(id);
            if (!band) {
                throw ConfigError("module '" + layout[i].id + "' references unknown band '" + id +
                                      "'",
                                  "layout/modules/" + std::to_string(i) + "/bands");
            }
            supported[i].push_back(band);
        }
    }

    SpacingReport report;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            const Band* lowest = nullptr;
            for (const Band* a : supported[i]) {
                for (const Band* b : supported[j]) {
                    if (a->id != b->id) continue;
                    if (!lowest || a->center_ghz < lowest->center_ghz) lowest = a;
                }
            }
            if (!lowest) continue;
            ++report.pairs_checked;
            const double required = kSpacingWavelengths * wavelength_m(lowest->center_ghz) * 1e3;
            const double actual = edge_to_edge_distance(layout[i], layout[j]);
            if (!(actual > required)) {
                report.violations.push_back({layout[i].id, layout[j].id, lowest->id, required, actual});
            }
        }
    }
    return report;
}

double default_adjacency_threshold_mm() {
    return 2.0 * kSpacingWavelengths * wavelength_m(28.0) * 1e3;
}

AdjacencyGraph adjacency(const UeLayout& layout, double threshold_mm) {
    if (!(threshold_mm > 0.0)) throw DomainError("adjacency: threshold must be positive");
    AdjacencyGraph g;
    for (const auto& p : layout.placements()) g.nodes.push_back(p.id);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            if (edge_to_edge_distance(layout[i], layout[j]) < threshold_mm) g.edges.emplace_back(i, j);
        }
    }
    return g;
}

std::vector<std::string> preset_module_bands() {
    std::vector<std::string> ids;
    for (const auto& b : default_catalog().bands()) {
        if (b.tier == Tier::MmWave) ids.push_back(b.id);
    }
    return ids;
}

UeLayout grid_layout(const HousingSpec& housing, int rows, int cols, double module_mm,
                     double gap_x_mm, double gap_y_mm) {
    if (rows <= 0 || cols <= 0) throw DomainError("grid_layout: rows and cols must be positive");
    const double span_x = cols * module_mm + (cols - 1) * gap_x_mm;
    const double span_y = rows * module_mm + (rows - 1) * gap_y_mm;
    const double x0 = (housing.width_mm - span_x) / 2.0;
    const double y0 = (housing.height_mm - span_y) / 2.0;
    const auto bands = preset_module_bands();

    std::vector<ModulePlacement> placements;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Rect fp{x0 + c * (module_mm + gap_x_mm), y0 + r * (module_mm + gap_y_mm), module_mm,
                    module_mm};
            placements.push_back({"m" + std::to_string(r * cols + c), fp, bands});
        }
    }
    return UeLayout(housing, std::move(placements));
}

UeLayout preset(LayoutPreset which, const HousingSpec& housing) {
    const double m = kPresetModuleMm;
    const double cx = (housing.width_mm - m) / 2.0;
    const auto bands = preset_module_bands();
    switch (which) {
        case LayoutPreset::ConventionalCenter:
            return UeLayout(housing, {{"m0", {cx, (housing.height_mm - m) / 2.0, m, m}, bands}});
        case LayoutPreset::TopBottom: {
            const double margin = 2.0;
            return UeLayout(housing, {{"m0", {cx, margin, m, m}, bands},
                                      {"m1", {cx, housing.height_mm - margin - m, m, m}, bands}});
        }
        case LayoutPreset::Dpa8:
            return grid_layout(housing, 4, 2, m, kDpa8GapXMm, kDpa8GapYMm);
    }
    throw ConfigError("unknown layout preset");
}

UeLayout preset(std::string_view name, const HousingSpec& housing) {
    for (auto p : {LayoutPreset::ConventionalCenter, LayoutPreset::TopBottom, LayoutPreset::Dpa8}) {
        if (to_string(p) == name) return preset(p, housing);
    }
    throw ConfigError("unknown layout preset '" + std::string(name) + "'", "layout");
}

std::string_view to_string(LayoutPreset p) {
    switch (p) {
        case LayoutPreset::ConventionalCenter: return "conventional_center";
        case LayoutPreset::TopBottom: return "top_bottom";
        case LayoutPreset::Dpa8: return "dpa_8";
    }
    return "";
}

}  // namespace dpamimo
