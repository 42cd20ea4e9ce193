#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpamimo/spectrum.hpp"

namespace dpamimo {

/// Axis-aligned rectangle in housing coordinates (mm). Origin is the bottom-left
/// corner of the rear housing held in portrait; y grows towards the top edge.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double top() const { return y + h; }
    double area() const { return w * h; }

    bool operator==(const Rect&) const = default;
};

double intersection_area(const Rect& a, const Rect& b);

struct HousingSpec {
    double width_mm = 75.0;
    double height_mm = 150.0;

    bool operator==(const HousingSpec&) const = default;
};

struct ModulePlacement {
    std::string id;
    Rect footprint;
    std::vector<std::string> supported_band_ids;  // mmWave bands only

    bool operator==(const ModulePlacement&) const = default;
};

/// Rear-housing arrangement of BF modules. The constructor enforces positive
/// housing dimensions, unique ids, footprints inside the housing and pairwise
/// non-overlapping footprints (ConfigError otherwise).
class UeLayout {
public:
    UeLayout() = default;
    UeLayout(HousingSpec housing, std::vector<ModulePlacement> placements);

    const HousingSpec& housing() const { return housing_; }
    const std::vector<ModulePlacement>& placements() const { return placements_; }
    std::size_t size() const { return placements_.size(); }
    const ModulePlacement& operator[](std::size_t i) const { return placements_[i]; }
    /// Index of the placement with this id, or size() when absent.
    std::size_t index_of(std::string_view id) const;

    bool operator==(const UeLayout&) const = default;

private:
    HousingSpec housing_;
    std::vector<ModulePlacement> placements_;
};

/// Undirected simple graph over layout indices. Edges are stored with first < second,
/// sorted.
struct AdjacencyGraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    bool adjacent(std::size_t a, std::size_t b) const;
    std::vector<std::size_t> neighbors(std::size_t i) const;
};

struct SpacingViolation {
    std::string a;
    std::string b;
    std::string band_id;  // lowest shared band, which sets the requirement
    double required_mm = 0.0;
    double actual_mm = 0.0;
};

struct SpacingReport {
    std::size_t pairs_checked = 0;
    std::vector<SpacingViolation> violations;

    bool ok() const { return violations.empty(); }
};

enum class LayoutPreset { ConventionalCenter, TopBottom, Dpa8 };

/// Minimum edge-to-edge spacing as a multiple of the free-space wavelength.
inline constexpr double kSpacingWavelengths = 1.5;

/// Module footprint used by the presets.
inline constexpr double kPresetModuleMm = 10.0;

/// Minimum Euclidean distance between two footprints; 0 when touching or
/// overlapping. Throws DomainError if both placements carry the same id.
double edge_to_edge_distance(const ModulePlacement& a, const ModulePlacement& b);

/// Checks every pair that shares a supported band against
/// distance > 1.5 * wavelength(lowest shared frequency). Pairs without a shared
/// band are skipped. Throws ConfigError for band ids missing from the catalog.
SpacingReport validate_spacing(const UeLayout& layout, const BandCatalog& catalog);

/// 2 * 1.5 * wavelength(28 GHz) in mm.
double default_adjacency_threshold_mm();

/// Edge iff edge_to_edge_distance < threshold. Throws DomainError for threshold <= 0.
AdjacencyGraph adjacency(const UeLayout& layout, double threshold_mm);

/// Band ids every preset module supports: the mmWave bands of default_catalog().
std::vector<std::string> preset_module_bands();

/// rows x cols grid of square modules centered on the housing, with the given
/// edge-to-edge gaps between columns and rows. Ids are "m0".."m{n-1}" row-major
/// from the bottom row.
UeLayout grid_layout(const HousingSpec& housing, int rows, int cols, double module_mm,
                     double gap_x_mm, double gap_y_mm);

UeLayout preset(LayoutPreset which, const HousingSpec& housing = {});
/// Throws ConfigError for unknown names.
UeLayout preset(std::string_view name, const HousingSpec& housing = {});

/// Gaps used by the dpa_8 preset.
inline constexpr double kDpa8GapXMm = 25.0;
inline constexpr double kDpa8GapYMm = 25.5;

std::string_view to_string(LayoutPreset p);

}  // namespace dpamimo
