#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpamimo/allocator.hpp"
#include "dpamimo/blockage.hpp"
#include "dpamimo/fabric.hpp"
#include "dpamimo/layout.hpp"
#include "dpamimo/link.hpp"
#include "dpamimo/modesel.hpp"
#include "dpamimo/spectrum.hpp"

namespace dpamimo {

inline constexpr int kSchemaVersion = 1;

/// Attenuation at or above which a module counts as blocked in the report.
inline constexpr double kBlockedThresholdDb = 30.0;

/// Largest module count for which run() honors the oracle request.
inline constexpr int kOracleMaxModules = 6;

struct ModelKnobs {
    BlockageModel blockage;
    double adjacency_threshold_mm = default_adjacency_threshold_mm();
    double access_snr_threshold_db = kDefaultAccessSnrDb;
    LatencyTable latency;

    bool operator==(const ModelKnobs&) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::string layout_name = "custom";  // preset name when built from a preset
    UeLayout layout;
    FabricConfig fabric;
    std::vector<NodeSpec> nodes;
    UeRadio ue_radio;
    GripScenario grip = GripScenario::FreeSpace;
    bool default_catalog = true;
    BandCatalog catalog;
    SpectrumGroundTruth spectrum;
    /// Allowed carriers; when absent every reachable mmWave band of the network is allowed.
    std::optional<std::vector<std::string>> cellular_carriers;
    std::optional<std::vector<std::string>> wigig_carriers;
    AppRequirement requirement;
    std::uint64_t seed = 0;
    ModelKnobs model;

    /// Throws ConfigError (with field path) on any broken invariant: exactly one
    /// UE, unique node ids, fabric n_bf equal to the module count, known band ids.
    void validate() const;
    const NodeSpec& ue() const;

    bool operator==(const ScenarioConfig&) const = default;
};

struct RunOptions {
    bool oracle = false;
};

struct ModuleMetrics {
    std::string id;
    BfMode::Kind link = BfMode::Kind::Off;
    std::string target;
    std::string carrier;
    double attenuation_db = 0.0;
    std::optional<double> snr_db;  // active modules only
    double capacity_bps = 0.0;
    double bandwidth_hz = 0.0;
};

struct MetricsReport {
    std::string scenario;
    std::string layout;
    GripScenario grip = GripScenario::FreeSpace;
    std::uint64_t seed = 0;
    SpectrumReport spectrum;
    NetworkAvailability availability;
    DecisionTrace trace;
    std::string solver;
    Assignment assignment;
    std::vector<ModuleMetrics> modules;
    double aggregate_capacity_bps = 0.0;
    std::size_t blocked_module_count = 0;
    SpacingReport spacing;
    std::vector<std::pair<std::size_t, std::size_t>> carrier_rule_violations;
    std::optional<std::string> infeasibility;

    const ModeDecision& decision() const { return trace.decision; }
};

/// Configs for a layout x grip comparison row.
struct ComparisonRow {
    std::string layout;
    GripScenario grip = GripScenario::FreeSpace;
    ModeDecision decision;
    std::size_t active_modules = 0;
    std::size_t blocked_modules = 0;
    std::size_t modules_below_3db = 0;
    double aggregate_capacity_bps = 0.0;
    double mean_active_snr_db = 0.0;
};

struct SweepResult {
    std::optional<MetricsReport> report;
    std::optional<std::string> error;
};

/// The pipeline: blockage mask, sensing, availability, network selection,
/// allocation (greedy; exhaustive when requested and n_bf <= kOracleMaxModules),
/// then per-module budgets. Infeasible decision/fabric combinations come back as
/// a report with `infeasibility` set. Throws ConfigError for invalid configs.
MetricsReport run(const ScenarioConfig& config, const RunOptions& options = {});

/// Runs the three presets against every grip, otherwise keeping `base`.
/// The WiGig IF count is clipped to each preset's module count.
std::vector<ComparisonRow> compare_layouts(const std::vector<GripScenario>& grips,
                                           const ScenarioConfig& base,
                                           const RunOptions& options = {});

/// Runs every config; results are in input order and independent of `jobs`.
/// Errors are collected per config. jobs == 0 picks the hardware concurrency.
std::vector<SweepResult> sweep(const std::vector<ScenarioConfig>& configs,
                               const RunOptions& options = {}, unsigned jobs = 1);

/// Built-in het-net scenario: dpa_8 held in landscape, base station at 100 m and a
/// WiFi router at 5 m, requirement beyond either network alone.
ScenarioConfig default_fig8_scenario();

/// Estimated link SNR (dB) for a band, using the least-blocked module that
/// supports it; sub-6 bands use the UE's sub-6 front end with no hand loss.
/// Returns -inf when the network's node is missing or no module supports the band.
double estimate_band_snr(const ScenarioConfig& config, const BlockageMask& mask, const Band& band);

/// LTE-LAA style reference: one 20 MHz licensed plus one 20 MHz unlicensed carrier.
inline constexpr double kLaaBaselineCarrierHz = 20e6;
double laa_baseline_capacity(double licensed_snr_db, double unlicensed_snr_db);

}  // namespace dpamimo
