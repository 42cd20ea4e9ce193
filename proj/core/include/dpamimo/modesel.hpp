#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpamimo/link.hpp"
#include "dpamimo/spectrum.hpp"

namespace dpamimo {

struct BandObservation {
    bool available = true;
    double occupancy = 0.0;  // fraction of airtime in use, [0, 1]

    bool operator==(const BandObservation&) const = default;
};

/// Per-band ground truth from the scenario. Bands not listed are idle and available.
using SpectrumGroundTruth = std::map<std::string, BandObservation>;

/// Sensing output; holds an entry for every catalog band.
struct SpectrumReport {
    std::map<std::string, BandObservation> bands;

    const BandObservation& at(std::string_view id) const;
    bool operator==(const SpectrumReport&) const = default;
};

struct NetworkAvailability {
    bool cellular_reachable = false;
    bool wifi_reachable = false;
    std::vector<std::string> cellular_bands;  // catalog order
    std::vector<std::string> wifi_bands;

    bool operator==(const NetworkAvailability&) const = default;
};

enum class ServiceClass { eMBB, uRLLC, mMTC };

struct AppRequirement {
    double min_throughput_bps = 0.0;
    double max_latency_ms = 100.0;
    ServiceClass service_class = ServiceClass::eMBB;

    /// Throws ConfigError for negative throughput or non-positive latency.
    void validate() const;
    bool operator==(const AppRequirement&) const = default;
};

/// Per-technology access latency. Aggregated operation takes the minimum of its parts.
struct LatencyTable {
    double cellular_mmwave_ms = 5.0;
    double cellular_sub6_ms = 10.0;
    double wifi_ms = 15.0;

    double latency_for(const Band& band) const;
    bool operator==(const LatencyTable&) const = default;
};

enum class DecisionKind { CellularOnly, WiFiOnly, CellularAndWiFi, NoService };

struct ModeDecision {
    DecisionKind kind = DecisionKind::NoService;
    /// LAA or SuperCA for CellularAndWiFi, None otherwise.
    AggregationClass aggregation = AggregationClass::None;

    static ModeDecision cellular_only() { return {DecisionKind::CellularOnly, AggregationClass::None}; }
    static ModeDecision wifi_only() { return {DecisionKind::WiFiOnly, AggregationClass::None}; }
    static ModeDecision no_service() { return {DecisionKind::NoService, AggregationClass::None}; }
    static ModeDecision cellular_and_wifi(AggregationClass agg) {
        return {DecisionKind::CellularAndWiFi, agg};
    }

    bool uses_cellular() const {
        return kind == DecisionKind::CellularOnly || kind == DecisionKind::CellularAndWiFi;
    }
    bool uses_wifi() const {
        return kind == DecisionKind::WiFiOnly || kind == DecisionKind::CellularAndWiFi;
    }

    bool operator==(const ModeDecision&) const = default;
};

/// Everything the network-selection step looked at, for the metrics report.
struct DecisionTrace {
    ModeDecision decision;
    std::optional<std::string> cellular_band;  // best reachable band per network
    std::optional<std::string> wifi_band;
    double cellular_capacity_bps = 0.0;
    double wifi_capacity_bps = 0.0;
    double cellular_latency_ms = 0.0;
    double wifi_latency_ms = 0.0;
    std::vector<std::string> aggregation_bands;
    std::string rule;  // which row of the decision table fired
};

/// Maps a band to an estimate (SNR in dB, or capacity in bit/s) for the link the
/// UE would open on it.
using BandEstimator = std::function<double(const Band&)>;

inline constexpr double kDefaultAccessSnrDb = 0.0;

/// Ideal sensing: the report mirrors the ground truth, with idle defaults for
/// unlisted bands. Throws ConfigError for bands missing from the catalog or
/// occupancy outside [0, 1].
SpectrumReport sense(const SpectrumGroundTruth& truth, const BandCatalog& catalog);

/// A network is reachable iff its node (base station or router) exists and at
/// least one of its available bands has estimated SNR above the threshold.
NetworkAvailability availability(const SpectrumReport& report, const BandCatalog& catalog,
                                 std::span<const NodeSpec> nodes, const BandEstimator& snr_db,
                                 double access_threshold_db = kDefaultAccessSnrDb);

/// Network selection:
///   neither reachable       -> NoService
///   exactly one reachable   -> that network
///   both reachable          -> the better single network (higher estimated
///                              capacity, ties to cellular) if it meets both the
///                              throughput and the latency requirement; otherwise
///                              CellularAndWiFi, SuperCA when the aggregated band
///                              set classifies as SuperCA and LAA otherwise.
/// Estimated capacity of a band is capacity_bps(band) * (1 - occupancy).
/// A sub-6 WiFi carrier aggregated with a cellular anchor is carried on the
/// cellular interface, LAA style.
DecisionTrace decide(const NetworkAvailability& availability, const SpectrumReport& report,
                     const AppRequirement& requirement, const BandCatalog& catalog,
                     const BandEstimator& capacity_bps, const LatencyTable& latency = {});

std::string_view to_string(DecisionKind k);
std::string to_string(const ModeDecision& d);
std::string_view to_string(ServiceClass c);
std::optional<ServiceClass> parse_service_class(std::string_view s);

}  // namespace dpamimo
