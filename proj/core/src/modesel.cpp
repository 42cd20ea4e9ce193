#include "dpamimo/modesel.hpp"

#include <algorithm>

#include "dpamimo/errors.hpp"

namespace dpamimo {

const BandObservation& SpectrumReport::at(std::string_view id) const {
    auto it = bands.find(std::string(id));
    if (it == bands.end()) throw ConfigError("band '" + std::string(id) + "' missing from report");
    return it->second;
}

void AppRequirement::validate() const {
    if (!(min_throughput_bps >= 0.0)) {
        throw ConfigError("must be >= 0", "requirement/min_throughput_bps");
    }
    if (!(max_latency_ms > 0.0)) throw ConfigError("must be > 0", "requirement/max_latency_ms");
}

double LatencyTable::latency_for(const Band& band) const {
    if (band.service == Service::WiFi) return wifi_ms;
    return band.tier == Tier::MmWave ? cellular_mmwave_ms : cellular_sub6_ms;
}

SpectrumReport sense(const SpectrumGroundTruth& truth, const BandCatalog& catalog) {
    for (const auto& [id, obs] : truth) {
        if (!catalog.contains(id)) throw ConfigError("unknown band '" + id + "'", "spectrum/" + id);
        if (!(obs.occupancy >= 0.0 && obs.occupancy <= 1.0)) {
            throw ConfigError("occupancy must lie in [0, 1]", "spectrum/" + id + "/occupancy");
        }
    }
    SpectrumReport report;
    for (const auto& band : catalog.bands()) {
        auto it = truth.find(band.id);
        report.bands[band.id] = it == truth.end() ? BandObservation{} : it->second;
    }
    return report;
}

NetworkAvailability availability(const SpectrumReport& report, const BandCatalog& catalog,
                                 std::span<const NodeSpec> nodes, const BandEstimator& snr_db,
                                 double access_threshold_db) {
    auto has_role = [&](NodeRole role) {
        return std::any_of(nodes.begin(), nodes.end(),
                           [&](const NodeSpec& n) { return n.role == role; });
    };
    const bool have_bs = has_role(NodeRole::BaseStation);
    const bool have_router = has_role(NodeRole::WiFiRouter);

    NetworkAvailability out;
    for (const auto& band : catalog.bands()) {
        const bool cellular = band.service == Service::Cellular;
        if (cellular ? !have_bs : !have_router) continue;
        if (!report.at(band.id).available) continue;
        if (!(snr_db(band) > access_threshold_db)) continue;
        (cellular ? out.cellular_bands : out.wifi_bands).push_back(band.id);
    }
    out.cellular_reachable = !out.cellular_bands.empty();
    out.wifi_reachable = !out.wifi_bands.empty();
    return out;
}

namespace {

struct BestBand {
    const Band* band = nullptr;
    double capacity_bps = 0.0;
};

BestBand best_of(const std::vector<std::string>& ids, const SpectrumReport& report,
                 const BandCatalog& catalog, const BandEstimator& capacity_bps) {
    BestBand best;
    for (const auto& id : ids) {
        const Band& band = catalog.at(id);
        const double cap = capacity_bps(band) * (1.0 - report.at(id).occupancy);
        // Strict comparison keeps the first (catalog-order) band on ties.
        if (!best.band || cap > best.capacity_bps) best = {&band, cap};
    }
    return best;
}

}  // namespace

DecisionTrace decide(const NetworkAvailability& avail, const SpectrumReport& report,
                     const AppRequirement& requirement, const BandCatalog& catalog,
                     const BandEstimator& capacity_bps, const LatencyTable& latency) {
    DecisionTrace trace;
    BestBand cell, wifi;
    if (avail.cellular_reachable) {
        cell = best_of(avail.cellular_bands, report, catalog, capacity_bps);
        trace.cellular_band = cell.band->id;
        trace.cellular_capacity_bps = cell.capacity_bps;
        trace.cellular_latency_ms = latency.latency_for(*cell.band);
    }
    if (avail.wifi_reachable) {
        wifi = best_of(avail.wifi_bands, report, catalog, capacity_bps);
        trace.wifi_band = wifi.band->id;
        trace.wifi_capacity_bps = wifi.capacity_bps;
        trace.wifi_latency_ms = latency.latency_for(*wifi.band);
    }

    if (!avail.cellular_reachable && !avail.wifi_reachable) {
        trace.decision = ModeDecision::no_service();
        trace.rule = "none_reachable";
        return trace;
    }
    if (!avail.wifi_reachable) {
        trace.decision = ModeDecision::cellular_only();
        trace.rule = "only_cellular_reachable";
        return trace;
    }
    if (!avail.cellular_reachable) {
        trace.decision = ModeDecision::wifi_only();
        trace.rule = "only_wifi_reachable";
        return trace;
    }

    const bool cellular_best = trace.cellular_capacity_bps >= trace.wifi_capacity_bps;
    const double best_cap = cellular_best ? trace.cellular_capacity_bps : trace.wifi_capacity_bps;
    const double best_latency = cellular_best ? trace.cellular_latency_ms : trace.wifi_latency_ms;
    if (best_cap >= requirement.min_throughput_bps && best_latency <= requirement.max_latency_ms) {
        trace.decision = cellular_best ? ModeDecision::cellular_only() : ModeDecision::wifi_only();
        trace.rule = cellular_best ? "single_network_cellular" : "single_network_wifi";
        return trace;
    }

    std::vector<Band> aggregated{*cell.band, *wifi.band};
    if (wifi.band->tier == Tier::Sub6) aggregated.back().service = Service::Cellular;
    trace.aggregation_bands = {cell.band->id, wifi.band->id};
    const bool super_ca = classify_aggregation(aggregated) == AggregationClass::SuperCA;
    trace.decision = ModeDecision::cellular_and_wifi(super_ca ? AggregationClass::SuperCA
                                                              : AggregationClass::LAA);
    trace.rule = best_cap < requirement.min_throughput_bps ? "aggregate_for_throughput"
                                                           : "aggregate_for_latency";
    return trace;
}

std::string_view to_string(DecisionKind k) {
    switch (k) {
        case DecisionKind::CellularOnly: return "cellular_only";
        case DecisionKind::WiFiOnly: return "wifi_only";
        case DecisionKind::CellularAndWiFi: return "cellular_and_wifi";
        case DecisionKind::NoService: return "no_service";
    }
    return "";
}

std::string to_string(const ModeDecision& d) {
    std::string s(to_string(d.kind));
    if (d.kind == DecisionKind::CellularAndWiFi) {
        s += "(";
        s += to_string(d.aggregation);
        s += ")";
    }
    return s;
}

std::string_view to_string(ServiceClass c) {
    switch (c) {
        case ServiceClass::eMBB: return "eMBB";
        case ServiceClass::uRLLC: return "uRLLC";
        case ServiceClass::mMTC: return "mMTC";
    }
    return "";
}

std::optional<ServiceClass> parse_service_class(std::string_view s) {
    for (auto c : {ServiceClass::eMBB, ServiceClass::uRLLC, ServiceClass::mMTC}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

}  // namespace dpamimo
