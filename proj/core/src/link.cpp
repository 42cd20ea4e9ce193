#include "dpamimo/link.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dpamimo/errors.hpp"

namespace dpamimo {

RadioParams default_radio(NodeRole role) {
    using namespace radio_defaults;
    switch (role) {
        case NodeRole::BaseStation:
            return {kBsTxPowerDbm, kBsGainDbi, kBsGainDbi, kNoiseFigureDb};
        case NodeRole::WiFiRouter:
            return {kRouterTxPowerDbm, kRouterGainDbi, kRouterGainDbi, kNoiseFigureDb};
        case NodeRole::UE:
            return {0.0, kUeModuleGainDbi, kUeModuleGainDbi, kNoiseFigureDb};
    }
    return {};
}

double FreeSpacePathLoss::loss_db(double distance_m, double frequency_ghz) const {
    return fspl_db(distance_m, frequency_ghz);
}

double fspl_db(double distance_m, double frequency_ghz) {
    if (!(distance_m > 0.0)) throw DomainError("fspl: distance must be positive");
    if (!(frequency_ghz > 0.0)) throw DomainError("fspl: frequency must be positive");
    return 20.0 * std::log10(distance_m) + 20.0 * std::log10(frequency_ghz * 1e9) +
           20.0 * std::log10(4.0 * std::numbers::pi / kPathLossSpeedOfLight);
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("noise_floor: bandwidth must be positive");
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double shannon_capacity(double bandwidth_hz, double snr_db) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("shannon_capacity: bandwidth must be positive");
    if (std::isnan(snr_db)) throw DomainError("shannon_capacity: snr is NaN");
    if (snr_db == -std::numeric_limits<double>::infinity()) return 0.0;
    const double linear = std::pow(10.0, snr_db / 10.0);
    return bandwidth_hz * std::log2(1.0 + linear);
}

LinkBudgetResult module_link_budget(const RadioParams& tx, const RadioParams& rx,
                                    double distance_m, const Band& band, double blockage_db,
                                    const PathLossModel& path_loss) {
    if (!(blockage_db >= 0.0)) throw DomainError("link budget: blockage must be >= 0 dB");
    LinkBudgetResult r;
    r.fspl_db = path_loss.loss_db(distance_m, band.center_ghz);
    r.rx_power_dbm = tx.eirp_dbm() + rx.rx_gain_dbi - r.fspl_db - blockage_db;
    r.noise_dbm = noise_floor_dbm(band.bandwidth_hz(), rx.noise_figure_db);
    r.snr_db = r.rx_power_dbm - r.noise_dbm;
    r.capacity_bps = shannon_capacity(band.bandwidth_hz(), r.snr_db);
    return r;
}

double aggregate_capacity(std::span<const LinkBudgetResult> per_stream) {
    std::vector<double> caps;
    caps.reserve(per_stream.size());
    for (const auto& s : per_stream) caps.push_back(s.capacity_bps);
    std::sort(caps.begin(), caps.end());
    double total = 0.0;
    for (double c : caps) total += c;
    return total;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
    if (!(mw > 0.0)) throw DomainError("mw_to_dbm: power must be positive");
    return 10.0 * std::log10(mw);
}

double distance_m(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(NodeRole r) {
    switch (r) {
        case NodeRole::BaseStation: return "base_station";
        case NodeRole::WiFiRouter: return "wifi_router";
        case NodeRole::UE: return "ue";
    }
    return "";
}

std::optional<NodeRole> parse_node_role(std::string_view s) {
    for (auto r : {NodeRole::BaseStation, NodeRole::WiFiRouter, NodeRole::UE}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

}  // namespace dpamimo
