#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpamimo/spectrum.hpp"

namespace dpamimo {

enum class NodeRole { BaseStation, WiFiRouter, UE };

struct Position {
    double x = 0.0;  // meters
    double y = 0.0;

    bool operator==(const Position&) const = default;
};

/// Transmit or receive side of a link. EIRP = tx_power_dbm + tx_gain_dbi.
struct RadioParams {
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;  // includes beamforming array gain
    double noise_figure_db = 0.0;

    double eirp_dbm() const { return tx_power_dbm + tx_gain_dbi; }

    bool operator==(const RadioParams&) const = default;
};

struct NodeSpec {
    std::string id;
    NodeRole role = NodeRole::UE;
    Position position;
    RadioParams radio;

    bool operator==(const NodeSpec&) const = default;
};

/// Modeling defaults for the radios on either end of a link.
namespace radio_defaults {
inline constexpr double kBsTxPowerDbm = 30.0;
inline constexpr double kBsGainDbi = 25.0;
inline constexpr double kRouterTxPowerDbm = 20.0;
inline constexpr double kRouterGainDbi = 10.0;
inline constexpr double kUeModuleGainDbi = 15.0;
inline constexpr double kUeSub6GainDbi = 0.0;
inline constexpr double kNoiseFigureDb = 7.0;
}  // namespace radio_defaults

RadioParams default_radio(NodeRole role);

struct LinkBudgetResult {
    double fspl_db = 0.0;
    double rx_power_dbm = 0.0;
    double noise_dbm = 0.0;
    double snr_db = 0.0;
    double capacity_bps = 0.0;

    bool operator==(const LinkBudgetResult&) const = default;
};

/// Propagation loss between isotropic antennas.
class PathLossModel {
public:
    virtual ~PathLossModel() = default;
    virtual double loss_db(double distance_m, double frequency_ghz) const = 0;
};

/// Friis free-space loss, 20log10(d) + 20log10(f) + 20log10(4*pi/c), with the
/// nominal c = 3e8 m/s of the textbook 32.44 dB (km, MHz) constant.
class FreeSpacePathLoss final : public PathLossModel {
public:
    double loss_db(double distance_m, double frequency_ghz) const override;
};

inline constexpr double kPathLossSpeedOfLight = 3.0e8;
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

/// Throws DomainError for non-positive inputs.
double fspl_db(double distance_m, double frequency_ghz);

/// -174 + 10log10(B) + NF. Throws DomainError for bandwidth <= 0.
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// B * log2(1 + 10^(snr/10)); 0 for snr = -inf. Throws DomainError for bandwidth <= 0.
double shannon_capacity(double bandwidth_hz, double snr_db);

/// rx_power = eirp(tx) + rx.rx_gain - path loss - blockage. Noise uses rx's noise figure
/// over the band's bandwidth.
LinkBudgetResult module_link_budget(const RadioParams& tx, const RadioParams& rx,
                                    double distance_m, const Band& band, double blockage_db,
                                    const PathLossModel& path_loss = FreeSpacePathLoss{});

/// Independent-stream sum. Capacities are summed in sorted order so the result
/// does not depend on stream order.
double aggregate_capacity(std::span<const LinkBudgetResult> per_stream);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

double distance_m(const Position& a, const Position& b);

std::string_view to_string(NodeRole r);
std::optional<NodeRole> parse_node_role(std::string_view s);

}  // namespace dpamimo
