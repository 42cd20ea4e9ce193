#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpamimo {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

enum class Service { Cellular, WiFi };
enum class Regime { Licensed, Unlicensed };
enum class Tier { Sub6, MmWave };

/// Channelization defaults for the built-in catalog.
inline constexpr double kWiGigChannelMHz = 2160.0;
inline constexpr double kMmWaveCarrierMHz = 400.0;
inline constexpr double kSub6CarrierMHz = 20.0;

struct Band {
    std::string id;
    Service service = Service::Cellular;
    Regime regime = Regime::Licensed;
    double center_ghz = 0.0;
    double bandwidth_mhz = 0.0;
    Tier tier = Tier::Sub6;

    /// Builds a band with the tier derived from the center frequency.
    /// Throws DomainError for non-positive frequency or bandwidth.
    static Band make(std::string id, Service service, Regime regime, double center_ghz,
                     double bandwidth_mhz);

    double low_ghz() const { return center_ghz - bandwidth_mhz / 2000.0; }
    double high_ghz() const { return center_ghz + bandwidth_mhz / 2000.0; }
    double bandwidth_hz() const { return bandwidth_mhz * 1e6; }

    bool operator==(const Band&) const = default;
};

/// Ordered band inventory. Ids are unique and bands of the same service never overlap.
class BandCatalog {
public:
    BandCatalog() = default;
    /// Throws ConfigError on duplicate ids, overlapping same-service bands or a
    /// band whose tier disagrees with its center frequency.
    explicit BandCatalog(std::vector<Band> bands);

    std::span<const Band> bands() const { return bands_; }
    std::size_t size() const { return bands_.size(); }
    const Band* find(std::string_view id) const;
    /// Throws ConfigError when the id is unknown.
    const Band& at(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    bool operator==(const BandCatalog&) const = default;

private:
    std::vector<Band> bands_;
};

enum class AggregationClass { None, LAA, SuperCA };

/// Free-space wavelength in meters. Throws DomainError for frequency <= 0.
double wavelength_m(double frequency_ghz);

/// Licensed 28 GHz (two carriers), 37 and 39 GHz cellular, WiGig channels 1-6 (57-71 GHz), unlicensed
/// 71 GHz cellular, a 5 GHz unlicensed cellular (LAA) carrier, 2.4/5 GHz WiFi and
/// one sub-6 licensed cellular band.
BandCatalog default_catalog();

/// Carrier-aggregation class of a band set (duplicates by id are ignored):
///   - one band, or licensed-only single-service sets: None
///   - cellular and WiFi bands mixed: SuperCA
///   - unlicensed bands present across both tiers: SuperCA
///   - exactly one licensed cellular anchor plus unlicensed cellular carriers
///     in the same tier: LAA
///   - several licensed anchors plus unlicensed carriers: SuperCA
///   - single-tier unlicensed-only: None
/// Throws DomainError on an empty set.
AggregationClass classify_aggregation(std::span<const Band> selected);

std::string_view to_string(Service s);
std::string_view to_string(Regime r);
std::string_view to_string(Tier t);
std::string_view to_string(AggregationClass a);
std::optional<Service> parse_service(std::string_view s);
std::optional<Regime> parse_regime(std::string_view s);

}  // namespace dpamimo
