#include "dpamimo/spectrum.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "dpamimo/errors.hpp"

namespace dpamimo {

namespace {

constexpr double kSub6CeilingGhz = 6.0;

Tier tier_for(double center_ghz) {
    return center_ghz < kSub6CeilingGhz ? Tier::Sub6 : Tier::MmWave;
}

}  // namespace

Band Band::make(std::string id, Service service, Regime regime, double center_ghz,
                double bandwidth_mhz) {
    if (!(center_ghz > 0.0)) {
        throw DomainError("band '" + id + "': center frequency must be positive");
    }
    if (!(bandwidth_mhz > 0.0)) {
        throw DomainError("band '" + id + "': bandwidth must be positive");
    }
    return Band{std::move(id), service, regime, center_ghz, bandwidth_mhz, tier_for(center_ghz)};
}

BandCatalog::BandCatalog(std::vector<Band> bands) : bands_(std::move(bands)) {
    std::set<std::string_view> ids;
    for (const auto& b : bands_) {
        if (b.id.empty()) throw ConfigError("band id must not be empty", "catalog");
        if (!ids.insert(b.id).second) {
            throw ConfigError("duplicate band id '" + b.id + "'", "catalog");
        }
        if (!(b.center_ghz > 0.0) || !(b.bandwidth_mhz > 0.0)) {
            throw ConfigError("band '" + b.id + "' needs positive frequency and bandwidth",
                              "catalog");
        }
        if (b.tier != tier_for(b.center_ghz)) {
            throw ConfigError("band '" + b.id + "' tier disagrees with its center frequency",
                              "catalog");
        }
    }
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        for (std::size_t j = i + 1; j < bands_.size(); ++j) {
            const Band& a = bands_[i];
            const Band& b = bands_[j];
            if (a.service != b.service) continue;
            if (a.low_ghz() < b.high_ghz() && b.low_ghz() < a.high_ghz()) {
                throw ConfigError("bands '" + a.id + "' and '" + b.id + "' overlap", "catalog");
            }
        }
    }
}

const Band* BandCatalog::find(std::string_view id) const {
    auto it = std::find_if(bands_.begin(), bands_.end(),
                           [&](const Band& b) { return b.id == id; });
    return it == bands_.end() ? nullptr : &*it;
}

const Band& BandCatalog::at(std::string_view id) const {
    if (const Band* b = find(id)) return *b;
    throw ConfigError("unknown band id '" + std::string(id) + "'");
}

double wavelength_m(double frequency_ghz) {
    if (!(frequency_ghz > 0.0)) throw DomainError("wavelength: frequency must be positive");
    return kSpeedOfLight / (frequency_ghz * 1e9);
}

BandCatalog default_catalog() {
    using S = Service;
    using R = Regime;
    std::vector<Band> bands;
    bands.push_back(Band::make("cell_sub6_3p5", S::Cellular, R::Licensed, 3.5, kSub6CarrierMHz));
    bands.push_back(Band::make("cell_u5", S::Cellular, R::Unlicensed, 5.745, kSub6CarrierMHz));
    bands.push_back(Band::make("wifi_2g4", S::WiFi, R::Unlicensed, 2.437, kSub6CarrierMHz));
    bands.push_back(Band::make("wifi_5g", S::WiFi, R::Unlicensed, 5.18, kSub6CarrierMHz));
    bands.push_back(Band::make("cell_28", S::Cellular, R::Licensed, 28.0, kMmWaveCarrierMHz));
    // Second 400 MHz component carrier in the 28 GHz band, adjacent to cell_28.
    bands.push_back(Band::make("cell_28b", S::Cellular, R::Licensed, 28.4, kMmWaveCarrierMHz));
    bands.push_back(Band::make("cell_37", S::Cellular, R::Licensed, 37.0, kMmWaveCarrierMHz));
    bands.push_back(Band::make("cell_39", S::Cellular, R::Licensed, 39.0, kMmWaveCarrierMHz));
    bands.push_back(Band::make("cell_u71", S::Cellular, R::Unlicensed, 71.0, kMmWaveCarrierMHz));
    // WiGig channels 1-6 (802.11ad/ay raster, 2.16 GHz spacing). Defaults, not mandated.
    for (int ch = 1; ch <= 6; ++ch) {
        const double center = 58.32 + 2.16 * (ch - 1);
        bands.push_back(Band::make("wigig_ch" + std::to_string(ch), S::WiFi, R::Unlicensed, center,
                                   kWiGigChannelMHz));
    }
    return BandCatalog(std::move(bands));
}

AggregationClass classify_aggregation(std::span<const Band> selected) {
    if (selected.empty()) throw DomainError("classify_aggregation: empty band set");

    std::vector<const Band*> unique;
    for (const auto& b : selected) {
        bool seen = std::any_of(unique.begin(), unique.end(),
                                [&](const Band* u) { return u->id == b.id; });
        if (!seen) unique.push_back(&b);
    }
    if (unique.size() == 1) return AggregationClass::None;

    bool cellular = false, wifi = false, sub6 = false, mmwave = false;
    std::size_t licensed = 0, unlicensed = 0;
    for (const Band* b : unique) {
        (b->service == Service::Cellular ? cellular : wifi) = true;
        (b->tier == Tier::Sub6 ? sub6 : mmwave) = true;
        ++(b->regime == Regime::Licensed ? licensed : unlicensed);
    }

    if (cellular && wifi) return AggregationClass::SuperCA;
    if (unlicensed == 0) return AggregationClass::None;
    const bool spans_tiers = sub6 && mmwave;
    if (licensed == 0) return spans_tiers ? AggregationClass::SuperCA : AggregationClass::None;
    if (spans_tiers) return AggregationClass::SuperCA;
    if (cellular && licensed == 1) return AggregationClass::LAA;
    return AggregationClass::SuperCA;
}

std::string_view to_string(Service s) { return s == Service::Cellular ? "cellular" : "wifi"; }
std::string_view to_string(Regime r) { return r == Regime::Licensed ? "licensed" : "unlicensed"; }
std::string_view to_string(Tier t) { return t == Tier::Sub6 ? "sub6" : "mmwave"; }

std::string_view to_string(AggregationClass a) {
    switch (a) {
        case AggregationClass::None: return "none";
        case AggregationClass::LAA: return "laa";
        case AggregationClass::SuperCA: return "super_ca";
    }
    return "none";
}

std::optional<Service> parse_service(std::string_view s) {
    if (s == "cellular") return Service::Cellular;
    if (s == "wifi") return Service::WiFi;
    return std::nullopt;
}

std::optional<Regime> parse_regime(std::string_view s) {
    if (s == "licensed") return Regime::Licensed;
    if (s == "unlicensed") return Regime::Unlicensed;
    return std::nullopt;
}

}  // namespace dpamimo
