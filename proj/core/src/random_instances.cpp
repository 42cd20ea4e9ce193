#include "dpamimo/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace dpamimo {

namespace {

const std::vector<std::string> kCellularMmWave{"cell_28", "cell_28b", "cell_37", "cell_39", "cell_u71"};
const std::vector<std::string> kWiGig{"wigig_ch1", "wigig_ch2", "wigig_ch3",
                                      "wigig_ch4", "wigig_ch5", "wigig_ch6"};

std::vector<std::string> subset(Rng& rng, const std::vector<std::string>& from, int min_count,
                                int max_count) {
    std::vector<std::string> pool = from;
    const int n = rng.integer(min_count, std::min<int>(max_count, static_cast<int>(pool.size())));
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(pool.size()) - 1));
        out.push_back(pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return out;
}

std::vector<std::string> module_bands(Rng& rng) {
    std::vector<std::string> bands;
    for (const auto& id : kCellularMmWave) {
        if (rng.chance(0.85)) bands.push_back(id);
    }
    for (const auto& id : kWiGig) {
        if (rng.chance(0.85)) bands.push_back(id);
    }
    if (bands.empty()) bands.push_back(kCellularMmWave.front());
    return bands;
}

GripScenario random_grip(Rng& rng) { return kAllGrips[rng.integer(0, 3)]; }

}  // namespace

FabricCase random_fabric_case(Rng& rng, int max_bf) {
    const int n_bf = rng.integer(1, max_bf);
    const int n_wigig = rng.integer(0, std::min(n_bf, 3));
    const int n_fe = rng.integer(0, 2);
    FabricCase fc{FabricConfig::make(n_bf, n_wigig, n_fe), {}};
    FabricState& s = fc.state;
    s = FabricState::all_off(fc.config);

    // Mostly well-formed choices with occasional crossed wiring, so both valid
    // and invalid states are common.
    for (int b = 0; b < n_bf; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        const int roll = rng.integer(0, 9);
        if (roll < 3) continue;
        if (roll < 7 || n_wigig == 0) {
            const int radio = rng.chance(0.9) ? b : rng.integer(0, n_bf - 1);
            s.bf_mode[ub] = BfMode::cellular(radio);
            if (rng.chance(0.9)) s.cell_if_route[static_cast<std::size_t>(radio)] = CellIfRoute::coax(b);
        } else {
            s.bf_mode[ub] = BfMode::wigig(rng.integer(0, n_wigig - 1));
        }
    }
    for (int i = 0; i < n_bf; ++i) {
        auto& route = s.cell_if_route[static_cast<std::size_t>(i)];
        if (route.kind != CellIfRoute::Kind::Off && rng.chance(0.9)) continue;
        const int roll = rng.integer(0, 9);
        if (roll < 6) {
            route = CellIfRoute::off();
        } else if (roll < 9 && n_fe > 0) {
            route = CellIfRoute::sub6(rng.integer(0, n_fe - 1));
        } else {
            route = CellIfRoute::coax(rng.integer(0, n_bf - 1));
        }
    }
    for (int i = 0; i < n_bf; ++i) {
        const auto& route = s.cell_if_route[static_cast<std::size_t>(i)];
        if (route.kind == CellIfRoute::Kind::Sub6FrontEnd && rng.chance(0.9)) s.active_sub6.insert(route.target);
    }
    if (n_fe > 0 && rng.chance(0.05)) s.active_sub6.insert(rng.integer(0, n_fe - 1));
    return fc;
}

UeLayout random_layout(Rng& rng, int modules) {
    const HousingSpec housing{};
    if (rng.chance(0.5)) {
        // Tight grids produce dense adjacency and coloring conflicts.
        for (int attempt = 0; attempt < 64; ++attempt) {
            const int cols = rng.integer(1, std::min(modules, 3));
            const int rows = (modules + cols - 1) / cols;
            const double size = rng.uniform(6.0, 14.0);
            const double gx = rng.uniform(4.0, 35.0);
            const double gy = rng.uniform(4.0, 35.0);
            if (cols * size + (cols - 1) * gx > housing.width_mm) continue;
            if (rows * size + (rows - 1) * gy > housing.height_mm) continue;
            UeLayout grid = grid_layout(housing, rows, cols, size, gx, gy);
            std::vector<ModulePlacement> placements(grid.placements().begin(),
                                                    grid.placements().begin() + modules);
            for (auto& p : placements) p.supported_band_ids = module_bands(rng);
            return UeLayout(housing, std::move(placements));
        }
    }
    std::vector<ModulePlacement> placements;
    while (static_cast<int>(placements.size()) < modules) {
        const double w = rng.uniform(6.0, 16.0);
        const double h = rng.uniform(6.0, 16.0);
        const Rect fp{rng.uniform(0.0, housing.width_mm - w), rng.uniform(0.0, housing.height_mm - h), w, h};
        const bool clear = std::none_of(placements.begin(), placements.end(), [&](const ModulePlacement& p) {
            return intersection_area(p.footprint, fp) > 0.0;
        });
        if (!clear) continue;
        placements.push_back({"m" + std::to_string(placements.size()), fp, module_bands(rng)});
    }
    return UeLayout(housing, std::move(placements));
}

AllocationInputs random_allocation_instance(std::uint64_t seed, int max_bf) {
    Rng rng(seed);
    const int n = rng.integer(1, max_bf);
    const BandCatalog catalog = default_catalog();

    AllocationInputs in;
    in.layout = random_layout(rng, n);
    in.adjacency = adjacency(in.layout, rng.chance(0.7) ? default_adjacency_threshold_mm()
                                                        : rng.uniform(5.0, 45.0));
    in.mask = blockage_mask(in.layout, random_grip(rng));
    switch (rng.integer(0, 5)) {
        case 0: case 1: in.decision = ModeDecision::cellular_only(); break;
        case 2: in.decision = ModeDecision::wifi_only(); break;
        default:
            in.decision = n >= 2 ? ModeDecision::cellular_and_wifi(AggregationClass::SuperCA)
                                 : ModeDecision::cellular_only();
            break;
    }
    const bool wifi = in.decision.uses_wifi();
    const int min_wigig = wifi ? 1 : 0;
    in.fabric = FabricConfig::make(n, rng.integer(min_wigig, std::min(n, 3)), rng.integer(0, 1));
    for (const auto& id : subset(rng, kCellularMmWave, 1, 3)) in.carriers.cellular.push_back(catalog.at(id));
    for (const auto& id : subset(rng, kWiGig, min_wigig, 2)) in.carriers.wigig.push_back(catalog.at(id));

    const double angle = rng.uniform(0.0, 6.283185307179586);
    const double bs_d = rng.uniform(20.0, 300.0);
    const double ap_d = rng.uniform(2.0, 30.0);
    in.nodes.push_back({"ue", NodeRole::UE, {0.0, 0.0}, default_radio(NodeRole::UE)});
    in.nodes.push_back({"bs", NodeRole::BaseStation, {bs_d * std::cos(angle), bs_d * std::sin(angle)},
                        default_radio(NodeRole::BaseStation)});
    if (wifi || rng.chance(0.5)) {
        in.nodes.push_back({"router", NodeRole::WiFiRouter, {ap_d * std::sin(angle), -ap_d * std::cos(angle)},
                            default_radio(NodeRole::WiFiRouter)});
    }
    return in;
}

ScenarioConfig random_scenario(std::uint64_t seed, int max_bf) {
    Rng rng(seed);
    ScenarioConfig c;
    c.name = "random_" + std::to_string(seed);
    c.seed = seed;
    c.catalog = default_catalog();
    c.default_catalog = true;

    const int layout_kind = rng.integer(0, 3);
    if (layout_kind < 3 && max_bf >= 8) {
        const LayoutPreset p = layout_kind == 0   ? LayoutPreset::ConventionalCenter
                               : layout_kind == 1 ? LayoutPreset::TopBottom
                                                  : LayoutPreset::Dpa8;
        c.layout = preset(p);
        c.layout_name = std::string(to_string(p));
    } else {
        c.layout = random_layout(rng, rng.integer(1, max_bf));
        c.layout_name = "custom";
    }
    const int n = static_cast<int>(c.layout.size());
    const int n_wigig = rng.chance(0.1) ? 0 : rng.integer(1, std::min(n, 3));
    c.fabric = FabricConfig::make(n, n_wigig, rng.integer(0, 2));
    c.grip = random_grip(rng);

    const double angle = rng.uniform(0.0, 6.283185307179586);
    const double bs_d = rng.chance(0.1) ? rng.uniform(1e4, 1e7) : rng.uniform(20.0, 400.0);
    c.nodes.push_back({"ue", NodeRole::UE, {0.0, 0.0}, default_radio(NodeRole::UE)});
    if (rng.chance(0.9)) {
        c.nodes.push_back({"bs", NodeRole::BaseStation, {bs_d * std::cos(angle), bs_d * std::sin(angle)},
                           default_radio(NodeRole::BaseStation)});
    }
    if (rng.chance(0.8)) {
        const double ap_d = rng.uniform(2.0, 40.0);
        c.nodes.push_back({"router", NodeRole::WiFiRouter, {ap_d * std::sin(angle), -ap_d * std::cos(angle)},
                           default_radio(NodeRole::WiFiRouter)});
    }

    for (const auto& band : c.catalog.bands()) {
        const int roll = rng.integer(0, 9);
        if (roll == 0) c.spectrum[band.id] = {false, 0.0};
        else if (roll < 4) c.spectrum[band.id] = {true, rng.uniform(0.0, 0.9)};
    }
    if (rng.chance(0.6)) c.cellular_carriers = subset(rng, kCellularMmWave, 1, 3);
    if (rng.chance(0.6)) c.wigig_carriers = subset(rng, kWiGig, 1, 2);

    const std::vector<double> latencies{3.0, 8.0, 12.0, 20.0, 50.0};
    c.requirement = {rng.uniform(0.0, 6e10), rng.pick(latencies),
                     static_cast<ServiceClass>(rng.integer(0, 2))};
    if (rng.chance(0.3)) c.model.adjacency_threshold_mm = rng.uniform(5.0, 45.0);
    c.validate();
    return c;
}

}  // namespace dpamimo
