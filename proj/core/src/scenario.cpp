#include "dpamimo/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "dpamimo/errors.hpp"

namespace dpamimo {

namespace {

const NodeSpec* node_with_role(const std::vector<NodeSpec>& nodes, NodeRole role) {
    for (const auto& n : nodes) {
        if (n.role == role) return &n;
    }
    return nullptr;
}

void check_carriers(const std::optional<std::vector<std::string>>& ids, const BandCatalog& catalog,
                    Service service, const std::string& path) {
    if (!ids) return;
    for (std::size_t i = 0; i < ids->size(); ++i) {
        const std::string& id = (*ids)[i];
        const Band* band = catalog.find(id);
        const std::string at = path + "/" + std::to_string(i);
        if (!band) throw ConfigError("unknown band '" + id + "'", at);
        if (band->service != service || band->tier != Tier::MmWave) {
            throw ConfigError("band '" + id + "' is not a " + std::string(to_string(service)) +
                                  " mmWave band",
                              at);
        }
    }
}

}  // namespace

const NodeSpec& ScenarioConfig::ue() const {
    if (const NodeSpec* n = node_with_role(nodes, NodeRole::UE)) return *n;
    throw ConfigError("scenario has no UE node", "nodes");
}

void ScenarioConfig::validate() const {
    fabric.validate();
    if (static_cast<std::size_t>(fabric.n_bf) != layout.size()) {
        throw ConfigError("n_bf (" + std::to_string(fabric.n_bf) + ") must equal the module count (" +
                              std::to_string(layout.size()) + ")",
                          "fabric/n_bf");
    }

    std::set<std::string_view> ids;
    std::size_t ue_count = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        const std::string path = "nodes/" + std::to_string(i);
        if (n.id.empty()) throw ConfigError("node id must not be empty", path + "/id");
        if (!ids.insert(n.id).second) throw ConfigError("duplicate node id '" + n.id + "'", path + "/id");
        if (n.role == NodeRole::UE) ++ue_count;
        if (!(n.radio.noise_figure_db >= 0.0)) {
            throw ConfigError("noise figure must be >= 0", path + "/radio/noise_figure_db");
        }
    }
    if (ue_count != 1) {
        throw ConfigError("exactly one UE node required, found " + std::to_string(ue_count), "nodes");
    }
    const NodeSpec& u = ue();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].role != NodeRole::UE && nodes[i].position == u.position) {
            throw ConfigError("node '" + nodes[i].id + "' coincides with the UE",
                              "nodes/" + std::to_string(i) + "/position");
        }
    }
    if (!(ue_radio.noise_figure_db >= 0.0)) {
        throw ConfigError("noise figure must be >= 0", "ue_radio/noise_figure_db");
    }

    for (std::size_t i = 0; i < layout.size(); ++i) {
        const auto& bands = layout[i].supported_band_ids;
        for (std::size_t k = 0; k < bands.size(); ++k) {
            const Band* band = catalog.find(bands[k]);
            const std::string path =
                "layout/modules/" + std::to_string(i) + "/bands/" + std::to_string(k);
            if (!band) throw ConfigError("unknown band '" + bands[k] + "'", path);
            if (band->tier != Tier::MmWave) {
                throw ConfigError("BF modules only support mmWave bands", path);
            }
        }
    }
    check_carriers(cellular_carriers, catalog, Service::Cellular, "carriers/cellular");
    check_carriers(wigig_carriers, catalog, Service::WiFi, "carriers/wigig");
    requirement.validate();
    model.blockage.validate();
    if (!(model.adjacency_threshold_mm > 0.0)) {
        throw ConfigError("must be > 0", "model/adjacency_threshold_mm");
    }
    const auto& lat = model.latency;
    if (!(lat.cellular_mmwave_ms > 0.0 && lat.cellular_sub6_ms > 0.0 && lat.wifi_ms > 0.0)) {
        throw ConfigError("latencies must be > 0", "model/latency_ms");
    }
    // Validates ids and occupancies.
    (void)sense(spectrum, catalog);
}

double estimate_band_snr(const ScenarioConfig& config, const BlockageMask& mask, const Band& band) {
    constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
    const NodeSpec* tx = node_with_role(
        config.nodes, band.service == Service::Cellular ? NodeRole::BaseStation : NodeRole::WiFiRouter);
    if (!tx) return kUnreachable;

    double blockage = 0.0;
    if (band.tier == Tier::MmWave) {
        std::optional<double> least;
        for (const auto& p : config.layout.placements()) {
            const auto& ids = p.supported_band_ids;
            if (std::find(ids.begin(), ids.end(), band.id) == ids.end()) continue;
            const double a = mask.at(p.id);
            if (!least || a < *least) least = a;
        }
        if (!least) return kUnreachable;
        blockage = *least;
    }
    const double d = distance_m(tx->position, config.ue().position);
    return module_link_budget(tx->radio, config.ue_radio.receiver(band), d, band, blockage).snr_db;
}

double laa_baseline_capacity(double licensed_snr_db, double unlicensed_snr_db) {
    return shannon_capacity(kLaaBaselineCarrierHz, licensed_snr_db) +
           shannon_capacity(kLaaBaselineCarrierHz, unlicensed_snr_db);
}

namespace {

std::vector<Band> allowed_carriers(const std::optional<std::vector<std::string>>& configured,
                                   const std::vector<std::string>& reachable,
                                   const BandCatalog& catalog) {
    std::vector<Band> out;
    for (const auto& id : reachable) {
        const Band& band = catalog.at(id);
        if (band.tier != Tier::MmWave) continue;
        if (configured && std::find(configured->begin(), configured->end(), id) == configured->end()) {
            continue;
        }
        out.push_back(band);
    }
    return out;
}

}  // namespace

MetricsReport run(const ScenarioConfig& config, const RunOptions& options) {
    config.validate();
    const BandCatalog& catalog = config.catalog;

    MetricsReport report;
    report.scenario = config.name;
    report.layout = config.layout_name;
    report.grip = config.grip;
    report.seed = config.seed;

    const BlockageMask mask = blockage_mask(config.layout, config.grip, config.model.blockage);
    report.spectrum = sense(config.spectrum, catalog);

    auto snr_estimate = [&](const Band& band) { return estimate_band_snr(config, mask, band); };
    auto capacity_estimate = [&](const Band& band) {
        return shannon_capacity(band.bandwidth_hz(), snr_estimate(band));
    };
    report.availability = availability(report.spectrum, catalog, config.nodes, snr_estimate,
                                       config.model.access_snr_threshold_db);
    report.trace = decide(report.availability, report.spectrum, config.requirement, catalog,
                          capacity_estimate, config.model.latency);

    AllocationInputs inputs{
        config.layout,
        adjacency(config.layout, config.model.adjacency_threshold_mm),
        mask,
        config.fabric,
        {allowed_carriers(config.cellular_carriers, report.availability.cellular_bands, catalog),
         allowed_carriers(config.wigig_carriers, report.availability.wifi_bands, catalog)},
        config.nodes,
        report.trace.decision,
        config.ue_radio,
    };

    const bool oracle = options.oracle && config.fabric.n_bf <= kOracleMaxModules;
    report.solver = oracle ? "oracle" : "greedy";
    report.assignment = oracle ? brute_force_assign(inputs) : greedy_assign(inputs);
    report.infeasibility = report.assignment.infeasible;

    const auto verdict = validate(config.fabric, report.assignment.fabric);
    if (!verdict.ok()) {
        throw std::logic_error("allocator produced an invalid fabric state: " +
                               std::string(to_string(verdict.violations.front().kind)));
    }
    if (report.assignment.feasible() &&
        !consistent_with(report.assignment.fabric, report.trace.decision)) {
        throw std::logic_error("allocator fabric state does not serve the decision");
    }
    report.carrier_rule_violations = check_carrier_rule(report.assignment, inputs.adjacency);

    std::vector<LinkBudgetResult> streams;
    for (std::size_t i = 0; i < config.layout.size(); ++i) {
        const auto& a = report.assignment.modules[i];
        ModuleMetrics m;
        m.id = config.layout[i].id;
        m.link = a.link;
        m.attenuation_db = mask.at(m.id);
        if (a.active()) {
            m.target = a.target;
            m.carrier = a.carrier;
            m.snr_db = a.budget.snr_db;
            m.capacity_bps = a.budget.capacity_bps;
            m.bandwidth_hz = catalog.at(a.carrier).bandwidth_hz();
            streams.push_back(a.budget);
        }
        report.modules.push_back(std::move(m));
    }
    report.aggregate_capacity_bps = aggregate_capacity(streams);
    report.blocked_module_count = mask.count_at_least(kBlockedThresholdDb);
    report.spacing = validate_spacing(config.layout, catalog);
    return report;
}

std::vector<ComparisonRow> compare_layouts(const std::vector<GripScenario>& grips,
                                           const ScenarioConfig& base, const RunOptions& options) {
    std::vector<ComparisonRow> rows;
    for (GripScenario grip : grips) {
        for (auto which : {LayoutPreset::ConventionalCenter, LayoutPreset::TopBottom, LayoutPreset::Dpa8}) {
            ScenarioConfig cfg = base;
            cfg.layout = preset(which, base.layout.housing());
            cfg.layout_name = std::string(to_string(which));
            cfg.fabric.n_bf = static_cast<int>(cfg.layout.size());
            cfg.fabric.n_wigig_if = std::min(cfg.fabric.n_wigig_if, cfg.fabric.n_bf);
            cfg.grip = grip;
            const MetricsReport r = run(cfg, options);

            ComparisonRow row;
            row.layout = cfg.layout_name;
            row.grip = grip;
            row.decision = r.decision();
            row.aggregate_capacity_bps = r.aggregate_capacity_bps;
            row.blocked_modules = r.blocked_module_count;
            double snr_sum = 0.0;
            for (const auto& m : r.modules) {
                if (m.attenuation_db < 3.0) ++row.modules_below_3db;
                if (m.snr_db) {
                    ++row.active_modules;
                    snr_sum += *m.snr_db;
                }
            }
            row.mean_active_snr_db = row.active_modules ? snr_sum / row.active_modules : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<SweepResult> sweep(const std::vector<ScenarioConfig>& configs, const RunOptions& options,
                               unsigned jobs) {
    std::vector<SweepResult> results(configs.size());
    auto run_one = [&](std::size_t i) {
        try {
            results[i].report = run(configs[i], options);
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, configs.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < configs.size(); i = next++) run_one(i);
            });
        }
    }
    return results;
}

ScenarioConfig default_fig8_scenario() {
    ScenarioConfig c;
    c.name = "fig8_default";
    c.layout_name = "dpa_8";
    c.layout = preset(LayoutPreset::Dpa8);
    c.fabric = FabricConfig::make(8, 2, 1);
    c.nodes = {
        {"ue", NodeRole::UE, {0.0, 0.0}, default_radio(NodeRole::UE)},
        {"bs", NodeRole::BaseStation, {100.0, 0.0}, default_radio(NodeRole::BaseStation)},
        {"router", NodeRole::WiFiRouter, {0.0, 5.0}, default_radio(NodeRole::WiFiRouter)},
    };
    c.grip = GripScenario::TwoHandLandscape;
    c.catalog = default_catalog();
    c.spectrum = {{"wigig_ch3", {true, 0.6}}, {"wifi_2g4", {true, 0.4}}};
    c.cellular_carriers = std::vector<std::string>{"cell_28", "cell_28b"};
    c.wigig_carriers = std::vector<std::string>{"wigig_ch1", "wigig_ch2"};
    c.requirement = {40e9, 10.0, ServiceClass::eMBB};
    c.seed = 2018;
    return c;
}

}  // namespace dpamimo
