#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dpamimo/allocator.hpp"
#include "dpamimo/blockage.hpp"
#include "dpamimo/config_io.hpp"
#include "dpamimo/fabric.hpp"
#include "dpamimo/layout.hpp"
#include "dpamimo/link.hpp"
#include "dpamimo/modesel.hpp"
#include "dpamimo/random_instances.hpp"
#include "dpamimo/report_io.hpp"
#include "dpamimo/scenario.hpp"

using namespace dpamimo;

namespace {

constexpr double kSpacingRequiredMm = 16.06;
constexpr double kSpacingToleranceMm = 0.01;
constexpr double kFsplExpectedDb = 101.38;
constexpr double kFsplToleranceDb = 0.01;
constexpr double kDoublingDb = 6.02;
constexpr double kDoublingToleranceDb = 0.005;
constexpr double kAdditivityRelError = 1e-9;
constexpr double kBoostFactor = 10.0;
constexpr double kSuperCaMinBandwidthHz = 2.56e9;
constexpr double kCriterion1BudgetS = 10.0;
constexpr double kCriterion5BudgetS = 60.0;
constexpr int kFabricStates = 10000;
constexpr int kCorpusRuns = 1000;
constexpr int kAllocatorInstances = 1000;
constexpr int kRepeats = 100;

const std::string kSourceDir = DPAMIMO_SOURCE_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Full cross-product of switch positions, filtered by validate, grouped by active set.
std::map<std::set<int>, std::set<FabricState>> cross_product(const FabricConfig& c) {
    std::vector<BfMode> modes{BfMode::off()};
    for (int i = 0; i < c.n_bf; ++i) modes.push_back(BfMode::cellular(i));
    for (int w = 0; w < c.n_wigig_if; ++w) modes.push_back(BfMode::wigig(w));
    std::vector<CellIfRoute> routes{CellIfRoute::off()};
    for (int b = 0; b < c.n_bf; ++b) routes.push_back(CellIfRoute::coax(b));
    for (int f = 0; f < c.n_sub6_fe; ++f) routes.push_back(CellIfRoute::sub6(f));

    std::map<std::set<int>, std::set<FabricState>> out;
    FabricState s = FabricState::all_off(c);
    std::function<void(int)> modes_at;
    std::function<void(int)> routes_at = [&](int i) {
        if (i == c.n_bf) {
            for (int mask = 0; mask < (1 << c.n_sub6_fe); ++mask) {
                s.active_sub6.clear();
                for (int f = 0; f < c.n_sub6_fe; ++f) {
                    if (mask & (1 << f)) s.active_sub6.insert(f);
                }
                if (validate(c, s).ok()) out[s.active_modules()].insert(s);
            }
            return;
        }
        for (const auto& r : routes) {
            s.cell_if_route[static_cast<std::size_t>(i)] = r;
            routes_at(i + 1);
        }
    };
    modes_at = [&](int i) {
        if (i == c.n_bf) return routes_at(0);
        for (const auto& m : modes) {
            s.bf_mode[static_cast<std::size_t>(i)] = m;
            modes_at(i + 1);
        }
    };
    modes_at(0);
    return out;
}

Outcome criterion_fabric() {
    Clock clock;
    Outcome o;
    std::size_t discrepancies = 0;
    std::size_t valid_seen = 0;

    // Enumeration vs independent cross-product for configs with n_bf <= 4
    // (n_bf = 4 limited to two WiGig IFs and no sub-6 front end to stay in budget).
    std::size_t configs_checked = 0;
    for (int n = 1; n <= 4; ++n) {
        for (int w = 0; w <= (n == 4 ? 2 : n); ++w) {
            for (int f = 0; f <= (n <= 2 ? 2 : n == 3 ? 1 : 0); ++f) {
                const auto c = FabricConfig::make(n, w, f);
                const auto brute = cross_product(c);
                for (int mask = 0; mask < (1 << n); ++mask) {
                    std::set<int> active;
                    for (int b = 0; b < n; ++b) {
                        if (mask & (1 << b)) active.insert(b);
                    }
                    const auto listed = enumerate_valid_states(c, active);
                    const std::set<FabricState> got(listed.begin(), listed.end());
                    const auto it = brute.find(active);
                    const std::set<FabricState> want = it == brute.end() ? std::set<FabricState>{} : it->second;
                    if (got != want || got.size() != listed.size()) ++discrepancies;
                }
                ++configs_checked;
            }
        }
    }

    const double cross_s = clock.seconds();

    // Random states over n_bf in [1, 8]: validate() accepts exactly the enumerated ones.
    using Key = std::tuple<int, int, int, std::set<int>>;
    std::map<Key, std::set<FabricState>> cache;
    Rng rng(20180101);
    for (int i = 0; i < kFabricStates; ++i) {
        const auto fc = random_fabric_case(rng, 8);
        const bool accepted = validate(fc.config, fc.state).ok();
        const Key key{fc.config.n_bf, fc.config.n_wigig_if, fc.config.n_sub6_fe, fc.state.active_modules()};
        auto it = cache.find(key);
        if (it == cache.end()) {
            const auto listed = enumerate_valid_states(fc.config, std::get<3>(key));
            it = cache.emplace(key, std::set<FabricState>(listed.begin(), listed.end())).first;
        }
        const bool enumerated = it->second.count(fc.state) > 0;
        if (accepted != enumerated) ++discrepancies;
        if (accepted) ++valid_seen;
    }
    const double t = clock.seconds();
    o.pass = discrepancies == 0 && t < kCriterion1BudgetS && valid_seen > 0 &&
             valid_seen < static_cast<std::size_t>(kFabricStates);
    o.detail = std::to_string(kFabricStates) + " random states (" + std::to_string(valid_seen) +
               " valid), " + std::to_string(configs_checked) + " configs cross-checked, " +
               std::to_string(discrepancies) + " discrepancies, " + fmt("%.2f s", t) + " (cross-check " +
               fmt("%.2f s)", cross_s);
    return o;
}

Outcome criterion_spacing() {
    Outcome o;
    const auto catalog = default_catalog();
    const auto dpa8 = preset(LayoutPreset::Dpa8);
    const auto report = validate_spacing(dpa8, catalog);
    double min_gap = 1e9;
    const auto& p = dpa8.placements();
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) min_gap = std::min(min_gap, edge_to_edge_distance(p[i], p[j]));
    }
    const double required_mm = kSpacingWavelengths * wavelength_m(28.0) * 1e3;
    const bool base_ok = report.ok() && report.pairs_checked == 28 &&
                         std::abs(required_mm - kSpacingRequiredMm) <= kSpacingToleranceMm &&
                         min_gap > kSpacingRequiredMm - kSpacingToleranceMm;

    const auto shrunk = grid_layout(HousingSpec{}, 4, 2, kPresetModuleMm, kDpa8GapXMm * 0.6, kDpa8GapYMm * 0.6);
    const auto shrunk_report = validate_spacing(shrunk, catalog);
    std::set<std::pair<std::string, std::string>> violating;
    for (const auto& v : shrunk_report.violations) violating.insert({std::min(v.a, v.b), std::max(v.a, v.b)});
    std::size_t neighbor_pairs = 0, neighbor_violations = 0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 2; ++c) {
            const int i = r * 2 + c;
            std::vector<int> next;
            if (c == 0) next.push_back(i + 1);
            if (r < 3) next.push_back(i + 2);
            for (int j : next) {
                ++neighbor_pairs;
                const std::string a = "m" + std::to_string(i), b = "m" + std::to_string(j);
                if (violating.count({std::min(a, b), std::max(a, b)})) ++neighbor_violations;
            }
        }
    }
    o.pass = base_ok && neighbor_pairs == 10 && neighbor_violations == neighbor_pairs;
    o.detail = "dpa_8 min gap " + fmt("%.2f mm", min_gap) + " > " + fmt("%.4f mm", required_mm) +
               ", shrunk grid " + std::to_string(neighbor_violations) + "/" + std::to_string(neighbor_pairs) +
               " neighbor pairs violate";
    return o;
}

Outcome criterion_blockage() {
    Outcome o;
    const auto tb_mask = blockage_mask(preset(LayoutPreset::TopBottom), GripScenario::TwoHandLandscape);
    const auto dpa_mask = blockage_mask(preset(LayoutPreset::Dpa8), GripScenario::TwoHandLandscape);
    const bool tb_all_blocked = tb_mask.count_at_least(30.0) == tb_mask.attenuation_db.size();
    const std::size_t dpa_clear = dpa_mask.count_below(3.0);

    const auto rows = compare_layouts({GripScenario::TwoHandLandscape}, default_fig8_scenario());
    double tb = -1.0, dpa = -1.0;
    for (const auto& r : rows) {
        if (r.layout == "top_bottom") tb = r.aggregate_capacity_bps;
        if (r.layout == "dpa_8") dpa = r.aggregate_capacity_bps;
    }
    o.pass = tb_all_blocked && dpa_clear >= 2 && dpa > tb && tb >= 0.0;
    o.detail = "top_bottom blocked " + std::to_string(tb_mask.count_at_least(30.0)) + "/2, dpa_8 clear " +
               std::to_string(dpa_clear) + "/8, capacity " + fmt("%.4g", dpa) + " > " + fmt("%.4g bit/s", tb);
    return o;
}

Outcome criterion_carrier_rule() {
    Outcome o;
    std::size_t violations = 0, active = 0, errors = 0;
    for (int s = 1; s <= kCorpusRuns; ++s) {
        try {
            const auto config = random_scenario(static_cast<std::uint64_t>(s));
            const auto report = run(config);
            const auto adj = adjacency(config.layout, config.model.adjacency_threshold_mm);
            violations += check_carrier_rule(report.assignment, adj).size();
            violations += report.carrier_rule_violations.size();
            for (const auto& m : report.assignment.modules) active += m.active();
        } catch (const std::exception&) {
            ++errors;
        }
    }

    // dpa_8 with two cellular carriers: every unblocked module on, proper 2-coloring.
    const auto base = load_scenario(kSourceDir + "/configs/compare_cellular.json");
    bool coloring_ok = true;
    std::string coloring_note;
    for (GripScenario g : kAllGrips) {
        ScenarioConfig c = base;
        c.grip = g;
        const auto r = run(c);
        const auto adj = adjacency(c.layout, c.model.adjacency_threshold_mm);
        std::set<std::string> carriers;
        std::size_t unblocked = 0, unblocked_on = 0;
        for (std::size_t i = 0; i < r.modules.size(); ++i) {
            const auto& m = r.assignment.modules[i];
            if (m.active()) carriers.insert(m.carrier);
            if (r.modules[i].attenuation_db < kBlockedThresholdDb) {
                ++unblocked;
                unblocked_on += m.active();
            }
        }
        if (unblocked_on != unblocked || carriers.size() > 2 || !check_carrier_rule(r.assignment, adj).empty()) {
            coloring_ok = false;
        }
        if (g == GripScenario::FreeSpace) {
            coloring_ok = coloring_ok && r.assignment.count(BfMode::Kind::Cellular) == 8 && carriers.size() == 2;
        }
        coloring_note += std::string(to_string(g)) + " " + std::to_string(unblocked_on) + "/" +
                         std::to_string(unblocked) + "; ";
    }
    o.pass = violations == 0 && errors == 0 && coloring_ok && active > 0;
    o.detail = std::to_string(kCorpusRuns) + " runs, " + std::to_string(violations) + " violations, " +
               std::to_string(errors) + " errors; dpa_8 unblocked active: " +
               coloring_note.substr(0, coloring_note.size() - 2);
    return o;
}

Outcome criterion_allocator() {
    Clock clock;
    Outcome o;
    std::size_t exceed = 0, counted = 0, infeasible_mismatch = 0, rule_failures = 0;
    double ratio_sum = 0.0, worst = 1.0;
    for (int s = 1; s <= kAllocatorInstances; ++s) {
        const auto in = random_allocation_instance(static_cast<std::uint64_t>(s), 6);
        const auto g = greedy_assign(in);
        const auto b = brute_force_assign(in);
        if (g.feasible() != b.feasible()) ++infeasible_mismatch;
        if (g.objective_bps > b.objective_bps * (1.0 + 1e-12)) ++exceed;
        for (const auto* a : {&g, &b}) {
            if (!check_carrier_rule(*a, in.adjacency).empty() || !validate(in.fabric, a->fabric).ok() ||
                (a->feasible() && !consistent_with(a->fabric, in.decision))) {
                ++rule_failures;
            }
        }
        if (b.objective_bps <= 0.0) continue;
        const double r = g.objective_bps / b.objective_bps;
        ratio_sum += r;
        worst = std::min(worst, r);
        ++counted;
    }
    const double mean = counted ? ratio_sum / static_cast<double>(counted) : 0.0;
    const double t = clock.seconds();
    o.pass = exceed == 0 && infeasible_mismatch == 0 && rule_failures == 0 && counted > 900 &&
             mean >= kGreedyQualityFloor && t < kCriterion5BudgetS;
    o.detail = std::to_string(counted) + " instances, greedy>oracle " + std::to_string(exceed) + ", mean ratio " +
               fmt("%.4f", mean) + " >= floor " + fmt("%.3f", kGreedyQualityFloor) + " (worst " +
               fmt("%.3f", worst) + "), " + fmt("%.2f s", t);
    return o;
}

Outcome criterion_super_ca() {
    Outcome o;
    const auto config = load_scenario(kSourceDir + "/configs/super_ca.json");
    const auto report = run(config);
    const auto& ue = config.ue();
    double component_sum = 0.0, bandwidth = 0.0, best_snr = -1e9;
    std::set<std::string> carriers;
    for (std::size_t i = 0; i < report.assignment.modules.size(); ++i) {
        const auto& m = report.assignment.modules[i];
        if (!m.active()) continue;
        const Band& band = config.catalog.at(m.carrier);
        const NodeSpec* tx = nullptr;
        for (const auto& n : config.nodes) {
            if (n.id == m.target) tx = &n;
        }
        if (!tx) return {false, "target node missing"};
        const auto budget = module_link_budget(tx->radio, config.ue_radio.receiver(band),
                                               distance_m(tx->position, ue.position), band,
                                               report.modules[i].attenuation_db);
        component_sum += budget.capacity_bps;
        bandwidth += band.bandwidth_hz();
        best_snr = std::max(best_snr, budget.snr_db);
        carriers.insert(m.carrier);
    }
    const double rel = std::abs(report.aggregate_capacity_bps - component_sum) / component_sum;
    const double baseline = laa_baseline_capacity(best_snr, best_snr);
    const double boost = report.aggregate_capacity_bps / baseline;
    o.pass = report.decision() == ModeDecision::cellular_and_wifi(AggregationClass::SuperCA) &&
             carriers == std::set<std::string>{"cell_u71", "wigig_ch2"} && bandwidth >= kSuperCaMinBandwidthHz &&
             rel < kAdditivityRelError && boost >= kBoostFactor;
    o.detail = "71 GHz + 60 GHz over " + fmt("%.3g Hz", bandwidth) + ", additivity rel err " + fmt("%.2e", rel) +
               ", boost " + fmt("%.1fx", boost) + " over LAA baseline at " + fmt("%.1f dB", best_snr);
    return o;
}

Outcome criterion_mode_selection() {
    Outcome o;
    const auto catalog = default_catalog();
    SpectrumReport report = sense({}, catalog);
    // Capacity estimates per band; latency table defaults: mmWave 5, sub-6 10, WiFi 15 ms.
    std::map<std::string, double> cap{{"cell_u71", 5e9}, {"cell_sub6_3p5", 1e8}, {"wigig_ch2", 20e9},
                                      {"wifi_5g", 2e8}, {"cell_28", 20e9}};
    const BandEstimator est = [&](const Band& b) {
        auto it = cap.find(b.id);
        return it == cap.end() ? 0.0 : it->second;
    };
    struct Row {
        bool cell, wifi;
        std::vector<std::string> cell_bands, wifi_bands;
        AppRequirement req;
        ModeDecision want;
        std::string rule;
    };
    const std::vector<std::string> mm_cell{"cell_u71"}, mm_wifi{"wigig_ch2"};
    const std::vector<Row> rows{
        {false, false, {}, {}, {1e9, 50}, ModeDecision::no_service(), "none_reachable"},
        {false, false, {}, {}, {1e12, 1}, ModeDecision::no_service(), "none_reachable"},
        {true, false, mm_cell, {}, {1e9, 50}, ModeDecision::cellular_only(), "only_cellular_reachable"},
        {true, false, mm_cell, {}, {1e12, 1}, ModeDecision::cellular_only(), "only_cellular_reachable"},
        {false, true, {}, mm_wifi, {1e9, 50}, ModeDecision::wifi_only(), "only_wifi_reachable"},
        {false, true, {}, mm_wifi, {1e12, 1}, ModeDecision::wifi_only(), "only_wifi_reachable"},
        {true, true, mm_cell, mm_wifi, {1e9, 50}, ModeDecision::wifi_only(), "single_network_wifi"},
        {true, true, {"cell_28"}, mm_wifi, {1e9, 50}, ModeDecision::cellular_only(), "single_network_cellular"},
        {true, true, mm_cell, mm_wifi, {8e9, 20}, ModeDecision::wifi_only(), "single_network_wifi"},
        {true, true, mm_cell, mm_wifi, {21e9, 50},
         ModeDecision::cellular_and_wifi(AggregationClass::SuperCA), "aggregate_for_throughput"},
        {true, true, mm_cell, mm_wifi, {1e9, 10},
         ModeDecision::cellular_and_wifi(AggregationClass::SuperCA), "aggregate_for_latency"},
        {true, true, {"cell_sub6_3p5"}, {"wifi_5g"}, {1e9, 50},
         ModeDecision::cellular_and_wifi(AggregationClass::LAA), "aggregate_for_throughput"},
        {true, true, {"cell_sub6_3p5"}, {"wifi_5g"}, {1e6, 5},
         ModeDecision::cellular_and_wifi(AggregationClass::LAA), "aggregate_for_latency"},
    };
    std::size_t failures = 0;
    std::set<std::string> rules;
    for (const auto& row : rows) {
        NetworkAvailability a{row.cell, row.wifi, row.cell_bands, row.wifi_bands};
        const auto first = decide(a, report, row.req, catalog, est);
        for (int k = 0; k < kRepeats; ++k) {
            const auto again = decide(a, report, row.req, catalog, est);
            if (again.decision != first.decision || again.rule != first.rule) ++failures;
        }
        if (first.decision != row.want || first.rule != row.rule) ++failures;
        const bool no_service = first.decision.kind == DecisionKind::NoService;
        if (no_service != (!row.cell && !row.wifi)) ++failures;
        rules.insert(first.rule);
    }
    // Pipeline-level determinism.
    const auto golden = report_to_json(run(default_fig8_scenario()));
    for (int k = 0; k < kRepeats; ++k) {
        if (report_to_json(run(default_fig8_scenario())) != golden) ++failures;
    }
    o.pass = failures == 0 && rules.size() == 7;
    o.detail = std::to_string(rows.size()) + " table rows, " + std::to_string(rules.size()) + "/7 rules hit, " +
               std::to_string(failures) + " mismatches over " + std::to_string(kRepeats) + " repeats";
    return o;
}

Outcome criterion_link() {
    Outcome o;
    const double f = fspl_db(100.0, 28.0);
    const double d1 = fspl_db(200.0, 28.0) - f;
    const double d2 = fspl_db(50.0, 2.4) - fspl_db(25.0, 2.4);
    const double b = 123.456e6;
    const double c0 = shannon_capacity(b, 0.0);
    const double n = noise_floor_dbm(1.0, 0.0);
    o.pass = std::abs(f - kFsplExpectedDb) <= kFsplToleranceDb && std::abs(d1 - kDoublingDb) <= kDoublingToleranceDb &&
             std::abs(d2 - kDoublingDb) <= kDoublingToleranceDb && c0 == b && n == -174.0;
    o.detail = "fspl(100 m, 28 GHz) " + fmt("%.4f dB", f) + ", doubling +" + fmt("%.4f dB", d1) +
               ", C(B, 0 dB)/B = " + fmt("%.15g", c0 / b) + ", noise(1 Hz) " + fmt("%.1f dBm", n);
    return o;
}

Outcome criterion_reproducibility() {
    Outcome o;
    const std::string golden = slurp(kSourceDir + "/tests/golden/fig8_default.report.json");
    const std::string from_file = report_to_json(run(load_scenario(kSourceDir + "/configs/fig8_default.json")));
    std::vector<ScenarioConfig> configs(16, default_fig8_scenario());
    const auto serial = sweep(configs, {}, 1);
    const auto parallel = sweep(configs, {}, 8);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (!serial[i].report || !parallel[i].report) {
            ++mismatches;
            continue;
        }
        if (report_to_json(*serial[i].report) != golden) ++mismatches;
        if (report_to_json(*parallel[i].report) != golden) ++mismatches;
    }
    for (int k = 0; k < 10; ++k) {
        if (report_to_json(run(default_fig8_scenario())) != golden) ++mismatches;
    }
    o.pass = !golden.empty() && from_file == golden && mismatches == 0;
    o.detail = "golden " + std::to_string(golden.size()) + " bytes, " + std::to_string(configs.size()) +
               " serial + " + std::to_string(configs.size()) + " parallel + 10 repeated runs, " +
               std::to_string(mismatches) + " mismatches";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*check)();
    };
    const Criterion criteria[] = {
        {1, "fabric constraint suite", criterion_fabric},
        {2, "spacing rule", criterion_spacing},
        {3, "two-hand blockage", criterion_blockage},
        {4, "neighbor carrier rule", criterion_carrier_rule},
        {5, "allocator quality", criterion_allocator},
        {6, "super-CA additivity and boost", criterion_super_ca},
        {7, "mode-selection decision table", criterion_mode_selection},
        {8, "link arithmetic", criterion_link},
        {9, "golden reproducibility", criterion_reproducibility},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome out;
        try {
            out = c.check();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %d %s: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str());
        std::fflush(stdout);
        failed += !out.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
