#include "dpamimo/report_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace dpamimo {

using nlohmann::json;

std::string format_number(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

namespace {

void emit(const json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
                if (!first) out += ",\n";
                first = false;
                out += inner + json(it.key()).dump() + ": ";
                emit(it.value(), out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                emit(j[i], out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string canonical(const json& j) {
    std::string out;
    emit(j, out, 0);
    out += '\n';
    return out;
}

std::string_view link_name(BfMode::Kind k) {
    switch (k) {
        case BfMode::Kind::Off: return "off";
        case BfMode::Kind::Cellular: return "cellular";
        case BfMode::Kind::WiGig: return "wigig";
    }
    return "";
}

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json fabric_json(const FabricState& s) {
    json bf = json::array();
    for (const auto& m : s.bf_mode) {
        json e = {{"mode", std::string(link_name(m.kind))}};
        if (m.kind != BfMode::Kind::Off) e["radio"] = m.radio;
        bf.push_back(e);
    }
    json routes = json::array();
    for (const auto& r : s.cell_if_route) {
        switch (r.kind) {
            case CellIfRoute::Kind::Off: routes.push_back({{"route", "off"}}); break;
            case CellIfRoute::Kind::CoaxToBf: routes.push_back({{"route", "coax_to_bf"}, {"target", r.target}}); break;
            case CellIfRoute::Kind::Sub6FrontEnd:
                routes.push_back({{"route", "sub6_front_end"}, {"target", r.target}});
                break;
        }
    }
    return {{"encoding", s.encode()},
            {"bf_mode", bf},
            {"cell_if_route", routes},
            {"active_sub6", json(std::vector<int>(s.active_sub6.begin(), s.active_sub6.end()))}};
}

json report_json(const MetricsReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = r.scenario;
    j["layout"] = r.layout;
    j["grip"] = std::string(to_string(r.grip));
    j["seed"] = r.seed;

    json spectrum = json::object();
    for (const auto& [id, obs] : r.spectrum.bands) {
        spectrum[id] = {{"available", obs.available}, {"occupancy", obs.occupancy}};
    }
    j["spectrum"] = spectrum;
    j["availability"] = {{"cellular_reachable", r.availability.cellular_reachable},
                         {"wifi_reachable", r.availability.wifi_reachable},
                         {"cellular_bands", r.availability.cellular_bands},
                         {"wifi_bands", r.availability.wifi_bands}};

    const auto& t = r.trace;
    j["decision"] = {{"kind", std::string(to_string(t.decision.kind))},
                     {"aggregation", std::string(to_string(t.decision.aggregation))},
                     {"label", to_string(t.decision)}};
    j["decision_trace"] = {{"rule", t.rule},
                           {"cellular_band", optional_string(t.cellular_band)},
                           {"wifi_band", optional_string(t.wifi_band)},
                           {"cellular_capacity_bps", t.cellular_capacity_bps},
                           {"wifi_capacity_bps", t.wifi_capacity_bps},
                           {"cellular_latency_ms", t.cellular_latency_ms},
                           {"wifi_latency_ms", t.wifi_latency_ms},
                           {"aggregation_bands", t.aggregation_bands}};

    j["assignment"] = {{"solver", r.solver},
                       {"encoding", r.assignment.encode()},
                       {"objective_bps", r.assignment.objective_bps}};
    j["fabric_state"] = fabric_json(r.assignment.fabric);

    json modules = json::array();
    for (const auto& m : r.modules) {
        json e = {{"id", m.id},
                  {"link", std::string(link_name(m.link))},
                  {"attenuation_db", m.attenuation_db},
                  {"capacity_bps", m.capacity_bps}};
        e["target"] = m.target.empty() ? json(nullptr) : json(m.target);
        e["carrier"] = m.carrier.empty() ? json(nullptr) : json(m.carrier);
        e["snr_db"] = m.snr_db ? json(*m.snr_db) : json(nullptr);
        e["bandwidth_hz"] = m.bandwidth_hz;
        modules.push_back(e);
    }
    j["modules"] = modules;
    j["aggregate_capacity_bps"] = r.aggregate_capacity_bps;
    j["blocked_module_count"] = r.blocked_module_count;

    json violations = json::array();
    for (const auto& [u, v] : r.carrier_rule_violations) violations.push_back({r.modules[u].id, r.modules[v].id});
    j["carrier_rule"] = {{"ok", r.carrier_rule_violations.empty()}, {"violations", violations}};

    json spacing = json::array();
    for (const auto& v : r.spacing.violations) {
        spacing.push_back({{"a", v.a}, {"b", v.b}, {"band", v.band_id},
                           {"required_mm", v.required_mm}, {"actual_mm", v.actual_mm}});
    }
    j["spacing"] = {{"ok", r.spacing.ok()}, {"pairs_checked", r.spacing.pairs_checked},
                    {"violations", spacing}};
    j["infeasibility"] = optional_string(r.infeasibility);
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_to_json(const MetricsReport& report) { return canonical(report_json(report)); }

std::string report_to_csv(const MetricsReport& report) {
    std::string out = "scenario,module,link,target,carrier,attenuation_db,snr_db,capacity_bps\n";
    for (const auto& m : report.modules) {
        out += csv_field(report.scenario) + ',' + csv_field(m.id) + ',' + std::string(link_name(m.link)) +
               ',' + csv_field(m.target) + ',' + csv_field(m.carrier) + ',' +
               format_number(m.attenuation_db) + ',' + (m.snr_db ? format_number(*m.snr_db) : "") +
               ',' + format_number(m.capacity_bps) + '\n';
    }
    return out;
}

std::string sweep_to_json(const std::vector<SweepResult>& results,
                          const std::vector<std::string>& labels) {
    json arr = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        json e;
        e["index"] = i;
        if (i < labels.size()) e["label"] = labels[i];
        e["report"] = results[i].report ? report_json(*results[i].report) : json(nullptr);
        e["error"] = optional_string(results[i].error);
        arr.push_back(e);
    }
    return canonical(arr);
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
    std::string out =
        "grip,layout,decision,active_modules,blocked_modules,modules_below_3db,aggregate_capacity_bps,"
        "mean_active_snr_db\n";
    for (const auto& r : rows) {
        out += std::string(to_string(r.grip)) + ',' + r.layout + ',' + to_string(r.decision) + ',' +
               std::to_string(r.active_modules) + ',' + std::to_string(r.blocked_modules) + ',' +
               std::to_string(r.modules_below_3db) + ',' + format_number(r.aggregate_capacity_bps) +
               ',' + format_number(r.mean_active_snr_db) + '\n';
    }
    return out;
}

}  // namespace dpamimo
