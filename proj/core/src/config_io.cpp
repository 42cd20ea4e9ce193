#include "dpamimo/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dpamimo/errors.hpp"

namespace dpamimo {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "/" + key;
}

/// Read-only view of a JSON object that remembers which keys were consumed, so
/// leftovers can be rejected.
class Object {
public:
    Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError("expected an object", path_.empty() ? "/" : path_);
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return join(path_, key); }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = find(key);
        if (!v) throw ConfigError("missing required field", at(key));
        return *v;
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const json* v = find(key);
        if (!v) {
            if (fallback) return *fallback;
            throw ConfigError("missing required field", at(key));
        }
        if (!v->is_number()) throw ConfigError("expected a number", at(key));
        return v->get<double>();
    }

    std::int64_t integer(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt) {
        const json* v = find(key);
        if (!v) {
            if (fallback) return *fallback;
            throw ConfigError("missing required field", at(key));
        }
        if (!v->is_number_integer()) throw ConfigError("expected an integer", at(key));
        return v->get<std::int64_t>();
    }

    std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        const json* v = find(key);
        if (!v) {
            if (fallback) return *fallback;
            throw ConfigError("missing required field", at(key));
        }
        if (!v->is_string()) throw ConfigError("expected a string", at(key));
        return v->get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback) {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw ConfigError("expected true or false", at(key));
        return v->get<bool>();
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError("unknown key", at(it.key()));
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

const json& require_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("expected an array", path);
    return j;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
    require_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ConfigError("expected a string", join(path, std::to_string(i)));
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

Band parse_band(const json& j, const std::string& path) {
    Object o(j, path);
    const std::string id = o.string("id");
    const std::string service = o.string("service");
    const std::string regime = o.string("regime");
    const double center = o.number("center_ghz");
    const double bandwidth = o.number("bandwidth_mhz");
    o.finish();
    auto s = parse_service(service);
    if (!s) throw ConfigError("expected 'cellular' or 'wifi'", o.at("service"));
    auto r = parse_regime(regime);
    if (!r) throw ConfigError("expected 'licensed' or 'unlicensed'", o.at("regime"));
    try {
        return Band::make(id, *s, *r, center, bandwidth);
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), path);
    }
}

BandCatalog parse_catalog(const json& j, const std::string& path) {
    require_array(j, path);
    std::vector<Band> bands;
    for (std::size_t i = 0; i < j.size(); ++i) bands.push_back(parse_band(j[i], join(path, std::to_string(i))));
    try {
        return BandCatalog(std::move(bands));
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), path);
    }
}

json band_json(const Band& b) {
    return {{"id", b.id},
            {"service", std::string(to_string(b.service))},
            {"regime", std::string(to_string(b.regime))},
            {"center_ghz", b.center_ghz},
            {"bandwidth_mhz", b.bandwidth_mhz}};
}

json catalog_json(const BandCatalog& catalog) {
    json arr = json::array();
    for (const auto& b : catalog.bands()) arr.push_back(band_json(b));
    return arr;
}

HousingSpec parse_housing(const json* j, const std::string& path) {
    HousingSpec h;
    if (!j) return h;
    Object o(*j, path);
    h.width_mm = o.number("width_mm", h.width_mm);
    h.height_mm = o.number("height_mm", h.height_mm);
    o.finish();
    return h;
}

void parse_layout(const json& j, ScenarioConfig& c) {
    Object o(j, "layout");
    const HousingSpec housing = parse_housing(o.find("housing"), o.at("housing"));
    const json* preset_name = o.find("preset");
    const json* modules = o.find("modules");
    if (preset_name && modules) throw ConfigError("give either 'preset' or 'modules'", "layout");
    if (preset_name) {
        if (!preset_name->is_string()) throw ConfigError("expected a string", o.at("preset"));
        c.layout_name = preset_name->get<std::string>();
        try {
            c.layout = preset(c.layout_name, housing);
        } catch (const ConfigError& e) {
            if (e.path() != "layout") throw;
            throw ConfigError("unknown layout preset '" + c.layout_name + "'", o.at("preset"));
        }
    } else if (modules) {
        const std::string mpath = o.at("modules");
        require_array(*modules, mpath);
        std::vector<ModulePlacement> placements;
        for (std::size_t i = 0; i < modules->size(); ++i) {
            Object m((*modules)[i], join(mpath, std::to_string(i)));
            ModulePlacement p;
            p.id = m.string("id");
            p.footprint = {m.number("x"), m.number("y"), m.number("w"), m.number("h")};
            p.supported_band_ids = string_list(m.require("bands"), m.at("bands"));
            m.finish();
            placements.push_back(std::move(p));
        }
        c.layout_name = "custom";
        c.layout = UeLayout(housing, std::move(placements));
    } else {
        throw ConfigError("needs 'preset' or 'modules'", "layout");
    }
    o.finish();
}

RadioParams parse_radio(const json* j, const std::string& path, RadioParams r) {
    if (!j) return r;
    Object o(*j, path);
    r.tx_power_dbm = o.number("tx_power_dbm", r.tx_power_dbm);
    r.tx_gain_dbi = o.number("tx_gain_dbi", r.tx_gain_dbi);
    r.rx_gain_dbi = o.number("rx_gain_dbi", r.rx_gain_dbi);
    r.noise_figure_db = o.number("noise_figure_db", r.noise_figure_db);
    o.finish();
    return r;
}

NodeSpec parse_node(const json& j, const std::string& path) {
    Object o(j, path);
    NodeSpec n;
    n.id = o.string("id");
    const std::string role = o.string("role");
    auto parsed = parse_node_role(role);
    if (!parsed) throw ConfigError("expected ue, base_station or wifi_router", o.at("role"));
    n.role = *parsed;
    const json& pos = o.require("position");
    if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() || !pos[1].is_number()) {
        throw ConfigError("expected [x, y] in meters", o.at("position"));
    }
    n.position = {pos[0].get<double>(), pos[1].get<double>()};
    n.radio = parse_radio(o.find("radio"), o.at("radio"), default_radio(n.role));
    o.finish();
    return n;
}

void parse_model(const json* j, ModelKnobs& m) {
    if (!j) return;
    Object o(*j, "model");
    m.blockage.full_blockage_db = o.number("full_blockage_db", m.blockage.full_blockage_db);
    m.blockage.saturation_fraction = o.number("saturation_fraction", m.blockage.saturation_fraction);
    m.adjacency_threshold_mm = o.number("adjacency_threshold_mm", m.adjacency_threshold_mm);
    m.access_snr_threshold_db = o.number("access_snr_threshold_db", m.access_snr_threshold_db);
    if (const json* lat = o.find("latency_ms")) {
        Object l(*lat, o.at("latency_ms"));
        m.latency.cellular_mmwave_ms = l.number("cellular_mmwave", m.latency.cellular_mmwave_ms);
        m.latency.cellular_sub6_ms = l.number("cellular_sub6", m.latency.cellular_sub6_ms);
        m.latency.wifi_ms = l.number("wifi", m.latency.wifi_ms);
        l.finish();
    }
    if (const json* occ = o.find("occlusion")) {
        Object g(*occ, o.at("occlusion"));
        auto& geo = m.blockage.geometry;
        geo.center_area_fraction = g.number("center_area_fraction", geo.center_area_fraction);
        geo.landscape_strip_fraction = g.number("landscape_strip_fraction", geo.landscape_strip_fraction);
        geo.bottom_fraction = g.number("bottom_fraction", geo.bottom_fraction);
        g.finish();
    }
    o.finish();
}

ScenarioConfig parse_scenario_json(const json& doc) {
    Object o(doc, "");
    const json& version = o.require("schema_version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion) {
        throw ConfigError("unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")",
                          "schema_version");
    }

    ScenarioConfig c;
    c.name = o.string("name", c.name);
    const std::int64_t seed = o.integer("seed", 0);
    if (seed < 0) throw ConfigError("must be >= 0", "seed");
    c.seed = static_cast<std::uint64_t>(seed);

    if (const json* cat = o.find("catalog"); cat && !(cat->is_string() && *cat == "default")) {
        if (cat->is_string()) throw ConfigError("expected \"default\" or a band array", "catalog");
        c.catalog = parse_catalog(*cat, "catalog");
        c.default_catalog = false;
    } else {
        c.catalog = default_catalog();
        c.default_catalog = true;
    }

    parse_layout(o.require("layout"), c);

    {
        Object f(o.require("fabric"), "fabric");
        const auto n_bf = f.integer("n_bf", static_cast<std::int64_t>(c.layout.size()));
        const auto n_wigig = f.integer("n_wigig_if");
        const auto n_fe = f.integer("n_sub6_fe", 0);
        f.finish();
        c.fabric = FabricConfig{static_cast<int>(n_bf), static_cast<int>(n_wigig), static_cast<int>(n_fe)};
        c.fabric.validate();
    }

    const json& nodes = require_array(o.require("nodes"), "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        c.nodes.push_back(parse_node(nodes[i], "nodes/" + std::to_string(i)));
    }

    if (const json* ue = o.find("ue_radio")) {
        Object u(*ue, "ue_radio");
        c.ue_radio.mmwave_gain_dbi = u.number("mmwave_gain_dbi", c.ue_radio.mmwave_gain_dbi);
        c.ue_radio.sub6_gain_dbi = u.number("sub6_gain_dbi", c.ue_radio.sub6_gain_dbi);
        c.ue_radio.noise_figure_db = u.number("noise_figure_db", c.ue_radio.noise_figure_db);
        u.finish();
    }

    const std::string grip = o.string("grip", std::string(to_string(c.grip)));
    auto g = parse_grip(grip);
    if (!g) throw ConfigError("unknown grip '" + grip + "'", "grip");
    c.grip = *g;

    if (const json* spectrum = o.find("spectrum")) {
        if (!spectrum->is_object()) throw ConfigError("expected an object", "spectrum");
        for (auto it = spectrum->begin(); it != spectrum->end(); ++it) {
            Object b(it.value(), "spectrum/" + it.key());
            BandObservation obs;
            obs.available = b.boolean("available", obs.available);
            obs.occupancy = b.number("occupancy", obs.occupancy);
            b.finish();
            c.spectrum[it.key()] = obs;
        }
    }

    if (const json* carriers = o.find("carriers")) {
        Object k(*carriers, "carriers");
        if (const json* cell = k.find("cellular")) c.cellular_carriers = string_list(*cell, "carriers/cellular");
        if (const json* wg = k.find("wigig")) c.wigig_carriers = string_list(*wg, "carriers/wigig");
        k.finish();
    }

    {
        Object r(o.require("requirement"), "requirement");
        c.requirement.min_throughput_bps = r.number("min_throughput_bps");
        c.requirement.max_latency_ms = r.number("max_latency_ms");
        const std::string cls = r.string("service_class", "eMBB");
        auto parsed = parse_service_class(cls);
        if (!parsed) throw ConfigError("expected eMBB, uRLLC or mMTC", "requirement/service_class");
        c.requirement.service_class = *parsed;
        r.finish();
    }

    parse_model(o.find("model"), c.model);
    o.finish();
    c.validate();
    return c;
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

json scenario_json(const ScenarioConfig& c) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["name"] = c.name;
    doc["seed"] = c.seed;

    json layout;
    layout["housing"] = {{"width_mm", c.layout.housing().width_mm},
                         {"height_mm", c.layout.housing().height_mm}};
    bool as_preset = false;
    if (c.layout_name != "custom") {
        try {
            as_preset = preset(c.layout_name, c.layout.housing()) == c.layout;
        } catch (const ConfigError&) {
            as_preset = false;
        }
    }
    if (as_preset) {
        layout["preset"] = c.layout_name;
    } else {
        json mods = json::array();
        for (const auto& p : c.layout.placements()) {
            mods.push_back({{"id", p.id},
                            {"x", p.footprint.x},
                            {"y", p.footprint.y},
                            {"w", p.footprint.w},
                            {"h", p.footprint.h},
                            {"bands", p.supported_band_ids}});
        }
        layout["modules"] = mods;
    }
    doc["layout"] = layout;

    doc["fabric"] = {{"n_bf", c.fabric.n_bf},
                     {"n_wigig_if", c.fabric.n_wigig_if},
                     {"n_sub6_fe", c.fabric.n_sub6_fe}};

    json nodes = json::array();
    for (const auto& n : c.nodes) {
        nodes.push_back({{"id", n.id},
                         {"role", std::string(to_string(n.role))},
                         {"position", {n.position.x, n.position.y}},
                         {"radio",
                          {{"tx_power_dbm", n.radio.tx_power_dbm},
                           {"tx_gain_dbi", n.radio.tx_gain_dbi},
                           {"rx_gain_dbi", n.radio.rx_gain_dbi},
                           {"noise_figure_db", n.radio.noise_figure_db}}}});
    }
    doc["nodes"] = nodes;
    doc["ue_radio"] = {{"mmwave_gain_dbi", c.ue_radio.mmwave_gain_dbi},
                       {"sub6_gain_dbi", c.ue_radio.sub6_gain_dbi},
                       {"noise_figure_db", c.ue_radio.noise_figure_db}};
    doc["grip"] = std::string(to_string(c.grip));
    if (c.default_catalog) {
        doc["catalog"] = "default";
    } else {
        doc["catalog"] = catalog_json(c.catalog);
    }

    json spectrum = json::object();
    for (const auto& [id, obs] : c.spectrum) {
        spectrum[id] = {{"available", obs.available}, {"occupancy", obs.occupancy}};
    }
    doc["spectrum"] = spectrum;

    json carriers = json::object();
    if (c.cellular_carriers) carriers["cellular"] = *c.cellular_carriers;
    if (c.wigig_carriers) carriers["wigig"] = *c.wigig_carriers;
    doc["carriers"] = carriers;

    doc["requirement"] = {{"min_throughput_bps", c.requirement.min_throughput_bps},
                          {"max_latency_ms", c.requirement.max_latency_ms},
                          {"service_class", std::string(to_string(c.requirement.service_class))}};

    const auto& m = c.model;
    doc["model"] = {
        {"full_blockage_db", m.blockage.full_blockage_db},
        {"saturation_fraction", m.blockage.saturation_fraction},
        {"adjacency_threshold_mm", m.adjacency_threshold_mm},
        {"access_snr_threshold_db", m.access_snr_threshold_db},
        {"latency_ms",
         {{"cellular_mmwave", m.latency.cellular_mmwave_ms},
          {"cellular_sub6", m.latency.cellular_sub6_ms},
          {"wifi", m.latency.wifi_ms}}},
        {"occlusion",
         {{"center_area_fraction", m.blockage.geometry.center_area_fraction},
          {"landscape_strip_fraction", m.blockage.geometry.landscape_strip_fraction},
          {"bottom_fraction", m.blockage.geometry.bottom_fraction}}},
    };
    return doc;
}

std::string scalar_label(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) { return parse_scenario_json(parse_json_text(text)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

std::string to_json(const ScenarioConfig& config) { return scenario_json(config).dump(2) + "\n"; }

std::string catalog_to_json(const BandCatalog& catalog) { return catalog_json(catalog).dump(2) + "\n"; }

BandCatalog catalog_from_json(std::string_view text) { return parse_catalog(parse_json_text(text), "catalog"); }

std::vector<GridPoint> expand_grid(std::string_view text, const std::filesystem::path& base_dir) {
    const json doc = parse_json_text(text);
    Object o(doc, "");
    const json& version = o.require("schema_version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion) {
        throw ConfigError("unsupported schema version", "schema_version");
    }
    const json& base_ref = o.require("base");
    json base;
    if (base_ref.is_string()) {
        base = parse_json_text(read_file(base_dir / base_ref.get<std::string>()));
    } else if (base_ref.is_object()) {
        base = base_ref;
    } else {
        throw ConfigError("expected a scenario object or a path", "base");
    }
    const json& grid = o.require("grid");
    if (!grid.is_object()) throw ConfigError("expected an object", "grid");
    o.finish();

    std::vector<std::pair<std::string, const json*>> axes;
    for (auto it = grid.begin(); it != grid.end(); ++it) {
        if (!it.value().is_array()) throw ConfigError("expected an array of values", "grid/" + it.key());
        if (it.value().empty()) return {};
        axes.emplace_back(it.key(), &it.value());
    }

    std::vector<GridPoint> points;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        json patched = base;
        GridPoint point;
        try {
            for (std::size_t a = 0; a < axes.size(); ++a) {
                const json& value = (*axes[a].second)[idx[a]];
                if (!point.label.empty()) point.label += ',';
                point.label += axes[a].first + "=" + scalar_label(value);
                patched[json::json_pointer("/" + axes[a].first)] = value;
            }
            point.config = parse_scenario_json(patched);
        } catch (const ConfigError& e) {
            point.error = e.what();
        } catch (const json::exception& e) {
            point.error = std::string("grid: ") + e.what();
        }
        points.push_back(std::move(point));

        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].second->size()) break;
            idx[a] = 0;
            if (a == 0) return points;
        }
        if (axes.empty()) return points;
    }
}

}  // namespace dpamimo
