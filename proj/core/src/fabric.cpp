#include "dpamimo/fabric.hpp"

#include <algorithm>

#include "dpamimo/errors.hpp"

namespace dpamimo {

FabricConfig FabricConfig::make(int n_bf, int n_wigig_if, int n_sub6_fe) {
    FabricConfig c{n_bf, n_wigig_if, n_sub6_fe};
    c.validate();
    return c;
}

void FabricConfig::validate() const {
    if (n_bf < 0) throw ConfigError("must be >= 0", "fabric/n_bf");
    if (n_wigig_if < 0) throw ConfigError("must be >= 0", "fabric/n_wigig_if");
    if (n_sub6_fe < 0) throw ConfigError("must be >= 0", "fabric/n_sub6_fe");
    if (n_wigig_if > n_bf) {
        throw ConfigError("WiGig IF-radios (" + std::to_string(n_wigig_if) +
                              ") must not outnumber BF modules (" + std::to_string(n_bf) + ")",
                          "fabric/n_wigig_if");
    }
}

FabricState FabricState::all_off(const FabricConfig& config) {
    FabricState s;
    s.bf_mode.assign(static_cast<std::size_t>(config.n_bf), BfMode::off());
    s.cell_if_route.assign(static_cast<std::size_t>(config.n_cell_if()), CellIfRoute::off());
    return s;
}

std::size_t FabricState::count(BfMode::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(bf_mode.begin(), bf_mode.end(),
                                                  [&](const BfMode& m) { return m.kind == kind; }));
}

std::set<int> FabricState::active_modules() const {
    std::set<int> out;
    for (std::size_t i = 0; i < bf_mode.size(); ++i) {
        if (bf_mode[i].kind != BfMode::Kind::Off) out.insert(static_cast<int>(i));
    }
    return out;
}

std::string FabricState::encode() const {
    std::string s;
    for (const auto& m : bf_mode) {
        if (!s.empty()) s += ' ';
        switch (m.kind) {
            case BfMode::Kind::Off: s += '-'; break;
            case BfMode::Kind::Cellular: s += 'C' + std::to_string(m.radio); break;
            case BfMode::Kind::WiGig: s += 'W' + std::to_string(m.radio); break;
        }
    }
    s += " |";
    for (const auto& r : cell_if_route) {
        s += ' ';
        switch (r.kind) {
            case CellIfRoute::Kind::Off: s += '-'; break;
            case CellIfRoute::Kind::CoaxToBf: s += 'B' + std::to_string(r.target); break;
            case CellIfRoute::Kind::Sub6FrontEnd: s += 'F' + std::to_string(r.target); break;
        }
    }
    s += " | {";
    bool first = true;
    for (int fe : active_sub6) {
        if (!first) s += ',';
        s += std::to_string(fe);
        first = false;
    }
    s += '}';
    return s;
}

namespace {

std::string bf(int i) { return "bf" + std::to_string(i); }
std::string cell_if(int i) { return "cell_if" + std::to_string(i); }
std::string wigig_if(int i) { return "wigig_if" + std::to_string(i); }
std::string fe(int i) { return "sub6_fe" + std::to_string(i); }

void check_structure(const FabricConfig& config, const FabricState& state) {
    if (state.bf_mode.size() != static_cast<std::size_t>(config.n_bf)) {
        throw StructuralError("fabric state has " + std::to_string(state.bf_mode.size()) +
                              " BF entries, config has " + std::to_string(config.n_bf));
    }
    if (state.cell_if_route.size() != static_cast<std::size_t>(config.n_cell_if())) {
        throw StructuralError("fabric state has " + std::to_string(state.cell_if_route.size()) +
                              " cellular IF entries, config has " +
                              std::to_string(config.n_cell_if()));
    }
    for (std::size_t b = 0; b < state.bf_mode.size(); ++b) {
        const BfMode& m = state.bf_mode[b];
        if (m.kind == BfMode::Kind::Cellular && (m.radio < 0 || m.radio >= config.n_cell_if())) {
            throw StructuralError(bf(static_cast<int>(b)) + " references missing " + cell_if(m.radio));
        }
        if (m.kind == BfMode::Kind::WiGig && (m.radio < 0 || m.radio >= config.n_wigig_if)) {
            throw StructuralError(bf(static_cast<int>(b)) + " references missing " + wigig_if(m.radio));
        }
    }
    for (std::size_t i = 0; i < state.cell_if_route.size(); ++i) {
        const CellIfRoute& r = state.cell_if_route[i];
        if (r.kind == CellIfRoute::Kind::CoaxToBf && (r.target < 0 || r.target >= config.n_bf)) {
            throw StructuralError(cell_if(static_cast<int>(i)) + " routes to missing " + bf(r.target));
        }
        if (r.kind == CellIfRoute::Kind::Sub6FrontEnd &&
            (r.target < 0 || r.target >= config.n_sub6_fe)) {
            throw StructuralError(cell_if(static_cast<int>(i)) + " routes to missing " + fe(r.target));
        }
    }
    for (int f : state.active_sub6) {
        if (f < 0 || f >= config.n_sub6_fe) throw StructuralError("active set lists missing " + fe(f));
    }
}

}  // namespace

FabricVerdict validate(const FabricConfig& config, const FabricState& state) {
    check_structure(config, state);
    FabricVerdict verdict;
    auto report = [&](FabricViolationKind kind, std::string resources) {
        verdict.violations.push_back({kind, std::move(resources)});
    };

    const int n_bf = config.n_bf;
    // Cellular IFs driving each module over coax.
    std::vector<std::vector<int>> drivers(static_cast<std::size_t>(n_bf));
    for (int i = 0; i < config.n_cell_if(); ++i) {
        const CellIfRoute& r = state.cell_if_route[static_cast<std::size_t>(i)];
        if (r.kind != CellIfRoute::Kind::CoaxToBf) continue;
        drivers[static_cast<std::size_t>(r.target)].push_back(i);
        if (r.target != i) report(FabricViolationKind::CoaxUnpaired, cell_if(i) + " " + bf(r.target));
    }

    std::vector<std::vector<int>> wigig_users(static_cast<std::size_t>(config.n_wigig_if));
    for (int b = 0; b < n_bf; ++b) {
        const BfMode& m = state.bf_mode[static_cast<std::size_t>(b)];
        const auto& drv = drivers[static_cast<std::size_t>(b)];
        if (drv.size() > 1) {
            std::string ids = bf(b);
            for (int i : drv) ids += " " + cell_if(i);
            report(FabricViolationKind::MultiDrive, ids);
        }
        switch (m.kind) {
            case BfMode::Kind::Off:
                for (int i : drv) report(FabricViolationKind::DanglingCoax, cell_if(i) + " " + bf(b));
                break;
            case BfMode::Kind::Cellular: {
                if (m.radio != b) {
                    report(FabricViolationKind::CoaxUnpaired, bf(b) + " " + cell_if(m.radio));
                }
                const CellIfRoute& r = state.cell_if_route[static_cast<std::size_t>(m.radio)];
                if (!(r.kind == CellIfRoute::Kind::CoaxToBf && r.target == b)) {
                    report(FabricViolationKind::CellularUnfed, bf(b) + " " + cell_if(m.radio));
                }
                break;
            }
            case BfMode::Kind::WiGig:
                wigig_users[static_cast<std::size_t>(m.radio)].push_back(b);
                for (int i : drv) {
                    report(FabricViolationKind::DualDrive,
                           bf(b) + " " + cell_if(i) + " " + wigig_if(m.radio));
                }
                break;
        }
    }

    for (int w = 0; w < config.n_wigig_if; ++w) {
        const auto& users = wigig_users[static_cast<std::size_t>(w)];
        if (users.size() > 1) {
            std::string ids = wigig_if(w);
            for (int b : users) ids += " " + bf(b);
            report(FabricViolationKind::WiGigShared, ids);
        }
    }
    const auto wigig_count = state.count(BfMode::Kind::WiGig);
    if (wigig_count > static_cast<std::size_t>(config.n_wigig_if)) {
        report(FabricViolationKind::WiGigOverCapacity,
               std::to_string(wigig_count) + " modules > " + std::to_string(config.n_wigig_if));
    }

    std::vector<std::vector<int>> fe_drivers(static_cast<std::size_t>(config.n_sub6_fe));
    for (int i = 0; i < config.n_cell_if(); ++i) {
        const CellIfRoute& r = state.cell_if_route[static_cast<std::size_t>(i)];
        if (r.kind == CellIfRoute::Kind::Sub6FrontEnd) {
            fe_drivers[static_cast<std::size_t>(r.target)].push_back(i);
        }
    }
    for (int f = 0; f < config.n_sub6_fe; ++f) {
        const auto& drv = fe_drivers[static_cast<std::size_t>(f)];
        const bool active = state.active_sub6.count(f) > 0;
        if (drv.size() > 1) {
            std::string ids = fe(f);
            for (int i : drv) ids += " " + cell_if(i);
            report(FabricViolationKind::Sub6Shared, ids);
        }
        if (active && drv.empty()) report(FabricViolationKind::Sub6Undriven, fe(f));
        if (!active && !drv.empty()) report(FabricViolationKind::Sub6RouteInactive, fe(f));
    }
    return verdict;
}

namespace {

class StateWalker {
public:
    StateWalker(const FabricConfig& config, const std::set<int>& active,
                const std::function<void(const FabricState&)>& visit)
        : config_(config), active_(active), visit_(visit), state_(FabricState::all_off(config)),
          wigig_used_(static_cast<std::size_t>(config.n_wigig_if), false),
          fe_used_(static_cast<std::size_t>(config.n_sub6_fe), false) {}

    void run() { modules(0); }

private:
    void modules(int b) {
        if (b == config_.n_bf) {
            routes(0);
            return;
        }
        const auto ub = static_cast<std::size_t>(b);
        if (!active_.count(b)) {
            modules(b + 1);
            return;
        }
        state_.bf_mode[ub] = BfMode::cellular(b);
        state_.cell_if_route[ub] = CellIfRoute::coax(b);
        modules(b + 1);
        state_.cell_if_route[ub] = CellIfRoute::off();

        for (int w = 0; w < config_.n_wigig_if; ++w) {
            if (wigig_used_[static_cast<std::size_t>(w)]) continue;
            wigig_used_[static_cast<std::size_t>(w)] = true;
            state_.bf_mode[ub] = BfMode::wigig(w);
            modules(b + 1);
            wigig_used_[static_cast<std::size_t>(w)] = false;
        }
        state_.bf_mode[ub] = BfMode::off();
    }

    void routes(int i) {
        if (i == config_.n_cell_if()) {
            visit_(state_);
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        if (state_.cell_if_route[ui].kind == CellIfRoute::Kind::CoaxToBf) {
            routes(i + 1);
            return;
        }
        routes(i + 1);
        for (int f = 0; f < config_.n_sub6_fe; ++f) {
            if (fe_used_[static_cast<std::size_t>(f)]) continue;
            fe_used_[static_cast<std::size_t>(f)] = true;
            state_.cell_if_route[ui] = CellIfRoute::sub6(f);
            state_.active_sub6.insert(f);
            routes(i + 1);
            state_.active_sub6.erase(f);
            state_.cell_if_route[ui] = CellIfRoute::off();
            fe_used_[static_cast<std::size_t>(f)] = false;
        }
    }

    const FabricConfig& config_;
    const std::set<int>& active_;
    const std::function<void(const FabricState&)>& visit_;
    FabricState state_;
    std::vector<bool> wigig_used_;
    std::vector<bool> fe_used_;
};

}  // namespace

void for_each_valid_state(const FabricConfig& config, const std::set<int>& active_modules,
                          const std::function<void(const FabricState&)>& visit) {
    config.validate();
    for (int b : active_modules) {
        if (b < 0 || b >= config.n_bf) throw StructuralError("active set lists missing " + bf(b));
    }
    StateWalker(config, active_modules, visit).run();
}

std::vector<FabricState> enumerate_valid_states(const FabricConfig& config,
                                                const std::set<int>& active_modules) {
    std::vector<FabricState> out;
    for_each_valid_state(config, active_modules, [&](const FabricState& s) { out.push_back(s); });
    return out;
}

bool consistent_with(const FabricState& state, const ModeDecision& decision,
                     bool sub6_wifi_available) {
    const bool any_cellular = state.count(BfMode::Kind::Cellular) > 0;
    const bool any_wigig = state.count(BfMode::Kind::WiGig) > 0;
    const bool any_sub6 = !state.active_sub6.empty();
    switch (decision.kind) {
        case DecisionKind::CellularOnly:
            return !any_wigig;
        case DecisionKind::WiFiOnly:
            return !any_cellular && !any_sub6 && (any_wigig || sub6_wifi_available);
        case DecisionKind::CellularAndWiFi:
            return any_wigig && (any_cellular || any_sub6);
        case DecisionKind::NoService:
            return !any_cellular && !any_wigig && !any_sub6;
    }
    return false;
}

std::vector<FabricState> states_for_decision(const FabricConfig& config,
                                             const ModeDecision& decision,
                                             const std::set<int>& active_modules,
                                             bool sub6_wifi_available) {
    std::vector<FabricState> out;
    for_each_valid_state(config, active_modules, [&](const FabricState& s) {
        if (consistent_with(s, decision, sub6_wifi_available)) out.push_back(s);
    });
    return out;
}

FabricState canonical_state(const FabricConfig& config, std::span<const BfMode::Kind> modes) {
    if (modes.size() != static_cast<std::size_t>(config.n_bf)) {
        throw StructuralError("canonical_state: " + std::to_string(modes.size()) +
                              " modes for " + std::to_string(config.n_bf) + " modules");
    }
    FabricState s = FabricState::all_off(config);
    int next_wigig = 0;
    for (std::size_t b = 0; b < modes.size(); ++b) {
        const int id = static_cast<int>(b);
        switch (modes[b]) {
            case BfMode::Kind::Off:
                break;
            case BfMode::Kind::Cellular:
                s.bf_mode[b] = BfMode::cellular(id);
                s.cell_if_route[b] = CellIfRoute::coax(id);
                break;
            case BfMode::Kind::WiGig:
                if (next_wigig >= config.n_wigig_if) {
                    throw StructuralError("canonical_state: not enough WiGig IF-radios");
                }
                s.bf_mode[b] = BfMode::wigig(next_wigig++);
                break;
        }
    }
    return s;
}

std::string_view to_string(FabricViolationKind k) {
    switch (k) {
        case FabricViolationKind::DualDrive: return "dual-drive";
        case FabricViolationKind::MultiDrive: return "multi-drive";
        case FabricViolationKind::CellularUnfed: return "cellular-unfed";
        case FabricViolationKind::CoaxUnpaired: return "coax-unpaired";
        case FabricViolationKind::DanglingCoax: return "dangling-coax";
        case FabricViolationKind::WiGigShared: return "wigig-shared";
        case FabricViolationKind::WiGigOverCapacity: return "wigig-over-capacity";
        case FabricViolationKind::Sub6Shared: return "sub6-shared";
        case FabricViolationKind::Sub6Undriven: return "sub6-undriven";
        case FabricViolationKind::Sub6RouteInactive: return "sub6-route-inactive";
    }
    return "";
}

}  // namespace dpamimo
