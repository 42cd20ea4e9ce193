#pragma once

#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dpamimo/modesel.hpp"

namespace dpamimo {

/// Resource counts of the multiplexing fabric. Cellular IF-radios pair one-to-one
/// with BF modules (cellular IF i is wired to BF module i over coax), so their
/// count is not a free parameter.
struct FabricConfig {
    int n_bf = 0;
    int n_wigig_if = 0;
    int n_sub6_fe = 0;

    /// Throws ConfigError for negative counts or n_wigig_if > n_bf.
    static FabricConfig make(int n_bf, int n_wigig_if, int n_sub6_fe = 0);
    void validate() const;
    int n_cell_if() const { return n_bf; }

    bool operator==(const FabricConfig&) const = default;
};

struct BfMode {
    enum class Kind { Off, Cellular, WiGig };
    Kind kind = Kind::Off;
    int radio = -1;  // cellular IF id or WiGig IF id

    static BfMode off() { return {}; }
    static BfMode cellular(int cell_if) { return {Kind::Cellular, cell_if}; }
    static BfMode wigig(int wigig_if) { return {Kind::WiGig, wigig_if}; }

    auto operator<=>(const BfMode&) const = default;
};

struct CellIfRoute {
    enum class Kind { Off, CoaxToBf, Sub6FrontEnd };
    Kind kind = Kind::Off;
    int target = -1;  // BF module id or sub-6 front-end id

    static CellIfRoute off() { return {}; }
    static CellIfRoute coax(int bf) { return {Kind::CoaxToBf, bf}; }
    static CellIfRoute sub6(int fe) { return {Kind::Sub6FrontEnd, fe}; }

    auto operator<=>(const CellIfRoute&) const = default;
};

struct FabricState {
    std::vector<BfMode> bf_mode;            // size n_bf
    std::vector<CellIfRoute> cell_if_route; // size n_cell_if
    std::set<int> active_sub6;

    /// All switches open.
    static FabricState all_off(const FabricConfig& config);

    std::size_t count(BfMode::Kind kind) const;
    /// Ids of modules that are not Off.
    std::set<int> active_modules() const;
    /// Compact text form, e.g. "C0 W0 - | B0 F1 - | {1}".
    std::string encode() const;

    auto operator<=>(const FabricState&) const = default;
};

enum class FabricViolationKind {
    DualDrive,         // module in WiGig mode while a cellular IF also drives it
    MultiDrive,        // several cellular IFs drive one module
    CellularUnfed,     // Cellular-mode module whose IF is routed elsewhere
    CoaxUnpaired,      // coax route or Cellular mode across a non-paired IF/module
    DanglingCoax,      // cellular IF drives a module that is Off
    WiGigShared,       // one WiGig IF attached to several modules
    WiGigOverCapacity, // more WiGig-mode modules than WiGig IFs
    Sub6Shared,        // one sub-6 front end driven by several IFs
    Sub6Undriven,      // front end listed active but no IF routes to it
    Sub6RouteInactive  // IF routes to a front end not listed active
};

struct FabricViolation {
    FabricViolationKind kind;
    std::string resources;  // offending ids, e.g. "bf3 cell_if3 wigig_if0"

    bool operator==(const FabricViolation&) const = default;
};

struct FabricVerdict {
    std::vector<FabricViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Logical check of a state. Throws StructuralError when vector sizes differ
/// from the config or any id is out of range.
FabricVerdict validate(const FabricConfig& config, const FabricState& state);

/// Calls `visit` for every valid state in which exactly `active_modules` are
/// non-Off, in a fixed order: modules ascending with Cellular before WiGig IF 0..k,
/// then spare cellular IFs ascending with Off before front ends 0..m.
/// Infeasible active sets visit nothing. Throws StructuralError for module ids out of range.
void for_each_valid_state(const FabricConfig& config, const std::set<int>& active_modules,
                          const std::function<void(const FabricState&)>& visit);

std::vector<FabricState> enumerate_valid_states(const FabricConfig& config,
                                                const std::set<int>& active_modules);

/// True when the state can serve the decision:
///   CellularOnly    -> no WiGig-mode module
///   WiFiOnly        -> no Cellular-mode module, no active sub-6 front end, and a
///                      WiGig-mode module unless sub-6 WiFi is available
///   CellularAndWiFi -> a WiGig-mode module plus a Cellular-mode module or an
///                      active sub-6 front end
///   NoService       -> nothing active
bool consistent_with(const FabricState& state, const ModeDecision& decision,
                     bool sub6_wifi_available = false);

std::vector<FabricState> states_for_decision(const FabricConfig& config,
                                             const ModeDecision& decision,
                                             const std::set<int>& active_modules,
                                             bool sub6_wifi_available = false);

/// Canonical state for per-module modes: Cellular module i uses cellular IF i,
/// WiGig modules take WiGig IFs in ascending module order, spare IFs stay Off.
/// Throws StructuralError if modes.size() != n_bf.
FabricState canonical_state(const FabricConfig& config, std::span<const BfMode::Kind> modes);

std::string_view to_string(FabricViolationKind k);

}  // namespace dpamimo
