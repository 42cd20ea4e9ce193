#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpamimo/blockage.hpp"
#include "dpamimo/fabric.hpp"
#include "dpamimo/layout.hpp"
#include "dpamimo/link.hpp"
#include "dpamimo/modesel.hpp"

namespace dpamimo {

/// Carriers the allocator may hand out, per link type.
struct CarrierSet {
    std::vector<Band> cellular;  // served by the base station
    std::vector<Band> wigig;     // served by the WiFi router
};

/// UE side of every module link.
struct UeRadio {
    double mmwave_gain_dbi = radio_defaults::kUeModuleGainDbi;
    double sub6_gain_dbi = radio_defaults::kUeSub6GainDbi;
    double noise_figure_db = radio_defaults::kNoiseFigureDb;

    RadioParams receiver(const Band& band) const;
    bool operator==(const UeRadio&) const = default;
};

struct AllocationInputs {
    UeLayout layout;
    AdjacencyGraph adjacency;
    BlockageMask mask;
    FabricConfig fabric;
    CarrierSet carriers;
    std::vector<NodeSpec> nodes;
    ModeDecision decision;
    UeRadio ue;
};

struct ModuleAssignment {
    BfMode::Kind link = BfMode::Kind::Off;
    std::string target;   // node id
    std::string carrier;  // band id
    LinkBudgetResult budget;

    bool active() const { return link != BfMode::Kind::Off; }
    bool operator==(const ModuleAssignment&) const = default;
};

struct Assignment {
    std::vector<ModuleAssignment> modules;  // layout order
    FabricState fabric;
    double objective_bps = 0.0;
    std::optional<std::string> infeasible;  // reason, when no assignment serves the decision

    bool feasible() const { return !infeasible.has_value(); }
    std::size_t count(BfMode::Kind kind) const;
    /// One token per module: "-" or "<C|W>:<carrier>".
    std::string encode() const;

    bool operator==(const Assignment&) const = default;
};

/// Largest module count the exhaustive search accepts.
inline constexpr int kBruteForceMaxModules = 8;

/// Floor on the mean greedy/oracle objective ratio over random_allocation_instance
/// seeds 1..1000 (n_bf <= 6, instances with a positive oracle objective).
/// Calibrated mean: 0.978; worst single instance: 0.46.
inline constexpr double kGreedyQualityFloor = 0.975;

/// Exhaustive search over activation x link type x carrier labeling. Returns a
/// maximum-objective assignment; among equal objectives the lexicographically
/// smallest per-module choice vector wins (Off < cellular carriers < WiGig
/// carriers, each by ascending frequency). Throws DomainError above
/// kBruteForceMaxModules modules.
Assignment brute_force_assign(const AllocationInputs& inputs);

/// Modules in descending post-blockage SNR each take their highest-capacity
/// non-conflicting choice. Ties go to the lower module id and the lower carrier
/// frequency. A CellularAndWiFi decision missing one link type after the pass
/// gets a single best repair move.
Assignment greedy_assign(const AllocationInputs& inputs);

/// Adjacency edges (layout indices) joining two active modules on the same carrier.
std::vector<std::pair<std::size_t, std::size_t>> check_carrier_rule(
    const Assignment& assignment, const AdjacencyGraph& adjacency);

/// Sum of active module capacities in layout order.
double objective_of(const std::vector<ModuleAssignment>& modules);

}  // namespace dpamimo
