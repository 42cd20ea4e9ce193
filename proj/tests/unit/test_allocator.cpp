#include <gtest/gtest.h>

#include "dpamimo/allocator.hpp"
#include "dpamimo/errors.hpp"
#include "dpamimo/random_instances.hpp"

using namespace dpamimo;

namespace {

const BandCatalog& catalog() {
    static const BandCatalog c = default_catalog();
    return c;
}

std::vector<NodeSpec> nodes() {
    return {{"ue", NodeRole::UE, {0, 0}, default_radio(NodeRole::UE)},
            {"bs", NodeRole::BaseStation, {100, 0}, default_radio(NodeRole::BaseStation)},
            {"router", NodeRole::WiFiRouter, {0, 5}, default_radio(NodeRole::WiFiRouter)}};
}

AllocationInputs make_inputs(const UeLayout& layout, std::vector<std::string> cellular,
                             std::vector<std::string> wigig, ModeDecision decision, int n_wigig_if = 0,
                             GripScenario grip = GripScenario::FreeSpace) {
    AllocationInputs in;
    in.layout = layout;
    in.adjacency = adjacency(layout, default_adjacency_threshold_mm());
    in.mask = blockage_mask(layout, grip);
    in.fabric = FabricConfig::make(static_cast<int>(layout.size()), n_wigig_if);
    for (const auto& id : cellular) in.carriers.cellular.push_back(catalog().at(id));
    for (const auto& id : wigig) in.carriers.wigig.push_back(catalog().at(id));
    in.nodes = nodes();
    in.decision = decision;
    return in;
}

UeLayout pair_layout(double gap_mm) {
    const auto bands = preset_module_bands();
    return UeLayout(HousingSpec{}, {{"a", {10, 10, 10, 10}, bands}, {"b", {10, 20 + gap_mm, 10, 10}, bands}});
}

void expect_sound(const AllocationInputs& in, const Assignment& a) {
    EXPECT_TRUE(check_carrier_rule(a, in.adjacency).empty());
    EXPECT_TRUE(validate(in.fabric, a.fabric).ok());
    if (a.feasible()) EXPECT_TRUE(consistent_with(a.fabric, in.decision));
    EXPECT_DOUBLE_EQ(a.objective_bps, objective_of(a.modules));
}

}  // namespace

TEST(BruteForce, SingleModuleSingleCarrier) {
    const auto layout = UeLayout(HousingSpec{}, {{"a", {30, 60, 10, 10}, {"cell_28"}}});
    const auto in = make_inputs(layout, {"cell_28"}, {}, ModeDecision::cellular_only());
    const auto a = brute_force_assign(in);
    ASSERT_TRUE(a.feasible());
    EXPECT_EQ(a.encode(), "C:cell_28");
    EXPECT_DOUBLE_EQ(a.objective_bps, a.modules[0].budget.capacity_bps);
    EXPECT_EQ(a.modules[0].target, "bs");
}

TEST(BruteForce, AdjacentPairWithOneCarrierActivatesOne) {
    const auto in = make_inputs(pair_layout(12.0), {"cell_28"}, {}, ModeDecision::cellular_only());
    ASSERT_EQ(in.adjacency.edges.size(), 1u);
    const auto a = brute_force_assign(in);
    EXPECT_EQ(a.count(BfMode::Kind::Cellular), 1u);
    EXPECT_EQ(a.encode(), "- C:cell_28");  // equal capacities: smallest encoding wins
    expect_sound(in, a);
}

TEST(BruteForce, AdjacentPairWithTwoCarriersUsesBoth) {
    const auto in = make_inputs(pair_layout(12.0), {"cell_28", "cell_28b"}, {}, ModeDecision::cellular_only());
    const auto a = brute_force_assign(in);
    EXPECT_EQ(a.count(BfMode::Kind::Cellular), 2u);
    EXPECT_NE(a.modules[0].carrier, a.modules[1].carrier);
    expect_sound(in, a);
}

TEST(BruteForce, NonNeighborsMayShareACarrier) {
    const auto in = make_inputs(pair_layout(60.0), {"cell_28"}, {}, ModeDecision::cellular_only());
    EXPECT_TRUE(in.adjacency.edges.empty());
    EXPECT_EQ(brute_force_assign(in).encode(), "C:cell_28 C:cell_28");
}

TEST(BruteForce, WiFiOnlyWithoutWiGigRadioIsInfeasible) {
    const auto in = make_inputs(pair_layout(60.0), {"cell_28"}, {"wigig_ch1"}, ModeDecision::wifi_only(), 0);
    const auto a = brute_force_assign(in);
    EXPECT_FALSE(a.feasible());
    EXPECT_EQ(a.encode(), "- -");
    EXPECT_FALSE(greedy_assign(in).feasible());
}

TEST(BruteForce, CellularAndWiFiUsesBothLinkTypes) {
    const auto in = make_inputs(pair_layout(12.0), {"cell_28"}, {"wigig_ch1", "wigig_ch2"},
                                ModeDecision::cellular_and_wifi(AggregationClass::SuperCA), 1);
    for (const auto& a : {brute_force_assign(in), greedy_assign(in)}) {
        EXPECT_EQ(a.count(BfMode::Kind::Cellular), 1u);
        EXPECT_EQ(a.count(BfMode::Kind::WiGig), 1u);
        expect_sound(in, a);
    }
}

TEST(BruteForce, NoServiceLeavesEverythingOff) {
    const auto in = make_inputs(pair_layout(12.0), {"cell_28"}, {}, ModeDecision::no_service());
    const auto a = brute_force_assign(in);
    EXPECT_TRUE(a.feasible());
    EXPECT_EQ(a.objective_bps, 0.0);
    EXPECT_EQ(greedy_assign(in), a);
}

TEST(BruteForce, RejectsOversizedLayoutsAndMismatchedFabric) {
    const auto big = grid_layout(HousingSpec{}, 3, 3, 8.0, 10.0, 10.0);
    const auto in = make_inputs(big, {"cell_28"}, {}, ModeDecision::cellular_only());
    EXPECT_THROW(brute_force_assign(in), DomainError);
    auto bad = make_inputs(pair_layout(12.0), {"cell_28"}, {}, ModeDecision::cellular_only());
    bad.fabric = FabricConfig::make(3, 0);
    EXPECT_THROW(greedy_assign(bad), ConfigError);
}

TEST(Greedy, Dpa8FreeSpaceTwoCarriersIsAProperTwoColoring) {
    const auto in = make_inputs(preset(LayoutPreset::Dpa8), {"cell_28", "cell_28b"}, {}, ModeDecision::cellular_only());
    const auto g = greedy_assign(in);
    EXPECT_EQ(g.count(BfMode::Kind::Cellular), 8u);
    expect_sound(in, g);
    const auto b = brute_force_assign(in);
    EXPECT_NEAR(g.objective_bps, b.objective_bps, 1e-6 * b.objective_bps);
}

TEST(Greedy, EqualsOracleWithoutAdjacency) {
    const auto layout = preset(LayoutPreset::TopBottom);
    for (GripScenario grip : kAllGrips) {
        const auto in = make_inputs(layout, {"cell_28", "cell_39"}, {}, ModeDecision::cellular_only(), 0, grip);
        EXPECT_EQ(greedy_assign(in), brute_force_assign(in));
    }
}

TEST(Greedy, BlockagePenaltyPropagatesToObjective) {
    const auto layout = preset(LayoutPreset::TopBottom);
    const auto clear = greedy_assign(make_inputs(layout, {"cell_28"}, {}, ModeDecision::cellular_only()));
    const auto held = greedy_assign(
        make_inputs(layout, {"cell_28"}, {}, ModeDecision::cellular_only(), 0, GripScenario::TwoHandLandscape));
    ASSERT_EQ(held.count(BfMode::Kind::Cellular), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(clear.modules[i].budget.snr_db - held.modules[i].budget.snr_db, 35.0, 1e-9);
    }
    EXPECT_LT(held.objective_bps, clear.objective_bps);
}

TEST(CarrierRule, ReportsSharedCarrierEdges) {
    const auto in = make_inputs(pair_layout(12.0), {"cell_28"}, {}, ModeDecision::cellular_only());
    Assignment a = brute_force_assign(in);
    EXPECT_TRUE(check_carrier_rule(a, in.adjacency).empty());
    a.modules[0] = a.modules[1];
    const auto bad = check_carrier_rule(a, in.adjacency);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], std::make_pair(std::size_t{0}, std::size_t{1}));
    Assignment off;
    off.modules.resize(2);
    EXPECT_TRUE(check_carrier_rule(off, in.adjacency).empty());
}

TEST(Solvers, OracleDominatesGreedyOnRandomInstances) {
    for (std::uint64_t seed = 5000; seed < 5300; ++seed) {
        const auto in = random_allocation_instance(seed, 6);
        const auto g = greedy_assign(in);
        const auto b = brute_force_assign(in);
        EXPECT_LE(g.objective_bps, b.objective_bps * (1 + 1e-12)) << seed;
        EXPECT_EQ(g.feasible(), b.feasible()) << seed;
        expect_sound(in, g);
        expect_sound(in, b);
    }
}

TEST(Solvers, Deterministic) {
    const auto in = random_allocation_instance(77, 6);
    EXPECT_EQ(greedy_assign(in), greedy_assign(in));
    EXPECT_EQ(brute_force_assign(in), brute_force_assign(in));
}
