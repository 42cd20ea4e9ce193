#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpamimo/allocator.hpp"
#include "dpamimo/fabric.hpp"
#include "dpamimo/scenario.hpp"

namespace dpamimo {

/// Seeded source for generated test instances. std::mt19937_64 output is fixed by
/// the standard; the mappings below avoid the implementation-defined
/// std::*_distribution so instances match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Inclusive range.
    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }
    bool chance(double p) { return uniform() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
    }

private:
    std::mt19937_64 engine_;
};

/// A fabric config and an arbitrary (often invalid) state for it.
struct FabricCase {
    FabricConfig config;
    FabricState state;
};

/// Random config with n_bf in [1, max_bf], at most 3 WiGig IFs and 2 front ends,
/// and a state biased towards near-valid switch positions.
FabricCase random_fabric_case(Rng& rng, int max_bf = 8);

/// Layout with `modules` footprints, either a tight grid or random placement.
UeLayout random_layout(Rng& rng, int modules);

/// Allocation problem with 1..max_bf modules, random grip, carriers, IF budget,
/// node distances and a cellular and/or WiFi decision.
AllocationInputs random_allocation_instance(std::uint64_t seed, int max_bf = 6);

/// Complete scenario config drawn from the seed; always passes validate().
ScenarioConfig random_scenario(std::uint64_t seed, int max_bf = 8);

}  // namespace dpamimo
