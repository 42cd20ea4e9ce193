#include "dpamimo/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "dpamimo/errors.hpp"

namespace dpamimo {

RadioParams UeRadio::receiver(const Band& band) const {
    const double gain = band.tier == Tier::MmWave ? mmwave_gain_dbi : sub6_gain_dbi;
    return {0.0, gain, gain, noise_figure_db};
}

std::size_t Assignment::count(BfMode::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(
        modules.begin(), modules.end(), [&](const ModuleAssignment& m) { return m.link == kind; }));
}

std::string Assignment::encode() const {
    std::string s;
    for (const auto& m : modules) {
        if (!s.empty()) s += ' ';
        switch (m.link) {
            case BfMode::Kind::Off: s += '-'; break;
            case BfMode::Kind::Cellular: s += "C:" + m.carrier; break;
            case BfMode::Kind::WiGig: s += "W:" + m.carrier; break;
        }
    }
    return s;
}

double objective_of(const std::vector<ModuleAssignment>& modules) {
    double total = 0.0;
    for (const auto& m : modules) {
        if (m.active()) total += m.budget.capacity_bps;
    }
    return total;
}

std::vector<std::pair<std::size_t, std::size_t>> check_carrier_rule(
    const Assignment& assignment, const AdjacencyGraph& adjacency) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (const auto& [u, v] : adjacency.edges) {
        if (u >= assignment.modules.size() || v >= assignment.modules.size()) continue;
        const auto& a = assignment.modules[u];
        const auto& b = assignment.modules[v];
        if (a.active() && b.active() && a.carrier == b.carrier) bad.emplace_back(u, v);
    }
    return bad;
}

namespace {

struct Option {
    BfMode::Kind link;
    int color;  // carrier index shared by all modules
    const Band* band;
    const NodeSpec* target;
    LinkBudgetResult budget;
};

bool by_frequency(const Band& a, const Band& b) {
    if (a.center_ghz != b.center_ghz) return a.center_ghz < b.center_ghz;
    return a.id < b.id;
}

const NodeSpec* first_with_role(const std::vector<NodeSpec>& nodes, NodeRole role) {
    for (const auto& n : nodes) {
        if (n.role == role) return &n;
    }
    return nullptr;
}

bool supports(const ModulePlacement& p, const std::string& band_id) {
    return std::find(p.supported_band_ids.begin(), p.supported_band_ids.end(), band_id) !=
           p.supported_band_ids.end();
}

/// Per-module choices and constraint data shared by both solvers.
class Problem {
public:
    explicit Problem(const AllocationInputs& in) : in_(in) {
        in.fabric.validate();
        const std::size_t n = in.layout.size();
        if (static_cast<std::size_t>(in.fabric.n_bf) != n) {
            throw ConfigError("fabric n_bf (" + std::to_string(in.fabric.n_bf) +
                                  ") differs from layout module count (" + std::to_string(n) + ")",
                              "fabric/n_bf");
        }
        options_.resize(n);
        neighbors_.resize(n);
        for (const auto& [u, v] : in.adjacency.edges) {
            if (u >= n || v >= n) throw DomainError("adjacency edge outside the layout");
            neighbors_[u].push_back(v);
            neighbors_[v].push_back(u);
        }

        need_cellular_ = in.decision.uses_cellular();
        need_wigig_ = in.decision.uses_wifi();
        if (in.decision.kind == DecisionKind::NoService) return;

        const NodeSpec* ue = first_with_role(in.nodes, NodeRole::UE);
        if (!ue) throw ConfigError("allocation needs a UE node", "nodes");
        const NodeSpec* bs = first_with_role(in.nodes, NodeRole::BaseStation);
        const NodeSpec* router = first_with_role(in.nodes, NodeRole::WiFiRouter);

        if (need_cellular_ && bs) add_options(BfMode::Kind::Cellular, in.carriers.cellular, *bs, *ue);
        if (need_wigig_ && router && in.fabric.n_wigig_if > 0) {
            add_options(BfMode::Kind::WiGig, in.carriers.wigig, *router, *ue);
        }

        auto any_of_kind = [&](BfMode::Kind k) {
            return std::any_of(options_.begin(), options_.end(), [&](const auto& opts) {
                return std::any_of(opts.begin(), opts.end(),
                                   [&](const Option& o) { return o.link == k; });
            });
        };
        if (need_cellular_ && !any_of_kind(BfMode::Kind::Cellular)) {
            precheck_ = "no module can reach the base station on an allowed cellular carrier";
        } else if (need_wigig_ && !any_of_kind(BfMode::Kind::WiGig)) {
            precheck_ = "no WiGig IF-radio, router or WiGig carrier usable by any module";
        }
    }

    std::size_t size() const { return options_.size(); }
    const std::vector<Option>& options(std::size_t m) const { return options_[m]; }
    const std::vector<std::size_t>& neighbors(std::size_t m) const { return neighbors_[m]; }
    int wigig_cap() const { return in_.fabric.n_wigig_if; }
    bool need_cellular() const { return need_cellular_; }
    bool need_wigig() const { return need_wigig_; }
    bool no_service() const { return in_.decision.kind == DecisionKind::NoService; }
    const std::optional<std::string>& precheck() const { return precheck_; }

    /// Choice index per module: -1 for Off, otherwise an index into options(m).
    Assignment materialize(const std::vector<int>& choice) const {
        Assignment a;
        a.modules.resize(size());
        std::vector<BfMode::Kind> modes(size(), BfMode::Kind::Off);
        for (std::size_t m = 0; m < size(); ++m) {
            if (choice[m] < 0) continue;
            const Option& o = options_[m][static_cast<std::size_t>(choice[m])];
            a.modules[m] = {o.link, o.target->id, o.band->id, o.budget};
            modes[m] = o.link;
        }
        a.fabric = canonical_state(in_.fabric, modes);
        a.objective_bps = objective_of(a.modules);
        return a;
    }

    Assignment infeasible(std::string reason) const {
        Assignment a = materialize(std::vector<int>(size(), -1));
        a.infeasible = std::move(reason);
        return a;
    }

private:
    void add_options(BfMode::Kind link, std::vector<Band> carriers, const NodeSpec& tx,
                     const NodeSpec& ue) {
        std::sort(carriers.begin(), carriers.end(), by_frequency);
        const double d = distance_m(tx.position, ue.position);
        for (const Band& band : carriers) {
            auto [it, inserted] = colors_.try_emplace(band.id, static_cast<int>(colors_.size()));
            const Band* stored = &bands_.emplace_back(band);
            for (std::size_t m = 0; m < size(); ++m) {
                if (!supports(in_.layout[m], band.id)) continue;
                const double blockage = in_.mask.at(in_.layout[m].id);
                auto budget = module_link_budget(tx.radio, in_.ue.receiver(band), d, band, blockage);
                options_[m].push_back({link, it->second, stored, &tx, budget});
            }
        }
    }

    const AllocationInputs& in_;
    std::vector<std::vector<Option>> options_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::map<std::string, int> colors_;
    std::deque<Band> bands_;  // stable addresses for Option::band
    bool need_cellular_ = false;
    bool need_wigig_ = false;
    std::optional<std::string> precheck_;
};

class Search {
public:
    explicit Search(const Problem& p)
        : p_(p), choice_(p.size(), -1), color_(p.size(), -1), suffix_bound_(p.size() + 1, 0.0) {
        for (std::size_t m = p.size(); m-- > 0;) {
            double best = 0.0;
            for (const auto& o : p.options(m)) best = std::max(best, o.budget.capacity_bps);
            suffix_bound_[m] = suffix_bound_[m + 1] + best;
        }
    }

    std::optional<std::vector<int>> run() {
        visit(0, 0.0);
        return best_;
    }

private:
    void visit(std::size_t m, double partial) {
        if (best_ && partial + suffix_bound_[m] < best_objective_ * (1.0 - 1e-12)) return;
        if (m == p_.size()) {
            if (p_.need_cellular() && !p_.need_wigig() && cellular_ == 0) return;
            if (p_.need_wigig() && !p_.need_cellular() && wigig_ == 0) return;
            if (p_.need_cellular() && p_.need_wigig() && (cellular_ == 0 || wigig_ == 0)) return;
            if (!best_ || partial > best_objective_) {
                best_ = choice_;
                best_objective_ = partial;
            }
            return;
        }
        visit(m + 1, partial);  // Off first: it encodes smallest
        const auto& opts = p_.options(m);
        for (std::size_t k = 0; k < opts.size(); ++k) {
            const Option& o = opts[k];
            if (o.link == BfMode::Kind::WiGig && wigig_ >= p_.wigig_cap()) continue;
            if (conflicts(m, o.color)) continue;
            choice_[m] = static_cast<int>(k);
            color_[m] = o.color;
            (o.link == BfMode::Kind::WiGig ? wigig_ : cellular_)++;
            visit(m + 1, partial + o.budget.capacity_bps);
            (o.link == BfMode::Kind::WiGig ? wigig_ : cellular_)--;
            color_[m] = -1;
            choice_[m] = -1;
        }
    }

    bool conflicts(std::size_t m, int color) const {
        for (std::size_t n : p_.neighbors(m)) {
            if (color_[n] == color) return true;
        }
        return false;
    }

    const Problem& p_;
    std::vector<int> choice_;
    std::vector<int> color_;
    std::vector<double> suffix_bound_;
    int cellular_ = 0;
    int wigig_ = 0;
    std::optional<std::vector<int>> best_;
    double best_objective_ = 0.0;
};

/// Option indices of module m ordered by carrier frequency, then link type.
std::vector<std::size_t> frequency_order(const Problem& p, std::size_t m) {
    const auto& opts = p.options(m);
    std::vector<std::size_t> idx(opts.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return by_frequency(*opts[a].band, *opts[b].band);
    });
    return idx;
}

class Greedy {
public:
    explicit Greedy(const Problem& p) : p_(p), choice_(p.size(), -1), color_(p.size(), -1) {}

    std::optional<std::vector<int>> run() {
        for (std::size_t m : order()) {
            int best = -1;
            double best_cap = 0.0;
            for (std::size_t k : frequency_order(p_, m)) {
                const Option& o = p_.options(m)[k];
                if (!allowed(m, o)) continue;
                if (o.budget.capacity_bps > best_cap) {
                    best = static_cast<int>(k);
                    best_cap = o.budget.capacity_bps;
                }
            }
            if (best >= 0) set(m, best);
        }
        for (int attempt = 0; attempt < 2; ++attempt) {
            if (p_.need_cellular() && p_.need_wigig()) {
                if (count(BfMode::Kind::Cellular) == 0 && !repair(BfMode::Kind::Cellular)) break;
                if (count(BfMode::Kind::WiGig) == 0 && !repair(BfMode::Kind::WiGig)) break;
                if (count(BfMode::Kind::Cellular) > 0 && count(BfMode::Kind::WiGig) > 0) break;
            }
        }
        const bool ok = (!p_.need_cellular() || !p_.need_wigig())
                            ? std::any_of(choice_.begin(), choice_.end(), [](int c) { return c >= 0; })
                            : count(BfMode::Kind::Cellular) > 0 && count(BfMode::Kind::WiGig) > 0;
        if (!ok) return std::nullopt;
        return choice_;
    }

private:
    std::vector<std::size_t> order() const {
        std::vector<double> key(p_.size(), -std::numeric_limits<double>::infinity());
        for (std::size_t m = 0; m < p_.size(); ++m) {
            for (const auto& o : p_.options(m)) key[m] = std::max(key[m], o.budget.snr_db);
        }
        std::vector<std::size_t> idx(p_.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
        return idx;
    }

    std::size_t count(BfMode::Kind kind) const {
        std::size_t n = 0;
        for (std::size_t m = 0; m < p_.size(); ++m) {
            if (choice_[m] >= 0 && p_.options(m)[static_cast<std::size_t>(choice_[m])].link == kind) ++n;
        }
        return n;
    }

    BfMode::Kind kind_of(std::size_t m) const {
        return choice_[m] < 0 ? BfMode::Kind::Off
                              : p_.options(m)[static_cast<std::size_t>(choice_[m])].link;
    }

    /// Whether module m may take option o given every other module's current choice.
    bool allowed(std::size_t m, const Option& o) const {
        if (o.link == BfMode::Kind::WiGig) {
            const std::size_t others = count(BfMode::Kind::WiGig) -
                                       (kind_of(m) == BfMode::Kind::WiGig ? 1 : 0);
            if (others >= static_cast<std::size_t>(p_.wigig_cap())) return false;
        }
        for (std::size_t n : p_.neighbors(m)) {
            if (color_[n] == o.color) return false;
        }
        return true;
    }

    void set(std::size_t m, int k) {
        choice_[m] = k;
        color_[m] = k < 0 ? -1 : p_.options(m)[static_cast<std::size_t>(k)].color;
    }

    double capacity(std::size_t m) const {
        return choice_[m] < 0 ? 0.0
                              : p_.options(m)[static_cast<std::size_t>(choice_[m])].budget.capacity_bps;
    }

    double total() const {
        double sum = 0.0;
        for (std::size_t m = 0; m < p_.size(); ++m) sum += capacity(m);
        return sum;
    }

    /// Best option of `kind` for module m under the current choices, or -1.
    int best_option(std::size_t m, BfMode::Kind kind) const {
        int best = -1;
        double best_cap = -1.0;
        for (std::size_t k : frequency_order(p_, m)) {
            const Option& o = p_.options(m)[k];
            if (o.link != kind || !allowed(m, o)) continue;
            if (o.budget.capacity_bps > best_cap) {
                best = static_cast<int>(k);
                best_cap = o.budget.capacity_bps;
            }
        }
        return best;
    }

    /// Makes `missing` present with the best-objective move: module m switches to
    /// `missing`, and if that removed the last module of the other required type,
    /// another module n switches to that type.
    bool repair(BfMode::Kind missing) {
        const BfMode::Kind other =
            missing == BfMode::Kind::Cellular ? BfMode::Kind::WiGig : BfMode::Kind::Cellular;
        const std::vector<int> saved_choice = choice_;
        const std::vector<int> saved_color = color_;
        std::vector<int> best_choice;
        double best_total = -1.0;
        for (std::size_t m = 0; m < p_.size(); ++m) {
            for (std::size_t k : frequency_order(p_, m)) {
                const Option& o = p_.options(m)[k];
                if (o.link != missing || !allowed(m, o)) continue;
                set(m, static_cast<int>(k));
                if (count(other) == 0) {
                    int best_n = -1, best_j = -1;
                    double best_cap = -1.0;
                    for (std::size_t n = 0; n < p_.size(); ++n) {
                        if (n == m) continue;
                        const int j = best_option(n, other);
                        if (j < 0) continue;
                        const double cap = p_.options(n)[static_cast<std::size_t>(j)].budget.capacity_bps -
                                           capacity(n);
                        if (cap > best_cap) {
                            best_cap = cap;
                            best_n = static_cast<int>(n);
                            best_j = j;
                        }
                    }
                    if (best_n >= 0) set(static_cast<std::size_t>(best_n), best_j);
                }
                if (count(other) > 0 && total() > best_total) {
                    best_total = total();
                    best_choice = choice_;
                }
                choice_ = saved_choice;
                color_ = saved_color;
            }
        }
        if (best_choice.empty()) return false;
        for (std::size_t m = 0; m < p_.size(); ++m) set(m, best_choice[m]);
        return true;
    }

    const Problem& p_;
    std::vector<int> choice_;
    std::vector<int> color_;
};

constexpr const char* kNoFeasible =
    "no assignment satisfies the carrier rule, the IF-radio budget and the mode decision";

}  // namespace

Assignment brute_force_assign(const AllocationInputs& inputs) {
    if (inputs.layout.size() > static_cast<std::size_t>(kBruteForceMaxModules)) {
        throw DomainError("brute_force_assign: at most " + std::to_string(kBruteForceMaxModules) +
                          " modules");
    }
    const Problem p(inputs);
    if (p.no_service()) return p.materialize(std::vector<int>(p.size(), -1));
    if (p.precheck()) return p.infeasible(*p.precheck());
    auto best = Search(p).run();
    if (!best) return p.infeasible(kNoFeasible);
    return p.materialize(*best);
}

Assignment greedy_assign(const AllocationInputs& inputs) {
    const Problem p(inputs);
    if (p.no_service()) return p.materialize(std::vector<int>(p.size(), -1));
    if (p.precheck()) return p.infeasible(*p.precheck());
    auto choice = Greedy(p).run();
    if (!choice) return p.infeasible(kNoFeasible);
    return p.materialize(*choice);
}

}  // namespace dpamimo
