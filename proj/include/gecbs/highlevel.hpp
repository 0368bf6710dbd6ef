#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gecbs/constraints.hpp"
#include "gecbs/core.hpp"
#include "gecbs/domain.hpp"
#include "gecbs/low_level.hpp"

namespace gecbs {

/// All pairwise vertex and edge conflicts of `paths`, goal-padded up to the
/// longest path, ordered by (time, agent pair, kind). Edge conflicts are
/// reported only for interior sub-steps; endpoint contacts are vertex conflicts.
std::vector<Conflict> find_conflicts(const std::vector<const Path*>& paths, const Domain& domain);
std::vector<Conflict> find_conflicts(const Solution& solution, const Domain& domain);

/// Constraint-tree node.
struct CTNode {
    long id = 0;
    std::optional<long> parent;
    ConstraintList constraints;
    std::vector<std::shared_ptr<const Path>> paths;
    std::vector<double> cost_per_agent;
    std::vector<double> lb_per_agent;
    double cost = 0.0;
    double lb = 0.0;
    std::shared_ptr<const std::vector<Conflict>> conflicts;
    std::vector<AgentId> agents_replan;
    std::optional<std::size_t> last_slot;  // menu slot of the constraint added at creation
    std::vector<int> slot_counts;          // constraints per menu slot

    bool evaluated() const { return agents_replan.empty(); }
    std::size_t conflict_count() const { return conflicts ? conflicts->size() : 0; }
    Solution solution() const;
};

/// 1 - (share of constraints created from menu slot k); 1 for a node without constraints.
double rho_tilde(const CTNode& node, std::size_t slot);

struct FocalKey {
    std::array<double, 3> v{};
    long id = 0;
    friend auto operator<=>(const FocalKey&, const FocalKey&) = default;
};

using FocalKeyFn = std::function<FocalKey(const CTNode&)>;

/// OPEN ordered by lb plus one FOCAL view per key function. FOCAL_q holds the
/// open nodes with cost <= w * min lb(OPEN), ordered by its key.
class FocalQueueSet {
public:
    FocalQueueSet(double w, std::vector<FocalKeyFn> keys);

    void push(CTNode* node);
    void erase(CTNode* node);

    /// Best node of queue q. When FOCAL_q is empty the cheapest open node is
    /// returned and `last_fallback()` reports it.
    CTNode* top(std::size_t q);
    bool last_fallback() const { return fallback_; }

    double min_lb() const;
    double bound() const { return bound_; }
    bool empty() const { return open_.empty(); }
    std::size_t size() const { return open_.size(); }
    std::size_t queue_count() const { return keys_.size(); }
    std::size_t focal_size(std::size_t q) const { return focal_.at(q).size(); }
    bool in_focal(long id) const;

private:
    struct Entry {
        CTNode* node = nullptr;
        double lb = 0.0;
        double cost = 0.0;
        std::vector<FocalKey> keys;
        bool focal = false;
    };
    void refresh();
    void add_focal(Entry& e);
    void remove_focal(Entry& e);

    double w_;
    std::vector<FocalKeyFn> keys_;
    std::set<std::pair<double, long>> open_;
    std::set<std::pair<double, long>> by_cost_;
    std::unordered_map<long, Entry> entries_;
    std::vector<std::set<FocalKey>> focal_;
    double bound_ = 0.0;
    bool fallback_ = false;
};

enum class Algorithm { CBS, ECBS, PP, ACECBS, ACECBSLazy, GenECBS, GenCBS, ECBSSub };

/// An algorithm name as used on the command line. `ecbs-sub:<type>` carries
/// the substituted constraint type; `sphere(S|M|L)` picks the smallest,
/// median or largest sphere radius of the configured menu.
struct AlgorithmSpec {
    Algorithm algorithm = Algorithm::GenECBS;
    std::optional<MenuEntry> substitute;
    char sphere_alias = 0;

    std::string name() const;
    static AlgorithmSpec parse(const std::string& text);
    friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

std::vector<std::string> algorithm_names();

enum class SearchEvent { Generated, Evaluated, Expanded, Returned };

/// Called on every CT node event; `queue` is the focal queue that selected the
/// node (0 for generation and for single-queue solvers).
using SearchObserver = std::function<void(SearchEvent event, const CTNode& node, std::size_t queue)>;

struct SolverConfig {
    AlgorithmSpec algorithm;
    double w = 1.3;
    ConstraintMenu menu = ConstraintMenu::complete_only();
    /// Defaults to Focal(w) for bounded solvers and Focal(1) for CBS, Gen-CBS and PP.
    std::optional<LowLevelMode> low_level;
    double dts_cap = 10.0;
    std::uint64_t seed = 0;
    long max_expansions = 20000;
    double timeout_ms = 10000.0;
    long ll_max_expansions = 2000000;
    int pp_retries = 10;
    std::vector<AgentId> pp_order;  // empty: seeded random order
    SearchObserver observer;        // optional, constraint-tree solvers only
};

SolverResult solve(const Domain& domain, const SolverConfig& config);

struct Budget {
    long max_expansions = 20000;
    double timeout_ms = 10000.0;
};

SolverResult solve_cbs(const Domain& domain, Budget budget = {});
SolverResult solve_ecbs(const Domain& domain, double w, Budget budget = {});
SolverResult solve_pp(const Domain& domain, std::vector<AgentId> order, int retries, std::uint64_t seed,
                      Budget budget = {});
SolverResult solve_ac_ecbs(const Domain& domain, double w, const ConstraintMenu& menu, bool lazy, Budget budget = {});
SolverResult solve_gen_ecbs(const Domain& domain, double w, const ConstraintMenu& menu, std::uint64_t seed,
                            Budget budget = {});

}  // namespace gecbs
