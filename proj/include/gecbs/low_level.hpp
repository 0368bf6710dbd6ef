#pragma once

#include <unordered_map>
#include <vector>

#include "gecbs/core.hpp"
#include "gecbs/domain.hpp"

namespace gecbs {

/// Constraints scoped to one agent plus a read-only view of every agent's
/// current path in the CT node being planned for. `other_paths` is indexed by
/// agent id; null entries are agents without a path yet.
struct ConstraintContext {
    std::vector<const Constraint*> constraints;
    std::vector<const Path*> other_paths;
};

/// Indexes a context by time so satisfaction checks are cheap.
class ConstraintChecker {
public:
    ConstraintChecker(const Domain& domain, AgentId agent, const ConstraintContext& ctx);

    bool vertex_forbidden(const Configuration& q, Time t) const;
    bool edge_forbidden(const Configuration& from, const Configuration& to, Time t) const;

    /// Beyond this time every constraint and every other path is static.
    Time horizon() const { return horizon_; }

    /// Earliest time from which the agent may rest at `goal` forever; -1 if never.
    Time settle_time(const Configuration& goal) const;

    /// True when every configuration and transition of `path` satisfies the context.
    bool satisfied_by(const Path& path) const;

private:
    bool forbids_vertex(const Constraint& c, const Configuration& q, Time t) const;
    bool forbids_edge(const Constraint& c, const Configuration& from, const Configuration& to, Time t) const;
    const Path* other(AgentId a) const;

    const Domain& domain_;
    AgentId agent_;
    const ConstraintContext& ctx_;
    int substeps_;
    std::unordered_map<Time, std::vector<const Constraint*>> vertex_at_;
    std::unordered_map<Time, std::vector<const Constraint*>> edge_at_;
    std::vector<const Constraint*> unscoped_;
    Time horizon_ = 0;
};

bool is_forbidden(const Domain& domain, AgentId agent, const Configuration& q, Time t, const ConstraintContext& ctx);
bool is_forbidden_edge(const Domain& domain, AgentId agent, const Configuration& from, const Configuration& to,
                       Time t, const ConstraintContext& ctx);

struct LowLevelMode {
    enum class Kind { Focal, WeightedAStar };
    Kind kind = Kind::Focal;
    double weight = 1.0;  // w_low for Focal, heuristic inflation for WeightedAStar

    static LowLevelMode focal(double w) { return {Kind::Focal, w}; }
    static LowLevelMode weighted_astar(double w) { return {Kind::WeightedAStar, w}; }
};

enum class PlanStatus { Found, Infeasible, BudgetExceeded };

struct PlanResult {
    PlanStatus status = PlanStatus::Infeasible;
    Path path;
    double cost = 0.0;
    double lb = 0.0;
    long expansions = 0;
};

/// Time-indexed single-agent search from t = 0. Returns a path that satisfies
/// every constraint in `ctx` together with a certified lower bound on the
/// optimal constrained cost.
PlanResult plan(const Domain& domain, AgentId agent, const Configuration& start, const Configuration& goal,
                const ConstraintContext& ctx, LowLevelMode mode, long max_expansions);

}  // namespace gecbs
