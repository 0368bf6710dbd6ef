#include "gecbs/low_level.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <tuple>
#include <variant>

namespace gecbs {

// ---------------------------------------------------------------------------
// Constraint satisfaction

ConstraintChecker::ConstraintChecker(const Domain& domain, AgentId agent, const ConstraintContext& ctx)
    : domain_(domain), agent_(agent), ctx_(ctx), substeps_(domain.check_substeps()) {
    for (const Constraint* c : ctx_.constraints) {
        if (c->agent != agent_) continue;
        if (!c->time) {
            unscoped_.push_back(c);
            continue;
        }
        const Time t = *c->time;
        if (c->on_edge) {
            edge_at_[t].push_back(c);
            horizon_ = std::max(horizon_, t + 1);
        } else {
            vertex_at_[t].push_back(c);
            horizon_ = std::max(horizon_, t);
        }
    }
    for (std::size_t a = 0; a < ctx_.other_paths.size(); ++a) {
        const Path* p = ctx_.other_paths[a];
        if (p && static_cast<AgentId>(a) != agent_ && !p->steps.empty()) {
            horizon_ = std::max(horizon_, p->last_time());
        }
    }
}

const Path* ConstraintChecker::other(AgentId a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= ctx_.other_paths.size()) return nullptr;
    const Path* p = ctx_.other_paths[a];
    return p && !p->steps.empty() ? p : nullptr;
}

bool ConstraintChecker::forbids_vertex(const Constraint& c, const Configuration& q, Time t) const {
    switch (c.type) {
        case ConstraintType::Vertex: return std::get<VertexPayload>(c.payload).q == q;
        case ConstraintType::Sphere: {
            const auto& s = std::get<SpherePayload>(c.payload);
            return domain_.occupancy_intersects_circle(agent_, q, s.center, s.radius);
        }
        case ConstraintType::Avoidance: {
            const auto& av = std::get<AvoidancePayload>(c.payload);
            return domain_.agents_collide(agent_, q, av.other, av.snapshot.front()).has_value();
        }
        case ConstraintType::StepPriority: {
            const Path* p = other(std::get<StepPriorityPayload>(c.payload).other);
            return p && domain_.agents_collide(agent_, q, p->agent, p->at(t)).has_value();
        }
        case ConstraintType::Priority: {
            const Path* p = other(std::get<PriorityPayload>(c.payload).other);
            return p && domain_.agents_collide(agent_, q, p->agent, p->at(t)).has_value();
        }
        case ConstraintType::Edge: return false;
    }
    return false;
}

bool ConstraintChecker::forbids_edge(const Constraint& c, const Configuration& from, const Configuration& to,
                                     Time t) const {
    switch (c.type) {
        case ConstraintType::Edge: {
            const auto& e = std::get<EdgePayload>(c.payload);
            return e.from == from && e.to == to;
        }
        case ConstraintType::Sphere: {
            const auto& s = std::get<SpherePayload>(c.payload);
            return domain_.transition_intersects_circle(agent_, from, to, s.center, s.radius, substeps_);
        }
        case ConstraintType::Avoidance: {
            const auto& av = std::get<AvoidancePayload>(c.payload);
            return domain_.edge_collides(agent_, from, to, av.other, av.snapshot[0], av.snapshot[1], substeps_)
                .has_value();
        }
        case ConstraintType::StepPriority: {
            const Path* p = other(std::get<StepPriorityPayload>(c.payload).other);
            return p && domain_.edge_collides(agent_, from, to, p->agent, p->at(t), p->at(t + 1), substeps_)
                            .has_value();
        }
        case ConstraintType::Priority: {
            const Path* p = other(std::get<PriorityPayload>(c.payload).other);
            return p && domain_.edge_collides(agent_, from, to, p->agent, p->at(t), p->at(t + 1), substeps_)
                            .has_value();
        }
        case ConstraintType::Vertex: return false;
    }
    return false;
}

bool ConstraintChecker::vertex_forbidden(const Configuration& q, Time t) const {
    if (auto it = vertex_at_.find(t); it != vertex_at_.end()) {
        for (const Constraint* c : it->second)
            if (forbids_vertex(*c, q, t)) return true;
    }
    for (const Constraint* c : unscoped_)
        if (forbids_vertex(*c, q, t)) return true;
    return false;
}

bool ConstraintChecker::edge_forbidden(const Configuration& from, const Configuration& to, Time t) const {
    if (auto it = edge_at_.find(t); it != edge_at_.end()) {
        for (const Constraint* c : it->second)
            if (forbids_edge(*c, from, to, t)) return true;
    }
    for (const Constraint* c : unscoped_)
        if (forbids_edge(*c, from, to, t)) return true;
    return false;
}

Time ConstraintChecker::settle_time(const Configuration& goal) const {
    // Past the horizon everything is static, so one probe covers all later times.
    const Time probe = horizon_ + 1;
    if (vertex_forbidden(goal, probe) || edge_forbidden(goal, goal, probe)) return -1;
    Time settle = 0;
    for (Time t = 0; t <= horizon_; ++t) {
        if (vertex_forbidden(goal, t) || edge_forbidden(goal, goal, t)) settle = t + 1;
    }
    return settle;
}

bool ConstraintChecker::satisfied_by(const Path& path) const {
    if (path.steps.empty()) return false;
    const Time end = std::max(path.last_time(), horizon_ + 1);
    for (Time t = 0; t <= end; ++t) {
        if (vertex_forbidden(path.at(t), t)) return false;
        if (t < end && edge_forbidden(path.at(t), path.at(t + 1), t)) return false;
    }
    return true;
}

bool is_forbidden(const Domain& domain, AgentId agent, const Configuration& q, Time t, const ConstraintContext& ctx) {
    return ConstraintChecker(domain, agent, ctx).vertex_forbidden(q, t);
}

bool is_forbidden_edge(const Domain& domain, AgentId agent, const Configuration& from, const Configuration& to,
                       Time t, const ConstraintContext& ctx) {
    return ConstraintChecker(domain, agent, ctx).edge_forbidden(from, to, t);
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct SearchNode {
    StateId state = 0;
    Time t = 0;
    int g = 0;
    double h = 0.0;
    double f = 0.0;
    int conflicts = 0;
    int parent = -1;
    bool open = false;
    bool in_focal = false;
};

// (f, -g, state, t, index): smaller f, then larger g, then lexicographic (config, t).
using OpenKey = std::tuple<double, int, StateId, Time, int>;
// (conflicts, f, -g, state, t, index)
using FocalKey = std::tuple<int, double, int, StateId, Time, int>;

class FocalSearch {
public:
    FocalSearch(const Domain& domain, AgentId agent, const Configuration& start, const Configuration& goal,
                const ConstraintContext& ctx, LowLevelMode mode, long max_expansions)
        : domain_(domain),
          agent_(agent),
          start_(start),
          goal_(goal),
          ctx_(ctx),
          mode_(mode),
          max_expansions_(max_expansions),
          checker_(domain, agent, ctx) {}

    PlanResult run() {
        PlanResult out;
        out.path.agent = agent_;
        settle_ = checker_.settle_time(goal_);
        if (settle_ < 0 || checker_.vertex_forbidden(start_, 0)) return out;
        horizon_ = checker_.horizon();
        goal_state_ = domain_.encode(agent_, goal_);

        push(domain_.encode(agent_, start_), start_, 0, 0, -1);
        const double w = mode_.weight;
        while (!open_.empty()) {
            const double fmin = std::get<0>(*open_.begin());
            if (mode_.kind == LowLevelMode::Kind::Focal) refresh_focal(w * fmin);
            const int idx = mode_.kind == LowLevelMode::Kind::Focal && !focal_.empty()
                                ? std::get<5>(*focal_.begin())
                                : std::get<4>(*open_.begin());
            remove(idx);
            SearchNode node = nodes_[idx];
            if (node.state == goal_state_ && node.t >= settle_) {
                out.status = PlanStatus::Found;
                out.path = reconstruct(idx);
                out.cost = final_arrival(out.path, goal_);
                out.lb = mode_.kind == LowLevelMode::Kind::Focal ? fmin : out.cost / std::max(1.0, w);
                out.lb = std::min(out.lb, out.cost);
                out.expansions = expansions_;
                return out;
            }
            if (++expansions_ > max_expansions_) {
                out.status = PlanStatus::BudgetExceeded;
                out.expansions = expansions_;
                return out;
            }
            const Configuration q = domain_.decode(agent_, node.state);
            for (const auto& succ : domain_.successors(agent_, q)) {
                const Time nt = node.t + 1;
                if (checker_.vertex_forbidden(succ.config, nt)) continue;
                if (checker_.edge_forbidden(q, succ.config, node.t)) continue;
                const int conflicts = node.conflicts + count_conflicts(q, succ.config, node.t);
                push(domain_.encode(agent_, succ.config), succ.config, nt, conflicts, idx);
            }
        }
        out.status = PlanStatus::Infeasible;
        out.expansions = expansions_;
        return out;
    }

private:
    std::int64_t key(StateId s, Time t) const {
        return s * static_cast<std::int64_t>(horizon_ + 2) + std::min<Time>(t, horizon_ + 1);
    }

    double heuristic(const Configuration& q, Time t) const {
        return std::max(domain_.heuristic(agent_, q, goal_), static_cast<double>(settle_ - t));
    }

    double priority(const SearchNode& n) const {
        return mode_.kind == LowLevelMode::Kind::Focal ? n.g + n.h : n.g + mode_.weight * n.h;
    }

    OpenKey open_key(int idx) const {
        const auto& n = nodes_[idx];
        return {n.f, -n.g, n.state, n.t, idx};
    }
    FocalKey focal_key(int idx) const {
        const auto& n = nodes_[idx];
        return {n.conflicts, n.f, -n.g, n.state, n.t, idx};
    }

    void insert(int idx) {
        auto& n = nodes_[idx];
        n.open = true;
        open_.insert(open_key(idx));
        if (mode_.kind == LowLevelMode::Kind::Focal && n.f <= focal_bound_ + 1e-9) {
            n.in_focal = true;
            focal_.insert(focal_key(idx));
        }
    }

    void remove(int idx) {
        auto& n = nodes_[idx];
        if (n.open) open_.erase(open_key(idx));
        if (n.in_focal) focal_.erase(focal_key(idx));
        n.open = false;
        n.in_focal = false;
    }

    void push(StateId s, const Configuration& q, Time t, int conflicts, int parent) {
        const auto k = key(s, t);
        const double h = heuristic(q, t);
        auto it = index_.find(k);
        if (it != index_.end()) {
            auto& existing = nodes_[it->second];
            if (existing.g <= t) return;
            // Only reachable past the horizon, where distinct times share a key.
            remove(it->second);
            existing.t = t;
            existing.g = t;
            existing.h = h;
            existing.conflicts = conflicts;
            existing.parent = parent;
            existing.f = priority(existing);
            insert(it->second);
            return;
        }
        SearchNode n;
        n.state = s;
        n.t = t;
        n.g = t;
        n.h = h;
        n.conflicts = conflicts;
        n.parent = parent;
        n.f = priority(n);
        nodes_.push_back(n);
        const int idx = static_cast<int>(nodes_.size()) - 1;
        index_.emplace(k, idx);
        insert(idx);
    }

    void refresh_focal(double bound) {
        if (bound <= focal_bound_) return;
        const double old = focal_bound_;
        focal_bound_ = bound;
        for (auto it = open_.lower_bound(OpenKey{old + 1e-9, INT_MIN, 0, 0, 0}); it != open_.end(); ++it) {
            if (std::get<0>(*it) > bound + 1e-9) break;
            const int idx = std::get<4>(*it);
            if (!nodes_[idx].in_focal) {
                nodes_[idx].in_focal = true;
                focal_.insert(focal_key(idx));
            }
        }
    }

    int count_conflicts(const Configuration& from, const Configuration& to, Time t) const {
        int count = 0;
        for (std::size_t a = 0; a < ctx_.other_paths.size(); ++a) {
            const Path* p = ctx_.other_paths[a];
            const AgentId other = static_cast<AgentId>(a);
            if (!p || other == agent_ || p->steps.empty() || !domain_.may_interact(agent_, other)) continue;
            if (domain_.agents_collide(agent_, to, other, p->at(t + 1))) ++count;
            if (domain_.edge_collides_interior(agent_, from, to, other, p->at(t), p->at(t + 1), domain_.substeps()))
                ++count;
        }
        return count;
    }

    Path reconstruct(int idx) const {
        Path path;
        path.agent = agent_;
        for (int i = idx; i >= 0; i = nodes_[i].parent) path.steps.push_back(domain_.decode(agent_, nodes_[i].state));
        std::reverse(path.steps.begin(), path.steps.end());
        // Resting at the goal is implicit after the final arrival.
        while (path.steps.size() > 1 && path.steps[path.steps.size() - 2] == goal_ &&
               static_cast<Time>(path.steps.size()) - 2 >= settle_) {
            path.steps.pop_back();
        }
        return path;
    }

    const Domain& domain_;
    AgentId agent_;
    Configuration start_;
    Configuration goal_;
    const ConstraintContext& ctx_;
    LowLevelMode mode_;
    long max_expansions_;
    ConstraintChecker checker_;

    Time settle_ = 0;
    Time horizon_ = 0;
    StateId goal_state_ = 0;
    long expansions_ = 0;
    double focal_bound_ = -1.0;
    std::vector<SearchNode> nodes_;
    std::unordered_map<std::int64_t, int> index_;
    std::set<OpenKey> open_;
    std::set<FocalKey> focal_;
};

}  // namespace

PlanResult plan(const Domain& domain, AgentId agent, const Configuration& start, const Configuration& goal,
                const ConstraintContext& ctx, LowLevelMode mode, long max_expansions) {
    if (mode.weight < 1.0) throw Error(ErrorCode::InvalidInput, "low-level weight must be >= 1");
    return FocalSearch(domain, agent, start, goal, ctx, mode, max_expansions).run();
}

}  // namespace gecbs
