#include "gecbs/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace gecbs {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::Endpoint: return "endpoint";
        case ViolationKind::Configuration: return "configuration";
        case ViolationKind::Transition: return "transition";
        case ViolationKind::VertexConflict: return "vertex-conflict";
        case ViolationKind::EdgeConflict: return "edge-conflict";
    }
    return "?";
}

namespace {

void check_shape(const Domain& domain, const Solution& solution) {
    if (static_cast<int>(solution.size()) != domain.num_agents()) {
        throw Error(ErrorCode::MalformedSolution, "solution has " + std::to_string(solution.size()) +
                                                      " paths for " + std::to_string(domain.num_agents()) + " agents");
    }
    for (std::size_t a = 0; a < solution.size(); ++a) {
        if (solution[a].agent != static_cast<AgentId>(a) || solution[a].steps.empty()) {
            throw Error(ErrorCode::MalformedSolution, "path " + std::to_string(a) + " is empty or mislabelled");
        }
    }
}

std::string time_text(Time t) { return " at t=" + std::to_string(t); }

}  // namespace

VerifyReport verify(const Domain& domain, const Solution& solution) {
    check_shape(domain, solution);
    VerifyReport report;
    auto add = [&](ViolationKind k, AgentId a, std::optional<AgentId> b, Time t, std::string msg) {
        report.violations.push_back({k, a, b, t, std::move(msg)});
    };
    const int n = domain.num_agents();
    const int m = domain.check_substeps();
    std::vector<bool> well_formed(n, true);

    for (AgentId a = 0; a < n; ++a) {
        const Path& p = solution[a];
        if (p.steps.front() != domain.start(a)) add(ViolationKind::Endpoint, a, {}, 0, "path does not begin at the start");
        if (p.steps.back() != domain.goal(a))
            add(ViolationKind::Endpoint, a, {}, p.last_time(), "path does not end at the goal");
        for (Time t = 0; t <= p.last_time(); ++t) {
            const Configuration& q = p.steps[t];
            if (q.size() != domain.dims(a) || !domain.config_valid(a, q)) {
                add(ViolationKind::Configuration, a, {}, t, "configuration out of bounds or in collision" + time_text(t));
                well_formed[a] = false;
            }
        }
        if (!well_formed[a]) continue;
        for (Time t = 0; t < p.last_time(); ++t) {
            if (!domain.transition_valid(a, p.steps[t], p.steps[t + 1], m)) {
                add(ViolationKind::Transition, a, {}, t, "invalid transition" + time_text(t));
            }
        }
    }

    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = i + 1; j < n; ++j) {
            if (!well_formed[i] || !well_formed[j]) continue;
            const Path& pi = solution[i];
            const Path& pj = solution[j];
            const Time end = std::max(pi.last_time(), pj.last_time());
            for (Time t = 0; t <= end; ++t) {
                if (domain.agents_collide(i, pi.at(t), j, pj.at(t))) {
                    add(ViolationKind::VertexConflict, i, j, t, "agents collide" + time_text(t));
                }
            }
            for (Time t = 0; t < end; ++t) {
                if (domain.edge_collides_interior(i, pi.at(t), pi.at(t + 1), j, pj.at(t), pj.at(t + 1), m)) {
                    add(ViolationKind::EdgeConflict, i, j, t, "agents collide while moving" + time_text(t));
                }
            }
        }
    }
    return report;
}

int motion_count(const Path& path) {
    int moves = 0;
    for (std::size_t t = 1; t < path.steps.size(); ++t) moves += path.steps[t] != path.steps[t - 1];
    return moves;
}

namespace {

double quick_cost(const Path& p, const Domain& domain) {
    const Time arrival = final_arrival(p, domain.goal(p.agent));
    double c = 0.0;
    for (Time t = 1; t <= std::min(arrival, p.last_time()); ++t) c += domain.transition_cost(p.steps[t - 1], p.steps[t]);
    return c;
}

/// Staircase of unit joint moves following the straight line from `from` to
/// `to`, padded with waits at `to` to `steps` transitions.
std::optional<std::vector<Configuration>> staircase(const Configuration& from, const Configuration& to, int steps) {
    const std::size_t dims = from.size();
    long total = 0;
    for (std::size_t d = 0; d < dims; ++d) total += std::abs(to[d] - from[d]);
    if (total > steps) return std::nullopt;
    std::vector<Configuration> out{from};
    Configuration cur = from;
    std::vector<long> done(dims, 0);
    for (long k = 1; k <= total; ++k) {
        std::size_t best = dims;
        long best_lag = 0;
        for (std::size_t d = 0; d < dims; ++d) {
            const long span = std::abs(to[d] - from[d]);
            if (done[d] >= span) continue;
            const long lag = span * k - done[d] * total;
            if (best == dims || lag > best_lag) {
                best = d;
                best_lag = lag;
            }
        }
        cur[best] += to[best] > from[best] ? 1 : -1;
        ++done[best];
        out.push_back(cur);
    }
    while (static_cast<int>(out.size()) < steps + 1) out.push_back(to);
    return out;
}

bool segment_ok(const Domain& domain, const Solution& sol, AgentId a, const std::vector<Configuration>& seg, Time s) {
    const int m = domain.check_substeps();
    for (std::size_t k = 0; k + 1 < seg.size(); ++k) {
        if (!domain.transition_valid(a, seg[k], seg[k + 1], m)) return false;
    }
    for (AgentId b = 0; b < static_cast<AgentId>(sol.size()); ++b) {
        if (b == a || !domain.may_interact(a, b)) continue;
        const Path& other = sol[b];
        for (std::size_t k = 0; k < seg.size(); ++k) {
            const Time t = s + static_cast<Time>(k);
            if (domain.agents_collide(a, seg[k], b, other.at(t))) return false;
            if (k + 1 < seg.size() &&
                domain.edge_collides_interior(a, seg[k], seg[k + 1], b, other.at(t), other.at(t + 1), m)) {
                return false;
            }
        }
    }
    return true;
}

void trim_tail(Path& p) {
    while (p.steps.size() > 1 && p.steps.back() == p.steps[p.steps.size() - 2]) p.steps.pop_back();
}

bool improve_once(Solution& sol, const Domain& domain, AgentId a) {
    Path& p = sol[a];
    const Time last = p.last_time();
    const auto score = std::make_tuple(quick_cost(p, domain), motion_count(p));
    for (Time len = last; len >= 2; --len) {
        for (Time s = 0; s + len <= last; ++s) {
            const Time e = s + len;
            auto seg = staircase(p.steps[s], p.steps[e], len);
            if (!seg || std::equal(seg->begin(), seg->end(), p.steps.begin() + s)) continue;
            Path candidate = p;
            std::copy(seg->begin(), seg->end(), candidate.steps.begin() + s);
            trim_tail(candidate);
            if (std::make_tuple(quick_cost(candidate, domain), motion_count(candidate)) >= score) continue;
            if (!segment_ok(domain, sol, a, *seg, s)) continue;
            p = std::move(candidate);
            return true;
        }
    }
    return false;
}

}  // namespace

Solution shortcut(const Solution& solution, const Domain& domain, int passes) {
    check_shape(domain, solution);
    Solution sol = solution;
    for (int pass = 0; pass < passes; ++pass) {
        bool changed = false;
        for (AgentId a = 0; a < static_cast<AgentId>(sol.size()); ++a) {
            while (improve_once(sol, domain, a)) changed = true;
        }
        if (!changed) break;
    }
    return sol;
}

}  // namespace gecbs
