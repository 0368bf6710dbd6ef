#include "gecbs/core.hpp"

#include <algorithm>
#include <string>

#include "gecbs/domain.hpp"

namespace gecbs {

Configuration::Configuration(std::initializer_list<int> coords) : Configuration(std::vector<int>(coords)) {}

Configuration::Configuration(const std::vector<int>& coords) {
    if (coords.size() > kMaxDims) {
        throw Error(ErrorCode::InvalidInput,
                    "configuration has " + std::to_string(coords.size()) + " coordinates, max is 8");
    }
    std::copy(coords.begin(), coords.end(), coords_.begin());
    size_ = static_cast<std::uint8_t>(coords.size());
}

bool operator==(const Configuration& a, const Configuration& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
}

bool operator<(const Configuration& a, const Configuration& b) noexcept {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t ConfigurationHash::operator()(const Configuration& q) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int c : q) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(c));
        h *= 1099511628211ull;
    }
    return h ^ q.size();
}

const char* to_string(ConstraintType t) {
    switch (t) {
        case ConstraintType::Vertex: return "vertex";
        case ConstraintType::Edge: return "edge";
        case ConstraintType::Sphere: return "sphere";
        case ConstraintType::Avoidance: return "avoidance";
        case ConstraintType::StepPriority: return "step-priority";
        case ConstraintType::Priority: return "priority";
    }
    return "?";
}

std::optional<ConstraintType> constraint_type_from_string(const std::string& s) {
    for (auto t : {ConstraintType::Vertex, ConstraintType::Edge, ConstraintType::Sphere, ConstraintType::Avoidance,
                   ConstraintType::StepPriority, ConstraintType::Priority}) {
        if (s == to_string(t)) return t;
    }
    return std::nullopt;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::Timeout: return "timeout";
        case SolveStatus::Exhausted: return "exhausted";
    }
    return "?";
}

Constraint Constraint::vertex(AgentId agent, Time t, Configuration q) {
    return {agent, ConstraintType::Vertex, t, false, VertexPayload{q}};
}

Constraint Constraint::edge(AgentId agent, Time t, Configuration from, Configuration to) {
    return {agent, ConstraintType::Edge, t, true, EdgePayload{from, to}};
}

Constraint Constraint::sphere(AgentId agent, Time t, bool on_edge, Point2 center, double radius) {
    return {agent, ConstraintType::Sphere, t, on_edge, SpherePayload{center, radius}};
}

Constraint Constraint::avoidance(AgentId agent, Time t, AgentId other, std::vector<Configuration> snapshot) {
    bool on_edge = snapshot.size() == 2;
    return {agent, ConstraintType::Avoidance, t, on_edge, AvoidancePayload{other, std::move(snapshot)}};
}

Constraint Constraint::step_priority(AgentId agent, Time t, bool on_edge, AgentId other) {
    return {agent, ConstraintType::StepPriority, t, on_edge, StepPriorityPayload{other}};
}

Constraint Constraint::priority(AgentId agent, AgentId other) {
    return {agent, ConstraintType::Priority, std::nullopt, false, PriorityPayload{other}};
}

ConstraintList ConstraintList::with(Constraint c) const {
    ConstraintList out;
    out.head_ = std::make_shared<const Cell>(Cell{std::move(c), head_});
    out.size_ = size_ + 1;
    return out;
}

std::vector<Constraint> ConstraintList::to_vector() const {
    std::vector<Constraint> out;
    out.reserve(size_);
    for (auto cell = head_; cell; cell = cell->next) out.push_back(cell->value);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<const Constraint*> ConstraintList::for_agent(AgentId agent) const {
    std::vector<const Constraint*> out;
    for (auto cell = head_.get(); cell; cell = cell->next.get()) {
        if (cell->value.agent == agent) out.push_back(&cell->value);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Time final_arrival(const Path& path, const Configuration& goal) {
    if (path.steps.empty()) return 0;
    Time t = path.last_time();
    if (!(path.steps.back() == goal)) return t;
    while (t > 0 && path.steps[t - 1] == goal) --t;
    return t;
}

double path_cost(const Path& path, const Domain& domain) {
    if (path.steps.empty()) throw Error(ErrorCode::MalformedPath, "empty path");
    if (path.agent < 0 || path.agent >= domain.num_agents()) {
        throw Error(ErrorCode::MalformedPath, "path agent id out of range");
    }
    const int substeps = domain.check_substeps();
    double cost = 0.0;
    const Time arrival = final_arrival(path, domain.goal(path.agent));
    for (Time t = 1; t <= path.last_time(); ++t) {
        const auto& a = path.steps[t - 1];
        const auto& b = path.steps[t];
        if (!domain.transition_valid(path.agent, a, b, substeps)) {
            throw Error(ErrorCode::MalformedPath, "invalid transition at t=" + std::to_string(t));
        }
        if (t <= arrival) cost += domain.transition_cost(a, b);
    }
    return cost;
}

double sum_of_costs(const Solution& solution, const Domain& domain) {
    if (static_cast<int>(solution.size()) != domain.num_agents()) {
        throw Error(ErrorCode::MalformedSolution, "solution must contain one path per agent");
    }
    std::vector<bool> seen(solution.size(), false);
    double total = 0.0;
    for (const auto& p : solution) {
        if (p.agent < 0 || p.agent >= domain.num_agents() || seen[p.agent]) {
            throw Error(ErrorCode::MalformedSolution, "missing or duplicate agent in solution");
        }
        seen[p.agent] = true;
        total += path_cost(p, domain);
    }
    return total;
}

}  // namespace gecbs
