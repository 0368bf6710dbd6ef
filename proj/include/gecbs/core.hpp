#pragma once

// Domain-independent data model shared by every solver: configurations,
// paths, conflicts, constraints and solver results.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gecbs {

enum class ErrorCode {
    InvalidInput = 2,
    MalformedPath,
    MalformedSolution,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

using AgentId = int;
using Time = int;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// An agent-local state: a grid cell (x, y) or one joint index per arm joint.
/// Integer coordinates keep hashing and equality exact.
class Configuration {
public:
    static constexpr std::size_t kMaxDims = 8;

    Configuration() = default;
    Configuration(std::initializer_list<int> coords);
    explicit Configuration(const std::vector<int>& coords);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    int operator[](std::size_t i) const { return coords_[i]; }
    int& operator[](std::size_t i) { return coords_[i]; }
    const int* begin() const noexcept { return coords_.data(); }
    const int* end() const noexcept { return coords_.data() + size_; }
    std::vector<int> to_vector() const { return {begin(), end()}; }

    friend bool operator==(const Configuration& a, const Configuration& b) noexcept;
    friend bool operator<(const Configuration& a, const Configuration& b) noexcept;

private:
    std::array<int, kMaxDims> coords_{};
    std::uint8_t size_ = 0;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& q) const noexcept;
};

struct Path {
    AgentId agent = 0;
    std::vector<Configuration> steps;

    /// Configuration at time t; agents remain at their final configuration forever.
    const Configuration& at(Time t) const { return steps[std::min<std::size_t>(t, steps.size() - 1)]; }
    Time last_time() const { return static_cast<Time>(steps.size()) - 1; }

    friend bool operator==(const Path&, const Path&) = default;
};

using Solution = std::vector<Path>;

enum class ConflictKind { Vertex, Edge };

struct Conflict {
    ConflictKind kind = ConflictKind::Vertex;
    AgentId agent_i = 0;
    AgentId agent_j = 1;
    Time time = 0;
    // One configuration per agent for Vertex, two (t, t+1) for Edge.
    std::vector<Configuration> configs_i;
    std::vector<Configuration> configs_j;
    Point2 point;

    friend bool operator==(const Conflict&, const Conflict&) = default;
};

enum class ConstraintType { Vertex, Edge, Sphere, Avoidance, StepPriority, Priority };

const char* to_string(ConstraintType t);
std::optional<ConstraintType> constraint_type_from_string(const std::string& s);

struct VertexPayload {
    Configuration q;
    friend bool operator==(const VertexPayload&, const VertexPayload&) = default;
};
struct EdgePayload {
    Configuration from;
    Configuration to;
    friend bool operator==(const EdgePayload&, const EdgePayload&) = default;
};
struct SpherePayload {
    Point2 center;
    double radius = 0.0;
    friend bool operator==(const SpherePayload&, const SpherePayload&) = default;
};
struct AvoidancePayload {
    AgentId other = 0;
    // Snapshot of the other agent's conflicting configuration(s): one for a
    // vertex-scoped constraint, the transition endpoints for an edge-scoped one.
    std::vector<Configuration> snapshot;
    friend bool operator==(const AvoidancePayload&, const AvoidancePayload&) = default;
};
struct StepPriorityPayload {
    AgentId other = 0;
    friend bool operator==(const StepPriorityPayload&, const StepPriorityPayload&) = default;
};
struct PriorityPayload {
    AgentId other = 0;
    friend bool operator==(const PriorityPayload&, const PriorityPayload&) = default;
};

using ConstraintPayload = std::variant<VertexPayload, EdgePayload, SpherePayload, AvoidancePayload,
                                       StepPriorityPayload, PriorityPayload>;

/// A typed restriction on one agent. Time-scoped constraints apply either to
/// the configuration at `time` or, when `on_edge` is set, to the transition
/// over [time, time + 1]. Priority constraints carry no time.
struct Constraint {
    AgentId agent = 0;
    ConstraintType type = ConstraintType::Vertex;
    std::optional<Time> time;
    bool on_edge = false;
    ConstraintPayload payload;

    friend bool operator==(const Constraint&, const Constraint&) = default;

    static Constraint vertex(AgentId agent, Time t, Configuration q);
    static Constraint edge(AgentId agent, Time t, Configuration from, Configuration to);
    static Constraint sphere(AgentId agent, Time t, bool on_edge, Point2 center, double radius);
    static Constraint avoidance(AgentId agent, Time t, AgentId other, std::vector<Configuration> snapshot);
    static Constraint step_priority(AgentId agent, Time t, bool on_edge, AgentId other);
    static Constraint priority(AgentId agent, AgentId other);
};

/// Immutable singly linked list of constraints; children share their parent's tail.
class ConstraintList {
public:
    ConstraintList() = default;

    ConstraintList with(Constraint c) const;
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Constraints in insertion order (oldest first).
    std::vector<Constraint> to_vector() const;
    std::vector<const Constraint*> for_agent(AgentId agent) const;

private:
    struct Cell {
        Constraint value;
        std::shared_ptr<const Cell> next;
    };
    std::shared_ptr<const Cell> head_;
    std::size_t size_ = 0;
};

enum class SolveStatus { Solved, Timeout, Exhausted };

const char* to_string(SolveStatus s);

struct QueueStats {
    std::string name;
    double alpha = 1.0;
    double beta = 1.0;
    long rewards = 0;
    long penalties = 0;
    long selections = 0;
    friend bool operator==(const QueueStats&, const QueueStats&) = default;
};

struct SolverStats {
    double runtime_ms = 0.0;
    long hl_expansions = 0;
    long hl_evaluations = 0;
    long ll_calls = 0;
    long ll_expansions = 0;
    long nodes_generated = 0;
    double cost = 0.0;
    double lb = 0.0;
    std::vector<QueueStats> queues;
    friend bool operator==(const SolverStats&, const SolverStats&) = default;
};

struct SolverResult {
    SolveStatus status = SolveStatus::Exhausted;
    std::optional<Solution> solution;
    SolverStats stats;
    friend bool operator==(const SolverResult&, const SolverResult&) = default;
};

class Domain;

/// Sum of transition costs up to the final goal arrival; trailing waits at the
/// goal are free.
double path_cost(const Path& path, const Domain& domain);
double sum_of_costs(const Solution& solution, const Domain& domain);

/// First index from which the path stays at `goal`; the last index when the
/// path does not end at `goal`.
Time final_arrival(const Path& path, const Configuration& goal);

}  // namespace gecbs
