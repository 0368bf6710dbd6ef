#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gecbs/core.hpp"
#include "gecbs/domain.hpp"

namespace gecbs {

enum class ViolationKind { Endpoint, Configuration, Transition, VertexConflict, EdgeConflict };

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind = ViolationKind::Endpoint;
    AgentId agent = 0;
    std::optional<AgentId> other;
    Time time = 0;
    std::string message;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
};

/// Re-checks a solution from scratch: endpoints, per-configuration validity,
/// transitions, and pairwise collisions at every time step and at the 2M
/// interpolated sub-steps of every transition. Throws MalformedSolution when
/// the solution does not hold exactly one non-empty path per agent.
VerifyReport verify(const Domain& domain, const Solution& solution);

/// Number of transitions that are not waits.
int motion_count(const Path& path);

/// Replaces path segments by straight joint-index staircases of the same
/// duration (moves first, then waits) when the result stays static-free and
/// conflict-free, trying the longest segments first. Agents are processed in
/// order against the others' current paths; `passes` repeats the sweep.
/// Never increases cost or motion count.
Solution shortcut(const Solution& solution, const Domain& domain, int passes);

}  // namespace gecbs
