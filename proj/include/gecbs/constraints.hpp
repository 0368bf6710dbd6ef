#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gecbs/core.hpp"
#include "gecbs/domain.hpp"

namespace gecbs {

enum class MenuKind { Complete, Sphere, Avoidance, StepPriority, Priority };

const char* to_string(MenuKind k);

/// One way of resolving a conflict. Each entry produces a symmetric pair of
/// constraints and owns one focal queue in the generalized solver.
struct MenuEntry {
    MenuKind kind = MenuKind::Complete;
    double radius = 0.0;                                // Sphere only
    std::optional<std::pair<double, double>> prior;     // DTS (alpha, beta)

    std::string name() const;
    bool complete() const { return kind == MenuKind::Complete; }

    static MenuEntry complete_entry() { return {}; }
    static MenuEntry sphere(double r) { return {MenuKind::Sphere, r, std::nullopt}; }
    static MenuEntry of(MenuKind k) { return {k, 0.0, std::nullopt}; }
    /// Parses "complete", "avoidance", "step-priority", "priority", "sphere(R)".
    static MenuEntry parse(const std::string& text);

    friend bool operator==(const MenuEntry& a, const MenuEntry& b) {
        return a.kind == b.kind && a.radius == b.radius && a.prior == b.prior;
    }
};

/// Ordered constraint types used on every expansion; Complete is slot 0.
class ConstraintMenu {
public:
    /// Throws InvalidInput when Complete is missing or sphere radii are invalid.
    explicit ConstraintMenu(std::vector<MenuEntry> entries);
    static ConstraintMenu complete_only();
    /// A menu holding a single incomplete type in place of Complete; it carries
    /// no completeness or bound guarantee.
    static ConstraintMenu substitution(MenuEntry entry);

    const std::vector<MenuEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool has_complete() const { return !entries_.empty() && entries_.front().complete(); }
    /// Number of enabled incomplete types.
    int incomplete_count() const;
    /// Children generated per expansion (2K + 2 with Complete present).
    int branching() const { return 2 * static_cast<int>(entries_.size()); }

    friend bool operator==(const ConstraintMenu&, const ConstraintMenu&) = default;

private:
    ConstraintMenu() = default;
    std::vector<MenuEntry> entries_;
};

struct ConstraintPair {
    std::size_t slot = 0;  // menu index
    Constraint for_i;
    Constraint for_j;
};

/// One symmetric pair per menu entry, in menu order.
std::vector<ConstraintPair> make_constraints(const Conflict& conflict, const ConstraintMenu& menu);
ConstraintPair make_constraint_pair(const Conflict& conflict, const MenuEntry& entry, std::size_t slot);

struct DisjunctiveCheck {
    bool confirmed = true;
    long pairs_checked = 0;
    // Counterexample: configurations (plus successors for edge-scoped constraints).
    std::vector<Configuration> witness_i;
    std::vector<Configuration> witness_j;
};

/// Searches for a conflict-free pair in which each agent violates its own
/// constraint. Grids are enumerated exhaustively; arms are sampled up to
/// `sample_budget` pairs. `paths` resolves step-priority and priority
/// constraints and may be empty otherwise.
DisjunctiveCheck mutually_disjunctive_check(const Constraint& c_i, const Constraint& c_j, const Domain& domain,
                                            long sample_budget, std::uint64_t seed = 1,
                                            const std::vector<const Path*>& paths = {});

/// True when both constraints bind the same agent and forbid exactly the same
/// configurations and transitions. Decided by enumeration, so the answer is
/// false whenever the agent has more than `max_states` configurations or either
/// constraint lacks a time scope.
bool same_effect(const Constraint& a, const Constraint& b, const Domain& domain,
                 const std::vector<const Path*>& paths = {}, StateId max_states = 1024);

}  // namespace gecbs
