#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gecbs/bench.hpp"
#include "gecbs/domain.hpp"
#include "gecbs/generate.hpp"
#include "gecbs/highlevel.hpp"
#include "oracles.hpp"

namespace testing {

using gecbs::Configuration;

inline std::unique_ptr<gecbs::GridDomain> grid(int w, int h, std::vector<std::pair<int, int>> blocked,
                                               std::vector<Configuration> starts, std::vector<Configuration> goals) {
    return std::make_unique<gecbs::GridDomain>(w, h, std::move(blocked), std::move(starts), std::move(goals));
}

/// 7x2 hallway with a single side pocket at (3, 1); agents swap ends.
inline std::unique_ptr<gecbs::GridDomain> hallway() {
    return grid(7, 2, {{0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}}, {{0, 0}, {6, 0}}, {{5, 0}, {1, 0}});
}

inline gecbs::ConstraintMenu grid_menu() {
    using gecbs::MenuEntry;
    using gecbs::MenuKind;
    return gecbs::ConstraintMenu({MenuEntry::complete_entry(), MenuEntry::of(MenuKind::Avoidance),
                                  MenuEntry::of(MenuKind::StepPriority), MenuEntry::sphere(0.5), MenuEntry::sphere(1.0),
                                  MenuEntry::sphere(1.5)});
}

/// Single arm of `links` with base at `base`, angle `base_angle`, and wide joint limits.
inline gecbs::ArmSpec arm(gecbs::Point2 base, double base_angle, std::vector<double> links, int limit = 12) {
    gecbs::ArmSpec a;
    a.base = base;
    a.base_angle = base_angle;
    a.links = links;
    a.joint_limits.assign(links.size(), {-limit, limit});
    a.thickness = 0.05;
    return a;
}

inline std::vector<oracle::Cell> cells(const std::vector<Configuration>& qs) {
    std::vector<oracle::Cell> out;
    for (const auto& q : qs) out.push_back(oracle::cell(q));
    return out;
}

inline std::vector<std::vector<oracle::Cell>> cells(const gecbs::Solution& s) {
    std::vector<std::vector<oracle::Cell>> out;
    for (const auto& p : s) out.push_back(cells(p.steps));
    return out;
}

inline std::optional<int> joint_optimum(const gecbs::GridDomain& d) {
    return oracle::joint_astar(oracle::Grid(d), cells(d.starts()), cells(d.goals()));
}

inline std::string check(const gecbs::GridDomain& d, const gecbs::Solution& s) {
    return oracle::check_grid_solution(oracle::Grid(d), cells(d.starts()), cells(d.goals()), cells(s));
}

}  // namespace testing
