#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gecbs/dts.hpp"
#include "gecbs/verify.hpp"
#include "helpers.hpp"

using namespace gecbs;
using testing::grid;

namespace {

/// Two agents crossing the center of a 5x5 grid at t = 2.
std::unique_ptr<GridDomain> crossing() { return grid(5, 5, {}, {{0, 2}, {2, 0}}, {{4, 2}, {2, 4}}); }

SolverConfig config(const std::string& algo, double w = 1.3) {
    SolverConfig c;
    c.algorithm = AlgorithmSpec::parse(algo);
    c.w = w;
    c.menu = testing::grid_menu();
    c.seed = 42;
    c.timeout_ms = 60000;
    return c;
}

SolverResult without_runtime(SolverResult r) {
    r.stats.runtime_ms = 0.0;
    return r;
}

CTNode node_with(long id, double lb, double cost, int conflicts) {
    CTNode n;
    n.id = id;
    n.lb = lb;
    n.cost = cost;
    n.conflicts = std::make_shared<const std::vector<Conflict>>(static_cast<std::size_t>(conflicts));
    return n;
}

}  // namespace

TEST_CASE("DTS selection is reproducible for a seed") {
    DynamicThompsonSampler a({{1, 1}, {1, 1}}, 10, 5);
    DynamicThompsonSampler b({{1, 1}, {1, 1}}, 10, 5);
    std::vector<std::size_t> sa, sb;
    for (int k = 0; k < 200; ++k) {
        sa.push_back(a.sample());
        sb.push_back(b.sample());
    }
    CHECK(sa == sb);
    CHECK(std::count(sa.begin(), sa.end(), 0) > 50);
    CHECK(std::count(sa.begin(), sa.end(), 1) > 50);
}

TEST_CASE("DTS cap holds while rewarding one arm") {
    DynamicThompsonSampler d({{1, 1}, {1, 1}}, 10, 1);
    for (int k = 0; k < 8; ++k) {
        d.reward(0);
        CHECK(d.alpha(0) + d.beta(0) <= 10.0 + 1e-12);
        CHECK(d.alpha(0) >= 1.0);
        CHECK(d.beta(0) >= 1.0);
    }
    CHECK(d.alpha(0) > d.beta(0));
    CHECK(d.alpha(1) == 1.0);
    for (int k = 0; k < 50; ++k) d.penalize(0);
    CHECK(d.beta(0) > d.alpha(0));
    CHECK(d.alpha(0) >= 1.0);
    CHECK(d.alpha(0) + d.beta(0) <= 10.0 + 1e-12);
}

TEST_CASE("DTS prefers the better arm") {
    DynamicThompsonSampler d({{9, 1}, {1, 9}}, 10, 2024);
    int zero = 0;
    for (int k = 0; k < 10000; ++k) zero += d.sample() == 0;
    CHECK(zero > 9500);
}

TEST_CASE("DTS validates its arguments") {
    CHECK_THROWS_AS(DynamicThompsonSampler({}, 10, 1), Error);
    CHECK_THROWS_AS(DynamicThompsonSampler({{1, 1}}, 1.5, 1), Error);
    CHECK_THROWS_AS(DynamicThompsonSampler({{0.5, 1}}, 10, 1), Error);
    DynamicThompsonSampler big({{30, 10}}, 10, 1);
    CHECK(big.alpha(0) + big.beta(0) <= 10.0 + 1e-12);
    CHECK(big.alpha(0) == doctest::Approx(7.5));
}

TEST_CASE("find_conflicts") {
    SUBCASE("disjoint paths") {
        auto d = grid(5, 5, {}, {{0, 0}, {4, 4}}, {{0, 4}, {4, 0}});
        Solution s{Path{0, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}}, Path{1, {{4, 4}, {4, 3}, {4, 2}, {4, 1}, {4, 0}}}};
        CHECK(find_conflicts(s, *d).empty());
    }
    SUBCASE("one shared cell at the same time") {
        auto d = crossing();
        Solution s{Path{0, {{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}}}, Path{1, {{2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}}}};
        auto c = find_conflicts(s, *d);
        REQUIRE(c.size() == 1);
        CHECK(c[0].kind == ConflictKind::Vertex);
        CHECK(c[0].time == 2);
        CHECK(c[0].agent_i == 0);
        CHECK(c[0].agent_j == 1);
        CHECK(c[0].point == Point2{2.5, 2.5});
        CHECK(c[0].configs_i == std::vector<Configuration>{{2, 2}});
    }
    SUBCASE("swap is an edge conflict, goal padding is honoured, order is by time") {
        auto d = grid(4, 2, {}, {{0, 0}, {1, 0}, {3, 1}}, {{1, 0}, {0, 0}, {2, 0}});
        Solution s{Path{0, {{0, 0}, {1, 0}}}, Path{1, {{1, 0}, {0, 0}}}, Path{2, {{3, 1}, {3, 0}, {2, 0}}}};
        auto c = find_conflicts(s, *d);
        REQUIRE(c.size() == 1);
        CHECK(c[0].kind == ConflictKind::Edge);
        CHECK(c[0].time == 0);
        CHECK(c[0].point == Point2{1.0, 0.5});
        Solution late{Path{0, {{0, 0}}}, Path{1, {{3, 0}, {2, 0}, {1, 0}, {0, 0}, {0, 1}}}, Path{2, {{3, 1}, {2, 1}}}};
        auto d2 = grid(4, 2, {}, {{0, 0}, {3, 0}, {3, 1}}, {{0, 0}, {0, 1}, {2, 1}});
        auto c2 = find_conflicts(late, *d2);
        REQUIRE(c2.size() == 1);
        CHECK(c2[0].time == 3);
        CHECK(c2[0].kind == ConflictKind::Vertex);
    }
    SUBCASE("arm crossing mid-transition") {
        const Point2 mid{0.9 * std::cos(0.3), 0.9 * std::sin(0.3)};
        PlanarArmDomain d({testing::arm({0, 0}, 0, {1.0}), testing::arm(mid, 0.3, {0.01})}, {}, 0.6, {{0}, {0}},
                          {{1}, {0}});
        Solution s{Path{0, {{0}, {1}}}, Path{1, {{0}}}};
        auto c = find_conflicts(s, d);
        REQUIRE(c.size() == 1);
        CHECK(c[0].kind == ConflictKind::Edge);
        CHECK(c[0].time == 0);
        CHECK(c[0].configs_i == std::vector<Configuration>{{0}, {1}});
        CHECK(c[0].configs_j == std::vector<Configuration>{{0}, {0}});
        CHECK(std::hypot(c[0].point.x - mid.x, c[0].point.y - mid.y) < 0.1);
    }
}

TEST_CASE("rho tilde") {
    CTNode root;
    root.slot_counts = {0, 0, 0};
    CHECK(rho_tilde(root, 1) == 1.0);
    CTNode n;
    n.slot_counts = {1, 3, 0};
    CHECK(rho_tilde(n, 1) == doctest::Approx(0.25));
    CHECK(rho_tilde(n, 2) == doctest::Approx(1.0));
    CHECK(rho_tilde(n, 0) == doctest::Approx(0.75));
}

TEST_CASE("focal queue membership follows the bound") {
    FocalQueueSet q(1.2, {[](const CTNode& n) { return FocalKey{{n.cost, 0, 0}, n.id}; },
                          [](const CTNode& n) { return FocalKey{{static_cast<double>(n.conflict_count()), 0, 0}, n.id}; }});
    auto a = node_with(1, 10, 12, 5);
    auto b = node_with(2, 11, 11, 9);
    auto c = node_with(3, 12, 20, 0);
    q.push(&a);
    q.push(&b);
    q.push(&c);
    CHECK(q.min_lb() == 10);
    CHECK(q.top(0) == &b);
    CHECK(q.top(1) == &a);
    CHECK(q.in_focal(1));
    CHECK(q.in_focal(2));
    CHECK_FALSE(q.in_focal(3));
    CHECK(q.bound() == doctest::Approx(12.0));
    q.erase(&a);
    CHECK(q.top(1) == &b);
    CHECK(q.focal_size(1) == 1);
    auto d = node_with(4, 9, 15, 0);
    q.push(&d);
    CHECK(q.top(0) == &b);
    CHECK(q.last_fallback());
    CHECK(q.focal_size(0) == 0);
    q.erase(&d);
    CHECK(q.top(1) == &b);
    CHECK_FALSE(q.last_fallback());
    CHECK(q.size() == 2);
    CHECK_THROWS_AS(q.push(&b), Error);
}

TEST_CASE("algorithm names") {
    for (const char* name : {"cbs", "ecbs", "pp", "ac-ecbs", "ac-ecbs-lazy", "gen-ecbs", "gen-cbs", "ecbs-sub:avoidance",
                             "ecbs-sub:sphere(L)", "ecbs-sub:sphere(0.5)", "ecbs-sub:step-priority"}) {
        CHECK(AlgorithmSpec::parse(name).name() == name);
    }
    CHECK_THROWS_AS(AlgorithmSpec::parse("astar"), Error);
    CHECK_THROWS_AS(AlgorithmSpec::parse("ecbs-sub:cube"), Error);
}

TEST_CASE("conflict-free root is returned without expansions") {
    auto d = grid(5, 5, {}, {{0, 0}, {4, 4}}, {{0, 4}, {4, 0}});
    for (const char* algo : {"cbs", "ecbs", "ac-ecbs", "ac-ecbs-lazy", "gen-ecbs", "gen-cbs"}) {
        auto r = solve(*d, config(algo));
        REQUIRE(r.status == SolveStatus::Solved);
        CHECK(r.stats.hl_expansions == 0);
        CHECK(r.stats.cost == 8);
        for (const auto& q : r.stats.queues) {
            CHECK(q.rewards == 0);
            CHECK(q.penalties == 0);
        }
    }
    auto r = solve(*d, config("gen-ecbs"));
    CHECK(r.stats.queues.size() == 6);
    CHECK(r.stats.queues[4].alpha == 1.0);
}

TEST_CASE("lazy walk-through: six lazy children, evaluated before expansion") {
    auto d = crossing();
    SolverConfig c = config("gen-ecbs", 1.0);
    c.menu = ConstraintMenu({MenuEntry::complete_entry(), MenuEntry::sphere(1.0), MenuEntry::sphere(1.5)});
    struct Event {
        SearchEvent kind;
        long id;
        bool evaluated;
    };
    std::vector<Event> events;
    std::map<long, double> lb_of;
    bool conflicts_consistent = true;
    c.observer = [&](SearchEvent e, const CTNode& n, std::size_t) {
        events.push_back({e, n.id, n.evaluated()});
        if (e == SearchEvent::Evaluated) {
            std::vector<const Path*> ptrs;
            for (const auto& p : n.paths) ptrs.push_back(p.get());
            conflicts_consistent = conflicts_consistent && *n.conflicts == find_conflicts(ptrs, *d);
            if (n.parent) CHECK(n.lb >= lb_of.at(*n.parent));
            lb_of[n.id] = n.lb;
        }
    };
    auto r = solve(*d, c);
    REQUIRE(r.status == SolveStatus::Solved);
    CHECK(conflicts_consistent);
    REQUIRE(events.size() >= 10);
    CHECK(events[0].kind == SearchEvent::Generated);
    CHECK(events[1].kind == SearchEvent::Evaluated);
    CHECK(events[2].kind == SearchEvent::Expanded);
    CHECK(events[2].id == 0);
    std::set<long> children;
    for (int k = 3; k < 9; ++k) {
        CHECK(events[k].kind == SearchEvent::Generated);
        CHECK_FALSE(events[k].evaluated);
        children.insert(events[k].id);
    }
    CHECK(children.size() == 6);
    CHECK(events[9].kind == SearchEvent::Evaluated);
    CHECK(children.count(events[9].id));
    for (const auto& e : events)
        if (e.kind == SearchEvent::Expanded || e.kind == SearchEvent::Returned) CHECK(e.evaluated);
    CHECK(r.stats.cost == 9);
    CHECK(r.stats.ll_calls == r.stats.hl_evaluations + 1);
}

TEST_CASE("children whose constraint repeats a sibling's effect are skipped") {
    auto d = crossing();
    SolverConfig c = config("gen-ecbs", 1.0);
    c.menu = ConstraintMenu({MenuEntry::complete_entry(), MenuEntry::of(MenuKind::Avoidance), MenuEntry::sphere(0.5),
                             MenuEntry::sphere(1.0)});
    std::vector<std::size_t> root_children;
    c.observer = [&](SearchEvent e, const CTNode& n, std::size_t) {
        if (e == SearchEvent::Generated && n.parent == 0L) root_children.push_back(*n.last_slot);
    };
    auto r = solve(*d, c);
    CHECK(r.status == SolveStatus::Solved);
    CHECK(root_children == std::vector<std::size_t>{0, 0, 3, 3});
}

TEST_CASE("rho tilde bookkeeping on every generated node") {
    auto d = testing::hallway();
    SolverConfig c = config("gen-ecbs");
    std::vector<MenuEntry> entries = testing::grid_menu().entries();
    entries.push_back(MenuEntry::of(MenuKind::Priority));
    c.menu = ConstraintMenu(entries);
    long checked = 0;
    c.observer = [&](SearchEvent e, const CTNode& n, std::size_t) {
        if (e != SearchEvent::Generated) return;
        int total = 0;
        for (int x : n.slot_counts) total += x;
        CHECK(static_cast<std::size_t>(total) == n.constraints.size());
        if (total == 0) return;
        double sum = 0.0;
        for (std::size_t k = 1; k < n.slot_counts.size(); ++k) {
            const double r = rho_tilde(n, k);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
            sum += 1.0 - r;
        }
        CHECK(sum == doctest::Approx(static_cast<double>(total - n.slot_counts[0]) / total));
        ++checked;
    };
    auto r = solve(*d, c);
    CHECK(r.status == SolveStatus::Solved);
    CHECK(checked > 10);
}

TEST_CASE("solvers on the crossing and hallway instances") {
    for (auto* make : {+crossing, +testing::hallway}) {
        auto d = make();
        const auto optimum = testing::joint_optimum(*d);
        REQUIRE(optimum);
        auto cbs = solve(*d, config("cbs"));
        REQUIRE(cbs.status == SolveStatus::Solved);
        CHECK(cbs.stats.cost == *optimum);
        CHECK(testing::check(*d, *cbs.solution).empty());
        for (const char* algo : {"ecbs", "ac-ecbs", "ac-ecbs-lazy", "gen-ecbs", "gen-cbs"}) {
            for (double w : {1.0, 1.3, 1.5}) {
                auto r = solve(*d, config(algo, w));
                REQUIRE(r.status == SolveStatus::Solved);
                CHECK(r.stats.cost <= w * *optimum + 1e-9);
                CHECK(r.stats.lb <= *optimum + 1e-9);
                CHECK(testing::check(*d, *r.solution).empty());
                CHECK(verify(*d, *r.solution).clean());
            }
        }
        auto gen_cbs = solve(*d, config("gen-cbs"));
        CHECK(gen_cbs.stats.cost == *optimum);
    }
}

TEST_CASE("degenerate configurations coincide") {
    auto scenarios = generate_instances("grid-oracle", 15, 3);
    for (const auto& s : scenarios) {
        auto d = s.build_domain();
        auto cbs = solve(*d, config("cbs"));
        auto ecbs1 = solve(*d, config("ecbs", 1.0));
        REQUIRE(cbs.status == SolveStatus::Solved);
        REQUIRE(ecbs1.status == SolveStatus::Solved);
        CHECK(ecbs1.stats.cost == cbs.stats.cost);
        auto ecbs = solve_ecbs(*d, 1.3);
        auto ac = solve_ac_ecbs(*d, 1.3, ConstraintMenu::complete_only(), false);
        CHECK(without_runtime(ecbs) == without_runtime(ac));
    }
}

TEST_CASE("solves are deterministic for a seed") {
    auto scenarios = generate_instances("grid-oracle", 10, 8);
    for (const auto& s : scenarios) {
        auto d = s.build_domain();
        for (const char* algo : {"gen-ecbs", "ac-ecbs-lazy", "pp", "ecbs-sub:sphere(S)"}) {
            auto a = solve(*d, config(algo));
            auto b = solve(*d, config(algo));
            CHECK(without_runtime(a) == without_runtime(b));
        }
    }
}

TEST_CASE("substitution solver resolves sphere aliases against the menu") {
    auto d = crossing();
    for (auto [alias, radius] : {std::pair{"S", 0.5}, std::pair{"M", 1.0}, std::pair{"L", 1.5}}) {
        SolverConfig c = config(std::string("ecbs-sub:sphere(") + alias + ")", 1.0);
        std::set<double> radii;
        c.observer = [&](SearchEvent e, const CTNode& n, std::size_t) {
            if (e != SearchEvent::Generated || n.constraints.empty()) return;
            const auto last = n.constraints.to_vector().back();
            REQUIRE(last.type == ConstraintType::Sphere);
            radii.insert(std::get<SpherePayload>(last.payload).radius);
        };
        solve(*d, c);
        CHECK(radii == std::set<double>{radius});
    }
    SolverConfig bare = config("ecbs-sub:sphere(L)");
    bare.menu = ConstraintMenu::complete_only();
    CHECK_THROWS_AS(solve(*d, bare), Error);
}

TEST_CASE("prioritized planning") {
    SUBCASE("independent agents get individually optimal paths") {
        auto d = grid(5, 5, {}, {{0, 0}, {4, 4}}, {{0, 4}, {4, 0}});
        auto r = solve_pp(*d, {}, 0, 1);
        REQUIRE(r.status == SolveStatus::Solved);
        CHECK(r.stats.cost == 8);
    }
    SUBCASE("hallway swap fails for every order") {
        auto d = testing::hallway();
        for (auto order : {std::vector<AgentId>{0, 1}, std::vector<AgentId>{1, 0}}) {
            auto r = solve_pp(*d, order, 0, 1);
            CHECK(r.status == SolveStatus::Exhausted);
            CHECK_FALSE(r.solution);
        }
    }
    SUBCASE("order must be a permutation") {
        auto d = testing::hallway();
        CHECK_THROWS_AS(solve_pp(*d, {0, 0}, 0, 1), Error);
    }
    SUBCASE("retries reshuffle the order") {
        auto d = grid(3, 3, {{1, 0}, {1, 2}}, {{0, 1}, {1, 1}}, {{2, 1}, {0, 0}});
        auto r = solve_pp(*d, {}, 10, 3);
        CHECK(r.status == SolveStatus::Solved);
        CHECK(testing::check(*d, *r.solution).empty());
    }
}

TEST_CASE("budgets") {
    auto d = grid(2, 1, {}, {{0, 0}, {1, 0}}, {{1, 0}, {0, 0}});
    SolverConfig c = config("cbs");
    c.max_expansions = 50;
    auto r = solve(*d, c);
    CHECK(r.status == SolveStatus::Timeout);
    CHECK(r.stats.hl_expansions == 50);
    c.timeout_ms = 0.0;
    c.max_expansions = 1000000;
    CHECK(solve(*d, c).status == SolveStatus::Timeout);
    SolverConfig bad = config("ecbs", 0.5);
    CHECK_THROWS_AS(solve(*d, bad), Error);
}
