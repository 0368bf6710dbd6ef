#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gecbs/verify.hpp"
#include "helpers.hpp"

using namespace gecbs;
namespace fs = std::filesystem;

namespace {

Scenario grid_scenario() {
    Scenario s;
    s.name = "cross";
    s.domain = GridSpec{5, 5, {{0, 0}}};
    s.agents = {{{0, 2}, {4, 2}}, {{2, 0}, {2, 4}}};
    s.solver.seed = 7;
    return s;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gecbs_test_bench_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_kind(const VerifyReport& r, ViolationKind k) {
    for (const auto& v : r.violations)
        if (v.kind == k) return true;
    return false;
}

void expect_invalid(const json& j) {
    try {
        scenario_from_json(j);
        FAIL("accepted " << j.dump());
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInput);
    }
}

}  // namespace

TEST_CASE("scenario JSON round trip") {
    const Scenario s = grid_scenario();
    const json j = scenario_to_json(s);
    CHECK(scenario_to_json(scenario_from_json(j)) == j);
    for (const auto& g : generate_instances("arm4-cluttered", 2, 3)) {
        const json a = scenario_to_json(g);
        CHECK(scenario_to_json(scenario_from_json(a)) == a);
        CHECK(scenario_to_json(scenario_from_json(json::parse(to_pretty_json(a)))) == a);
    }
}

TEST_CASE("scenario parsing is strict") {
    const json good = scenario_to_json(grid_scenario());
    json j = good;
    j.erase("version");
    expect_invalid(j);
    j = good;
    j["version"] = 2;
    expect_invalid(j);
    j = good;
    j["extra"] = 1;
    expect_invalid(j);
    j = good;
    j["solver"]["unknown"] = true;
    expect_invalid(j);
    j = good;
    j["domain"]["width"] = "five";
    expect_invalid(j);
    j = good;
    j["domain"]["type"] = "torus";
    expect_invalid(j);
    j = good;
    j["solver"]["algorithm"] = "dijkstra";
    CHECK_THROWS_AS(scenario_from_json(j).solver_config(), Error);
    j = good;
    j["agents"][0]["start"] = json::array({0, 2, 1});
    CHECK_THROWS_AS(scenario_from_json(j).build_domain(), Error);
}

TEST_CASE("invalid endpoints are rejected") {
    Scenario s = grid_scenario();
    s.agents[0].start = {0, 0};
    CHECK_THROWS_AS(s.build_domain(), Error);
    s = grid_scenario();
    s.agents[0].goal = {5, 2};
    CHECK_THROWS_AS(s.build_domain(), Error);
    s = grid_scenario();
    s.agents[1].start = s.agents[0].start;
    CHECK_THROWS_AS(s.build_domain(), Error);
    s = grid_scenario();
    s.agents[1].goal = s.agents[0].goal;
    CHECK_THROWS_AS(s.build_domain(), Error);
    s = grid_scenario();
    s.agents.clear();
    CHECK_THROWS_AS(s.build_domain(), Error);
}

TEST_CASE("default menu") {
    const auto menu = default_menu(grid_scenario());
    REQUIRE(menu.size() == 6);
    CHECK(menu[0].complete());
    std::vector<double> radii;
    for (const auto& e : menu)
        if (e.kind == MenuKind::Sphere) radii.push_back(e.radius);
    CHECK(radii == std::vector<double>{0.5, 1.0, 1.5});
    const auto arm = default_menu(generate_instances("arm4-cluttered", 1, 1)[0]);
    radii.clear();
    for (const auto& e : arm)
        if (e.kind == MenuKind::Sphere) {
            radii.push_back(e.radius);
        }
    REQUIRE(radii.size() == 3);
    CHECK(radii[1] == doctest::Approx(3 * radii[0]));
    CHECK(radii[2] == doctest::Approx(6 * radii[0]));
}

TEST_CASE("verify catches corrupted solutions") {
    auto d = testing::grid(4, 3, {{1, 1}}, {{0, 0}, {3, 0}}, {{3, 0}, {0, 2}});
    Solution good{Path{0, {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 0}}},
                  Path{1, {{3, 0}, {3, 1}, {3, 2}, {2, 2}, {1, 2}, {0, 2}}}};
    REQUIRE(testing::check(*d, good).empty());
    CHECK(verify(*d, good).clean());

    Solution s = good;
    s[0].steps[2] = {2, 1};
    CHECK(has_kind(verify(*d, s), ViolationKind::Transition));
    s = good;
    s[0].steps[1] = {1, 1};
    s[0].steps[2] = {1, 1};
    CHECK(has_kind(verify(*d, s), ViolationKind::Configuration));
    s = good;
    s[1].steps.pop_back();
    CHECK(has_kind(verify(*d, s), ViolationKind::Endpoint));
    s = good;
    s[0].steps.front() = {1, 0};
    CHECK(has_kind(verify(*d, s), ViolationKind::Endpoint));
    s = good;
    s[1].steps = {{3, 0}, {3, 1}, {3, 1}, {3, 1}, {3, 1}, {3, 2}, {2, 2}, {1, 2}, {0, 2}};
    CHECK(testing::check(*d, s) == "vertex conflict");
    CHECK(has_kind(verify(*d, s), ViolationKind::VertexConflict));
    s = good;
    std::swap(s[0].steps[4], s[0].steps[5]);
    CHECK_FALSE(verify(*d, s).clean());

    Solution swap{Path{0, {{0, 0}, {1, 0}}}, Path{1, {{1, 0}, {0, 0}}}};
    auto d2 = testing::grid(2, 1, {}, {{0, 0}, {1, 0}}, {{1, 0}, {0, 0}});
    CHECK(has_kind(verify(*d2, swap), ViolationKind::EdgeConflict));
    CHECK_THROWS_AS(verify(*d, Solution{good[0]}), Error);
    Solution empty = good;
    empty[1].steps.clear();
    CHECK_THROWS_AS(verify(*d, empty), Error);
}

TEST_CASE("shortcut removes a detour and trailing waits") {
    auto d = testing::grid(3, 2, {}, {{0, 0}}, {{2, 0}});
    Solution detour{Path{0, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 0}, {2, 0}}}};
    const double before = sum_of_costs(detour, *d);
    const Solution after = shortcut(detour, *d, 2);
    CHECK(verify(*d, after).clean());
    CHECK(sum_of_costs(after, *d) < before);
    CHECK(sum_of_costs(after, *d) == 2);
    CHECK(after[0].steps.back() == Configuration{2, 0});
    CHECK(after[0].steps.size() == 3);
    CHECK(motion_count(after[0]) == 2);
    CHECK(shortcut(detour, *d, 0) == detour);
}

TEST_CASE("shortcut never worsens benchmark solutions") {
    for (const auto& s : generate_instances("grid-oracle", 12, 21)) {
        auto d = s.build_domain();
        auto r = solve(*d, s.solver_config());
        REQUIRE(r.solution);
        const auto sc = shortcut(*r.solution, *d, 3);
        CHECK(verify(*d, sc).clean());
        CHECK(sum_of_costs(sc, *d) <= r.stats.cost);
        for (std::size_t a = 0; a < sc.size(); ++a) CHECK(motion_count(sc[a]) <= motion_count((*r.solution)[a]));
    }
}

TEST_CASE("instance generation") {
    CHECK(generate_instances("grid-oracle", 0, 1).empty());
    const auto a = generate_instances("grid-oracle", 5, 11);
    const auto b = generate_instances("grid-oracle", 3, 11);
    const auto c = generate_instances("grid-oracle", 5, 12);
    REQUIRE(a.size() == 5);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(scenario_to_json(a[k]) == scenario_to_json(b[k]));
    CHECK(scenario_to_json(a[0]) != scenario_to_json(c[0]));
    for (const auto& s : a) {
        CHECK_NOTHROW(s.build_domain());
        CHECK(s.agents.size() >= 2);
        CHECK(s.agents.size() <= 3);
        CHECK(testing::joint_optimum(dynamic_cast<const GridDomain&>(*s.build_domain())));
    }
    for (const auto& s : generate_instances("arm4-cluttered", 3, 5)) {
        CHECK(s.agents.size() == 4);
        CHECK_NOTHROW(s.build_domain());
    }
    CHECK_THROWS_AS(generate_instances("no-such-template", 1, 1), Error);
    CHECK_THROWS_AS(generate_instances("grid-oracle", -1, 1), Error);
}

TEST_CASE("cell seeds") {
    CHECK(cell_seed(5, "cbs") == cell_seed(5, "cbs"));
    CHECK(cell_seed(5, "cbs") != cell_seed(5, "ecbs"));
    CHECK(cell_seed(6, "cbs") == cell_seed(5, "cbs") + 1);
}

TEST_CASE("aggregate arithmetic") {
    std::vector<RunRecord> recs(4);
    for (auto& r : recs) r.algo = "x";
    recs[0].success = true;
    recs[0].runtime_ms = 1.0;
    recs[0].cost = 10;
    recs[0].cost_shortcut = 8;
    recs[1].success = true;
    recs[1].runtime_ms = 3.0;
    recs[1].cost = 14;
    recs[1].cost_shortcut = 12;
    recs[2].runtime_ms = 100.0;
    recs[3].algo = "y";
    const auto rows = aggregate(recs, {"x", "y"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].algo == "x");
    CHECK(rows[0].runs == 3);
    CHECK(rows[0].successes == 2);
    CHECK(rows[0].success_pct == doctest::Approx(200.0 / 3.0));
    CHECK(rows[0].runtime_mean == doctest::Approx(2.0));
    CHECK(rows[0].runtime_std == doctest::Approx(std::sqrt(2.0)));
    CHECK(rows[0].cost_mean == doctest::Approx(12.0));
    CHECK(rows[0].cost_shortcut_mean == doctest::Approx(10.0));
    CHECK(rows[1].successes == 0);
    CHECK(rows[1].success_pct == 0.0);
    CHECK(aggregate_to_csv(rows).find("x,3,2,") != std::string::npos);
    CHECK(!aggregate_to_text(rows).empty());
}

TEST_CASE("results CSV") {
    const std::string header = "scenario,algo,success,runtime_ms,hl_expansions,ll_calls,cost,cost_shortcut,lb,subopt\n";
    CHECK(records_to_csv({}) == header);
    RunRecord r;
    r.scenario = "s";
    r.algo = "cbs";
    r.success = true;
    r.runtime_ms = 1.5;
    r.hl_expansions = 3;
    r.ll_calls = 7;
    r.cost = 12;
    r.cost_shortcut = 11;
    r.lb = 10;
    r.subopt = 1.2;
    const std::string csv = records_to_csv({r});
    REQUIRE(csv.rfind(header, 0) == 0);
    std::string row = csv.substr(header.size());
    CHECK(row.rfind("s,cbs,1,1.500,3,7,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 9);
}

TEST_CASE("benchmark cells") {
    const auto scenarios = generate_instances("grid-oracle", 4, 31);
    BenchOptions o;
    o.algorithms = {"cbs", "gen-ecbs", "pp"};
    o.jobs = 1;
    const auto report = run_benchmark(scenarios, o);
    REQUIRE(report.records.size() == 12);
    for (std::size_t k = 0; k < report.records.size(); ++k) {
        const auto& r = report.records[k];
        CHECK(r.scenario == scenarios[k / 3].name);
        CHECK(r.algo == o.algorithms[k % 3]);
        if (!r.success) continue;
        CHECK(r.verified);
        CHECK(r.cost_shortcut <= r.cost);
        REQUIRE(r.subopt);
        CHECK(*r.subopt == doctest::Approx(r.cost / r.lb));
        if (r.algo == "cbs") CHECK(*r.subopt == doctest::Approx(1.0));
        if (r.algo == "gen-ecbs") CHECK(*r.subopt <= 1.3 + 1e-9);
    }
    o.jobs = 3;
    const auto parallel = run_benchmark(scenarios, o);
    REQUIRE(parallel.records.size() == report.records.size());
    for (std::size_t k = 0; k < report.records.size(); ++k) {
        CHECK(parallel.records[k].cost == report.records[k].cost);
        CHECK(parallel.records[k].hl_expansions == report.records[k].hl_expansions);
        CHECK(parallel.records[k].solution == report.records[k].solution);
    }
    const json frames = frames_json(scenarios, report.records);
    std::size_t solved = 0;
    for (const auto& r : report.records) solved += r.success;
    CHECK(frames.at("runs").size() == solved);
    const auto& run0 = frames.at("runs").at(0);
    CHECK(run0.at("frames").at(0).at("agents").size() == scenarios[0].agents.size());

    BenchOptions bad = o;
    bad.algorithms = {"nope"};
    const auto failed = run_cell(scenarios[0], "nope", bad);
    CHECK_FALSE(failed.success);
    CHECK(!failed.error.empty());
}

TEST_CASE("run records") {
    const Scenario s = grid_scenario();
    RunDocument run = solve_scenario(s, {});
    REQUIRE(run.result.solution);
    CHECK(run.seed == 7);
    CHECK(run.algorithm == "gen-ecbs");
    CHECK(shortcut_run(run, 2));
    REQUIRE(run.shortcut);
    CHECK(run.shortcut->cost <= run.result.stats.cost);
    const json j = run_to_json(run);
    CHECK_FALSE(j.at("result").at("stats").contains("runtime_ms"));
    CHECK(run_to_json(run_from_json(j)) == j);

    const fs::path dir = scratch("runs");
    save_run(run, (dir / "a.json").string());
    const RunDocument again = solve_scenario(s, {});
    RunDocument again_sc = again;
    shortcut_run(again_sc, 2);
    save_run(again_sc, (dir / "b.json").string());
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(run_to_json(load_run((dir / "a.json").string())) == j);

    SolveOverrides o;
    o.algorithm = "cbs";
    o.seed = 3;
    const RunDocument cbs = solve_scenario(s, o);
    CHECK(cbs.algorithm == "cbs");
    CHECK(cbs.seed == 3);
    CHECK(cbs.result.stats.cost == 9);

    json broken = j;
    broken["result"]["solution"][0]["steps"] = json::array();
    CHECK_THROWS_AS(run_from_json(broken), Error);
    broken = j;
    broken["surprise"] = 0;
    CHECK_THROWS_AS(run_from_json(broken), Error);
}

TEST_CASE("scenario directories") {
    const fs::path dir = scratch("dir");
    const auto scenarios = generate_instances("grid-oracle", 3, 4);
    for (auto it = scenarios.rbegin(); it != scenarios.rend(); ++it)
        save_scenario(*it, (dir / (it->name + ".json")).string());
    std::ofstream(dir / "notes.txt") << "ignored";
    const auto loaded = load_scenario_dir(dir.string());
    REQUIRE(loaded.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(loaded[k].name == scenarios[k].name);
    CHECK_THROWS_AS(load_scenario_dir((dir / "missing").string()), Error);
    std::ofstream(dir / "zz.json") << "{ not json";
    CHECK_THROWS_AS(load_scenario_dir(dir.string()), Error);
}
