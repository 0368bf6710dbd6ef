#include "gecbs/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <numbers>
#include <random>
#include <set>

namespace gecbs {

namespace {

constexpr int kRejectionLimit = 1000;

std::mt19937_64 instance_rng(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

std::string instance_name(const std::string& tmpl, std::uint64_t seed, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%03d", index);
    return tmpl + "-s" + std::to_string(seed) + "-" + buf;
}

bool endpoints_valid(const Scenario& s) {
    try {
        s.build_domain();
        return true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidInput) throw;
        return false;
    }
}

bool grid_connected(int w, int h, const std::set<std::pair<int, int>>& blocked) {
    int free_cells = w * h - static_cast<int>(blocked.size());
    if (free_cells <= 0) return false;
    std::pair<int, int> first{-1, -1};
    for (int x = 0; x < w && first.first < 0; ++x)
        for (int y = 0; y < h; ++y)
            if (!blocked.count({x, y})) {
                first = {x, y};
                break;
            }
    std::set<std::pair<int, int>> seen{first};
    std::deque<std::pair<int, int>> queue{first};
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            const std::pair<int, int> c{x + dx, y + dy};
            if (c.first < 0 || c.second < 0 || c.first >= w || c.second >= h) continue;
            if (blocked.count(c) || !seen.insert(c).second) continue;
            queue.push_back(c);
        }
    }
    return static_cast<int>(seen.size()) == free_cells;
}

Scenario grid_oracle_instance(std::uint64_t seed, int index) {
    auto rng = instance_rng(seed, index);
    std::uniform_int_distribution<int> side(4, 6);
    std::uniform_int_distribution<int> agents_dist(2, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < kRejectionLimit; ++attempt) {
        const int w = side(rng);
        const int h = side(rng);
        const int n = agents_dist(rng);
        const double density = 0.1 + 0.15 * unit(rng);
        std::set<std::pair<int, int>> blocked;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y)
                if (unit(rng) < density) blocked.insert({x, y});
        if (!grid_connected(w, h, blocked)) continue;
        std::vector<std::pair<int, int>> free;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y)
                if (!blocked.count({x, y})) free.push_back({x, y});
        if (static_cast<int>(free.size()) < 2 * n) continue;
        std::shuffle(free.begin(), free.end(), rng);
        std::vector<std::pair<int, int>> goals(free.begin(), free.begin() + n);
        std::shuffle(free.begin(), free.end(), rng);
        Scenario s;
        s.name = instance_name("grid-oracle", seed, index);
        s.template_name = "grid-oracle";
        s.generator_seed = seed;
        s.domain = GridSpec{w, h, {blocked.begin(), blocked.end()}};
        for (int a = 0; a < n; ++a) {
            s.agents.push_back({Configuration{free[a].first, free[a].second}, Configuration{goals[a].first, goals[a].second}});
        }
        s.solver.seed = seed + static_cast<std::uint64_t>(index);
        if (endpoints_valid(s)) return s;
    }
    throw Error(ErrorCode::InvalidInput, "grid-oracle: rejection limit exceeded");
}

Point2 end_effector(const ArmSpec& arm, const Configuration& q, double delta) {
    Point2 p = arm.base;
    double angle = arm.base_angle;
    for (std::size_t k = 0; k < arm.links.size(); ++k) {
        angle += q[k] * delta;
        p = {p.x + arm.links[k] * std::cos(angle), p.y + arm.links[k] * std::sin(angle)};
    }
    return p;
}

bool statically_free(const ArmSpec& arm, const Configuration& q, double delta, const std::vector<Circle>& obstacles) {
    Point2 p = arm.base;
    double angle = arm.base_angle;
    for (std::size_t k = 0; k < arm.links.size(); ++k) {
        angle += q[k] * delta;
        const Point2 next{p.x + arm.links[k] * std::cos(angle), p.y + arm.links[k] * std::sin(angle)};
        for (const auto& c : obstacles) {
            if (geometry::point_segment_distance(c.center, {p, next}) <= arm.thickness + c.radius + geometry::kEps) {
                return false;
            }
        }
        p = next;
    }
    return true;
}

void for_each_config(const ArmSpec& arm, const std::function<void(const Configuration&)>& fn) {
    const std::size_t dims = arm.joint_limits.size();
    std::vector<int> idx(dims);
    for (std::size_t d = 0; d < dims; ++d) idx[d] = arm.joint_limits[d].first;
    while (true) {
        fn(Configuration(idx));
        std::size_t d = dims;
        while (d > 0) {
            --d;
            if (idx[d] < arm.joint_limits[d].second) {
                ++idx[d];
                break;
            }
            idx[d] = arm.joint_limits[d].first;
            if (d == 0) return;
        }
        if (dims == 0) return;
    }
}

}  // namespace

std::vector<std::string> builtin_templates() { return {"grid-oracle", "arm4-cluttered"}; }

InstanceTemplate arm4_cluttered_template() {
    constexpr double pi = std::numbers::pi;
    ArmSceneSpec scene;
    scene.delta = PlanarArmDomain::kDefaultDelta;
    scene.substeps = 4;
    const double base_dist = 1.5;
    const std::vector<std::pair<Point2, double>> bases{
        {{-base_dist, 0.0}, 0.0}, {{base_dist, 0.0}, pi}, {{0.0, -base_dist}, pi / 2}, {{0.0, base_dist}, -pi / 2}};
    for (const auto& [base, angle] : bases) {
        ArmSpec arm;
        arm.base = base;
        arm.base_angle = angle;
        arm.links = {0.6, 0.5, 0.4};
        arm.joint_limits = {{-5, 5}, {-7, 7}, {-7, 7}};
        arm.thickness = 0.05;
        scene.arms.push_back(arm);
    }
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0}) scene.obstacles.push_back({{0.75 * sx, 0.75 * sy}, 0.2});
    scene.obstacles.push_back({{0.0, 0.0}, 0.1});

    // End-effector bins: four shared ones around the centre and two private
    // ones in front of each base.
    std::vector<Point2> shared{{0.4, 0.0}, {-0.4, 0.0}, {0.0, 0.4}, {0.0, -0.4}};
    const double bin_radius = 0.15;

    InstanceTemplate tmpl;
    tmpl.name = "arm4-cluttered";
    tmpl.base.domain = scene;
    for (const auto& arm : scene.arms) {
        const Point2 dir{std::cos(arm.base_angle), std::sin(arm.base_angle)};
        const Point2 side{-dir.y, dir.x};
        std::vector<Point2> bins = shared;
        for (double s : {-1.0, 1.0}) {
            bins.push_back({arm.base.x + 0.8 * dir.x + 0.45 * s * side.x, arm.base.y + 0.8 * dir.y + 0.45 * s * side.y});
        }
        std::vector<Configuration> poses;
        for_each_config(arm, [&](const Configuration& q) {
            const Point2 ee = end_effector(arm, q, scene.delta);
            bool in_bin = false;
            for (const auto& b : bins) in_bin = in_bin || std::hypot(ee.x - b.x, ee.y - b.y) <= bin_radius;
            if (in_bin && statically_free(arm, q, scene.delta, scene.obstacles)) poses.push_back(q);
        });
        tmpl.pose_sets.push_back(std::move(poses));
    }
    return tmpl;
}

InstanceTemplate template_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "template must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "version" && key != "name" && key != "domain" && key != "pose_sets" && key != "solver") {
            throw Error(ErrorCode::InvalidInput, "unknown field '" + key + "' in template");
        }
    }
    if (!j.contains("pose_sets") || !j["pose_sets"].is_array()) {
        throw Error(ErrorCode::InvalidInput, "template needs a pose_sets array");
    }
    // Reuse the strict scenario reader for the shared blocks.
    json as_scenario{{"version", j.value("version", json(nullptr))},
                     {"name", j.value("name", json(nullptr))},
                     {"domain", j.value("domain", json(nullptr))},
                     {"agents", json::array()}};
    if (j.contains("solver")) as_scenario["solver"] = j["solver"];
    InstanceTemplate tmpl;
    tmpl.base = scenario_from_json(as_scenario);
    tmpl.name = tmpl.base.name;
    for (const auto& set : j["pose_sets"]) {
        if (!set.is_array() || set.empty()) throw Error(ErrorCode::InvalidInput, "each pose set must be a non-empty array");
        std::vector<Configuration> poses;
        for (const auto& q : set) poses.push_back(q.get<Configuration>());
        tmpl.pose_sets.push_back(std::move(poses));
    }
    if (tmpl.pose_sets.empty()) throw Error(ErrorCode::InvalidInput, "template has no agents");
    return tmpl;
}

std::vector<Scenario> generate_instances(const InstanceTemplate& tmpl, int count, std::uint64_t seed) {
    if (count < 0) throw Error(ErrorCode::InvalidInput, "count must be >= 0");
    for (const auto& set : tmpl.pose_sets) {
        if (set.size() < 2) throw Error(ErrorCode::InvalidInput, "template '" + tmpl.name + "' has a pose set with < 2 poses");
    }
    std::vector<Scenario> out;
    for (int index = 0; index < count; ++index) {
        auto rng = instance_rng(seed, index);
        bool done = false;
        for (int attempt = 0; attempt < kRejectionLimit && !done; ++attempt) {
            Scenario s = tmpl.base;
            s.name = instance_name(tmpl.name, seed, index);
            s.template_name = tmpl.name;
            s.generator_seed = seed;
            s.solver.seed = seed + static_cast<std::uint64_t>(index);
            s.agents.clear();
            for (const auto& set : tmpl.pose_sets) {
                std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
                const std::size_t a = pick(rng);
                std::size_t b = pick(rng);
                while (b == a) b = pick(rng);
                s.agents.push_back({set[a], set[b]});
            }
            if (endpoints_valid(s)) {
                out.push_back(std::move(s));
                done = true;
            }
        }
        if (!done) throw Error(ErrorCode::InvalidInput, "template '" + tmpl.name + "': rejection limit exceeded");
    }
    return out;
}

std::vector<Scenario> generate_instances(const std::string& name_or_path, int count, std::uint64_t seed) {
    if (count < 0) throw Error(ErrorCode::InvalidInput, "count must be >= 0");
    if (name_or_path == "grid-oracle") {
        std::vector<Scenario> out;
        for (int i = 0; i < count; ++i) out.push_back(grid_oracle_instance(seed, i));
        return out;
    }
    if (name_or_path == "arm4-cluttered") return generate_instances(arm4_cluttered_template(), count, seed);
    return generate_instances(template_from_json(read_json_file(name_or_path)), count, seed);
}

}  // namespace gecbs
