#pragma once

// JSON formats: core types, scenarios and run records.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gecbs/constraints.hpp"
#include "gecbs/core.hpp"
#include "gecbs/domain.hpp"
#include "gecbs/highlevel.hpp"

namespace gecbs {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

void to_json(json& j, const Configuration& q);
void from_json(const json& j, Configuration& q);
void to_json(json& j, const Point2& p);
void from_json(const json& j, Point2& p);
void to_json(json& j, const Path& p);
void from_json(const json& j, Path& p);
void to_json(json& j, const Conflict& c);
void from_json(const json& j, Conflict& c);
void to_json(json& j, const Constraint& c);
void from_json(const json& j, Constraint& c);
void to_json(json& j, const QueueStats& q);
void from_json(const json& j, QueueStats& q);
void to_json(json& j, const SolverStats& s);
void from_json(const json& j, SolverStats& s);
void to_json(json& j, const SolverResult& r);
void from_json(const json& j, SolverResult& r);
void to_json(json& j, const CTNode& n);
void from_json(const json& j, CTNode& n);
void to_json(json& j, const MenuEntry& e);
void from_json(const json& j, MenuEntry& e);

json solution_to_json(const Solution& s);
Solution solution_from_json(const json& j);

struct GridSpec {
    int width = 0;
    int height = 0;
    std::vector<std::pair<int, int>> blocked;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ArmSceneSpec {
    std::vector<ArmSpec> arms;
    std::vector<Circle> obstacles;
    double delta = PlanarArmDomain::kDefaultDelta;
    int substeps = 4;
    friend bool operator==(const ArmSceneSpec&, const ArmSceneSpec&) = default;
};

struct AgentSpec {
    Configuration start;
    Configuration goal;
    friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

/// Solver block of a scenario. An empty menu selects the domain default.
struct SolverSpec {
    std::string algorithm = "gen-ecbs";
    double w = 1.3;
    std::vector<MenuEntry> menu;
    double dts_cap = 10.0;
    std::uint64_t seed = 0;
    long max_expansions = 20000;
    double timeout_ms = 10000.0;
    std::optional<LowLevelMode> low_level;
    long ll_max_expansions = 2000000;
    int pp_retries = 10;
    std::vector<AgentId> pp_order;
};

struct Scenario {
    std::string name;
    std::optional<std::string> template_name;
    std::optional<std::uint64_t> generator_seed;
    std::variant<GridSpec, ArmSceneSpec> domain;
    std::vector<AgentSpec> agents;
    SolverSpec solver;

    /// Throws InvalidInput when the description or the endpoints are invalid.
    std::unique_ptr<Domain> build_domain() const;
    ConstraintMenu menu() const;
    SolverConfig solver_config() const;
};

/// Default menu: complete, avoidance, step-priority and three sphere radii
/// (half, one and one and a half cells on grids; 0.1, 0.3, 0.6 of the mean
/// link length on arms). The smallest sphere starts with a (3, 1) prior.
std::vector<MenuEntry> default_menu(const Scenario& scenario);

json scenario_to_json(const Scenario& s);
/// Strict: unknown fields, a missing or unsupported version and malformed
/// values throw InvalidInput.
Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

struct ShortcutRecord {
    int passes = 0;
    double cost = 0.0;
    Solution solution;
};

/// Contents of RUN.json. Wall-clock runtime is kept out of the file so that
/// repeated runs with the same seed produce identical bytes.
struct RunDocument {
    Scenario scenario;
    std::string algorithm;
    std::uint64_t seed = 0;
    SolverResult result;
    std::optional<ShortcutRecord> shortcut;
};

json run_to_json(const RunDocument& run);
RunDocument run_from_json(const json& j);
RunDocument load_run(const std::string& path);
void save_run(const RunDocument& run, const std::string& path);

/// Indented JSON with arrays of scalars kept on one line.
std::string to_pretty_json(const json& j);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gecbs
