#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gecbs/io.hpp"

namespace gecbs {

/// A domain plus, per agent, the poses that starts and goals are drawn from.
struct InstanceTemplate {
    std::string name;
    Scenario base;  // domain and solver block; agents are filled in per instance
    std::vector<std::vector<Configuration>> pose_sets;
};

/// Built-in template names: "grid-oracle" (random 4x4 to 6x6 grids with 2-3
/// agents) and "arm4-cluttered" (four planar 3-link arms around a shared,
/// cluttered workspace).
std::vector<std::string> builtin_templates();

InstanceTemplate arm4_cluttered_template();
/// Template file: {"version", "name", "domain", "pose_sets", "solver"?}.
InstanceTemplate template_from_json(const json& j);

/// Deterministic for a given (template, seed); instance k only depends on
/// (seed, k). `name_or_path` is a built-in name or a template JSON file.
/// Throws InvalidInput when the rejection limit is exceeded.
std::vector<Scenario> generate_instances(const std::string& name_or_path, int count, std::uint64_t seed);
std::vector<Scenario> generate_instances(const InstanceTemplate& tmpl, int count, std::uint64_t seed);

}  // namespace gecbs
