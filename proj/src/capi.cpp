#include "gecbs/gecbs.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "gecbs/bench.hpp"
#include "gecbs/generate.hpp"

struct gecbs_scenario {
    gecbs::Scenario value;
};

struct gecbs_run {
    gecbs::RunDocument value;
    std::string status;
};

namespace {

thread_local std::string g_last_error;

gecbs_status to_status(gecbs::ErrorCode code) {
    switch (code) {
        case gecbs::ErrorCode::InvalidInput: return GECBS_INVALID_INPUT;
        case gecbs::ErrorCode::MalformedPath:
        case gecbs::ErrorCode::MalformedSolution: return GECBS_MALFORMED;
        case gecbs::ErrorCode::Io: return GECBS_IO_ERROR;
        case gecbs::ErrorCode::Internal: return GECBS_INTERNAL;
    }
    return GECBS_INTERNAL;
}

template <class F>
gecbs_status guarded(F&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const gecbs::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return GECBS_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GECBS_INTERNAL;
    }
}

gecbs_status null_argument(const char* name) {
    g_last_error = std::string("null argument: ") + name;
    return GECBS_INVALID_INPUT;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

gecbs_run* wrap(gecbs::RunDocument doc) {
    auto* run = new gecbs_run{std::move(doc), {}};
    run->status = gecbs::to_string(run->value.result.status);
    return run;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

extern "C" {

const char* gecbs_version(void) { return "1.0.0"; }

const char* gecbs_last_error(void) { return g_last_error.c_str(); }

void gecbs_string_free(char* s) { std::free(s); }

gecbs_status gecbs_scenario_load(const char* path, gecbs_scenario** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    return guarded([&] {
        auto s = gecbs::load_scenario(path);
        s.build_domain();
        *out = new gecbs_scenario{std::move(s)};
        return GECBS_OK;
    });
}

gecbs_status gecbs_scenario_parse(const char* json_text, gecbs_scenario** out) {
    if (!json_text) return null_argument("json_text");
    if (!out) return null_argument("out");
    return guarded([&] {
        gecbs::json j;
        try {
            j = gecbs::json::parse(json_text);
        } catch (const gecbs::json::parse_error& e) {
            throw gecbs::Error(gecbs::ErrorCode::InvalidInput, std::string("invalid JSON: ") + e.what());
        }
        auto s = gecbs::scenario_from_json(j);
        s.build_domain();
        *out = new gecbs_scenario{std::move(s)};
        return GECBS_OK;
    });
}

gecbs_status gecbs_scenario_to_json(const gecbs_scenario* scenario, char** out) {
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(gecbs::to_pretty_json(gecbs::scenario_to_json(scenario->value)));
        return GECBS_OK;
    });
}

const char* gecbs_scenario_name(const gecbs_scenario* scenario) {
    return scenario ? scenario->value.name.c_str() : "";
}

int gecbs_scenario_agent_count(const gecbs_scenario* scenario) {
    return scenario ? static_cast<int>(scenario->value.agents.size()) : 0;
}

void gecbs_scenario_free(gecbs_scenario* scenario) { delete scenario; }

void gecbs_solve_options_init(gecbs_solve_options* options) {
    if (!options) return;
    options->algorithm = nullptr;
    options->w = 0.0;
    options->timeout_ms = -1.0;
    options->max_expansions = -1;
    options->seed = 0;
    options->override_seed = 0;
}

gecbs_status gecbs_solve(const gecbs_scenario* scenario, const gecbs_solve_options* options, gecbs_run** out) {
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    return guarded([&] {
        gecbs::SolveOverrides o;
        if (options) {
            if (options->algorithm) o.algorithm = options->algorithm;
            if (options->w > 0.0) o.w = options->w;
            if (options->timeout_ms >= 0.0) o.timeout_ms = options->timeout_ms;
            if (options->max_expansions >= 0) o.max_expansions = static_cast<long>(options->max_expansions);
            if (options->override_seed) o.seed = options->seed;
        }
        *out = wrap(gecbs::solve_scenario(scenario->value, o));
        return GECBS_OK;
    });
}

gecbs_status gecbs_run_load(const char* path, gecbs_run** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = wrap(gecbs::load_run(path));
        return GECBS_OK;
    });
}

gecbs_status gecbs_run_save(const gecbs_run* run, const char* path) {
    if (!run) return null_argument("run");
    if (!path) return null_argument("path");
    return guarded([&] {
        gecbs::save_run(run->value, path);
        return GECBS_OK;
    });
}

gecbs_status gecbs_run_to_json(const gecbs_run* run, char** out) {
    if (!run) return null_argument("run");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = dup_string(gecbs::to_pretty_json(gecbs::run_to_json(run->value)));
        return GECBS_OK;
    });
}

int gecbs_run_solved(const gecbs_run* run) {
    return run && run->value.result.status == gecbs::SolveStatus::Solved && run->value.result.solution ? 1 : 0;
}

const char* gecbs_run_status(const gecbs_run* run) { return run ? run->status.c_str() : ""; }

const char* gecbs_run_algorithm(const gecbs_run* run) { return run ? run->value.algorithm.c_str() : ""; }

double gecbs_run_runtime_ms(const gecbs_run* run) { return run ? run->value.result.stats.runtime_ms : 0.0; }

double gecbs_run_cost(const gecbs_run* run) { return run ? run->value.result.stats.cost : 0.0; }

double gecbs_run_lb(const gecbs_run* run) { return run ? run->value.result.stats.lb : 0.0; }

int64_t gecbs_run_hl_expansions(const gecbs_run* run) { return run ? run->value.result.stats.hl_expansions : 0; }

int64_t gecbs_run_ll_calls(const gecbs_run* run) { return run ? run->value.result.stats.ll_calls : 0; }

double gecbs_run_shortcut_cost(const gecbs_run* run) {
    return run && run->value.shortcut ? run->value.shortcut->cost : -1.0;
}

void gecbs_run_free(gecbs_run* run) { delete run; }

gecbs_status gecbs_run_shortcut(gecbs_run* run, int passes) {
    if (!run) return null_argument("run");
    return guarded([&] {
        if (!gecbs::shortcut_run(run->value, passes)) {
            g_last_error = "run holds no solution";
            return GECBS_UNSOLVED;
        }
        return GECBS_OK;
    });
}

gecbs_status gecbs_verify(const gecbs_scenario* scenario, const gecbs_run* run, int* clean, char** report) {
    if (!scenario) return null_argument("scenario");
    if (!run) return null_argument("run");
    return guarded([&] {
        if (clean) *clean = 0;
        if (!run->value.result.solution) {
            g_last_error = "run holds no solution";
            return GECBS_UNSOLVED;
        }
        const auto domain = scenario->value.build_domain();
        gecbs::json list = gecbs::json::array();
        auto check = [&](const gecbs::Solution& sol, const char* which) {
            for (const auto& v : gecbs::verify(*domain, sol).violations) {
                list.push_back({{"solution", which},
                                {"kind", gecbs::to_string(v.kind)},
                                {"agent", v.agent},
                                {"other", v.other ? gecbs::json(*v.other) : gecbs::json(nullptr)},
                                {"time", v.time},
                                {"message", v.message}});
            }
        };
        check(*run->value.result.solution, "solution");
        if (run->value.shortcut) check(run->value.shortcut->solution, "shortcut");
        if (clean) *clean = list.empty() ? 1 : 0;
        if (report) *report = dup_string(gecbs::to_pretty_json(list));
        return GECBS_OK;
    });
}

gecbs_status gecbs_generate(const char* template_name_or_path, int count, uint64_t seed, const char* out_dir,
                            int* written) {
    if (!template_name_or_path) return null_argument("template");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] {
        if (written) *written = 0;
        const auto scenarios = gecbs::generate_instances(template_name_or_path, count, seed);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw gecbs::Error(gecbs::ErrorCode::Io, "cannot create '" + std::string(out_dir) + "'");
        for (const auto& s : scenarios) {
            gecbs::save_scenario(s, (std::filesystem::path(out_dir) / (s.name + ".json")).string());
            if (written) ++*written;
        }
        return GECBS_OK;
    });
}

void gecbs_bench_options_init(gecbs_bench_options* options) {
    if (!options) return;
    options->algorithms = "cbs,ecbs,pp,ac-ecbs,ac-ecbs-lazy,gen-ecbs";
    options->w = 0.0;
    options->timeout_ms = -1.0;
    options->max_expansions = -1;
    options->jobs = 0;
    options->shortcut_passes = 2;
    options->frames_path = nullptr;
    options->summary_path = nullptr;
}

gecbs_status gecbs_bench(const char* dir, const gecbs_bench_options* options, const char* out_csv, char** table) {
    if (!dir) return null_argument("dir");
    if (!out_csv) return null_argument("out_csv");
    gecbs_bench_options defaults;
    gecbs_bench_options_init(&defaults);
    const gecbs_bench_options& opt = options ? *options : defaults;
    return guarded([&] {
        gecbs::BenchOptions bo;
        bo.algorithms = split_list(opt.algorithms ? opt.algorithms : defaults.algorithms);
        if (bo.algorithms.empty()) throw gecbs::Error(gecbs::ErrorCode::InvalidInput, "no algorithms given");
        if (opt.w > 0.0) bo.w = opt.w;
        if (opt.timeout_ms >= 0.0) bo.timeout_ms = opt.timeout_ms;
        if (opt.max_expansions >= 0) bo.max_expansions = static_cast<long>(opt.max_expansions);
        bo.jobs = opt.jobs;
        bo.shortcut_passes = opt.shortcut_passes;
        const auto scenarios = gecbs::load_scenario_dir(dir);
        const auto report = gecbs::run_benchmark(scenarios, bo);
        gecbs::write_text_file(out_csv, gecbs::records_to_csv(report.records));
        if (opt.summary_path) gecbs::write_text_file(opt.summary_path, gecbs::aggregate_to_csv(report.aggregate));
        if (opt.frames_path) gecbs::write_text_file(opt.frames_path, gecbs::frames_json(scenarios, report.records).dump());
        if (table) *table = dup_string(gecbs::aggregate_to_text(report.aggregate));
        return GECBS_OK;
    });
}

}  // extern "C"
