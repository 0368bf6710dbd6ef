#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gecbs/gecbs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsolved = 1;
constexpr int kExitInvalid = 2;

int fail(gecbs_status status) {
    std::fprintf(stderr, "error: %s\n", gecbs_last_error());
    return status == GECBS_UNSOLVED ? kExitUnsolved : kExitInvalid;
}

struct ScenarioHandle {
    gecbs_scenario* p = nullptr;
    ~ScenarioHandle() { gecbs_scenario_free(p); }
};

struct RunHandle {
    gecbs_run* p = nullptr;
    ~RunHandle() { gecbs_run_free(p); }
};

struct GenArgs {
    std::string tmpl;
    int count = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    int written = 0;
    if (auto st = gecbs_generate(a.tmpl.c_str(), a.count, a.seed, a.out.c_str(), &written); st != GECBS_OK) return fail(st);
    std::printf("wrote %d scenario(s) to %s\n", written, a.out.c_str());
    return kExitOk;
}

struct SolveArgs {
    std::string scenario;
    std::string algo;
    double w = 0.0;
    double timeout_ms = -1.0;
    long long max_expansions = -1;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out;
};

int cmd_solve(const SolveArgs& a) {
    ScenarioHandle sc;
    if (auto st = gecbs_scenario_load(a.scenario.c_str(), &sc.p); st != GECBS_OK) return fail(st);
    gecbs_solve_options opt;
    gecbs_solve_options_init(&opt);
    if (!a.algo.empty()) opt.algorithm = a.algo.c_str();
    opt.w = a.w;
    opt.timeout_ms = a.timeout_ms;
    opt.max_expansions = a.max_expansions;
    opt.seed = a.seed;
    opt.override_seed = a.has_seed ? 1 : 0;
    RunHandle run;
    if (auto st = gecbs_solve(sc.p, &opt, &run.p); st != GECBS_OK) return fail(st);

    FILE* summary = stdout;
    if (a.out.empty()) {
        char* text = nullptr;
        if (auto st = gecbs_run_to_json(run.p, &text); st != GECBS_OK) return fail(st);
        std::printf("%s\n", text);
        gecbs_string_free(text);
        summary = stderr;
    } else if (auto st = gecbs_run_save(run.p, a.out.c_str()); st != GECBS_OK) {
        return fail(st);
    }
    std::fprintf(summary, "%s %s: %s cost=%g lb=%g hl_expansions=%lld ll_calls=%lld runtime_ms=%.3f\n",
                 gecbs_scenario_name(sc.p), gecbs_run_algorithm(run.p), gecbs_run_status(run.p), gecbs_run_cost(run.p),
                 gecbs_run_lb(run.p), static_cast<long long>(gecbs_run_hl_expansions(run.p)),
                 static_cast<long long>(gecbs_run_ll_calls(run.p)), gecbs_run_runtime_ms(run.p));
    return gecbs_run_solved(run.p) ? kExitOk : kExitUnsolved;
}

struct BenchArgs {
    std::string dir;
    std::string algos = "cbs,ecbs,pp,ac-ecbs,ac-ecbs-lazy,gen-ecbs";
    std::string out;
    double w = 0.0;
    double timeout_ms = -1.0;
    long long max_expansions = -1;
    int jobs = 0;
    int passes = 2;
    std::string frames;
    std::string summary;
};

int cmd_bench(const BenchArgs& a) {
    gecbs_bench_options opt;
    gecbs_bench_options_init(&opt);
    opt.algorithms = a.algos.c_str();
    opt.w = a.w;
    opt.timeout_ms = a.timeout_ms;
    opt.max_expansions = a.max_expansions;
    opt.jobs = a.jobs;
    opt.shortcut_passes = a.passes;
    opt.frames_path = a.frames.empty() ? nullptr : a.frames.c_str();
    opt.summary_path = a.summary.empty() ? nullptr : a.summary.c_str();
    char* table = nullptr;
    if (auto st = gecbs_bench(a.dir.c_str(), &opt, a.out.c_str(), &table); st != GECBS_OK) return fail(st);
    std::printf("%s", table);
    gecbs_string_free(table);
    return kExitOk;
}

int cmd_verify(const std::string& scenario, const std::string& run_path) {
    ScenarioHandle sc;
    if (auto st = gecbs_scenario_load(scenario.c_str(), &sc.p); st != GECBS_OK) return fail(st);
    RunHandle run;
    if (auto st = gecbs_run_load(run_path.c_str(), &run.p); st != GECBS_OK) return fail(st);
    int clean = 0;
    char* report = nullptr;
    if (auto st = gecbs_verify(sc.p, run.p, &clean, &report); st != GECBS_OK) return fail(st);
    if (clean) std::printf("clean\n");
    else std::printf("%s\n", report);
    gecbs_string_free(report);
    return clean ? kExitOk : kExitUnsolved;
}

int cmd_shortcut(const std::string& run_path, int passes, const std::string& out) {
    RunHandle run;
    if (auto st = gecbs_run_load(run_path.c_str(), &run.p); st != GECBS_OK) return fail(st);
    if (auto st = gecbs_run_shortcut(run.p, passes); st != GECBS_OK) return fail(st);
    const std::string target = out.empty() ? run_path : out;
    if (auto st = gecbs_run_save(run.p, target.c_str()); st != GECBS_OK) return fail(st);
    std::printf("cost %g -> %g (%d pass(es)), written to %s\n", gecbs_run_cost(run.p), gecbs_run_shortcut_cost(run.p),
                passes, target.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized ECBS multi-agent planners: instance generation, solving, benchmarking"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gecbs_version()));

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate seeded scenarios from a template");
    gen_cmd->add_option("--template", gen.tmpl, "Built-in template (grid-oracle, arm4-cluttered) or template JSON file")
        ->required();
    gen_cmd->add_option("--count", gen.count, "Number of scenarios")->required()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario and write RUN.json");
    solve_cmd->add_option("scenario", solve.scenario, "Scenario JSON")->required();
    solve_cmd->add_option("--algo", solve.algo,
                          "cbs|ecbs|pp|ac-ecbs|ac-ecbs-lazy|gen-ecbs|gen-cbs|ecbs-sub:<type> (default: scenario)");
    solve_cmd->add_option("--w", solve.w, "Sub-optimality bound")->check(CLI::Range(1.0, 1e9));
    solve_cmd->add_option("--timeout-ms", solve.timeout_ms, "Wall-clock budget")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--max-expansions", solve.max_expansions, "High-level expansion budget")
        ->check(CLI::NonNegativeNumber);
    auto* seed_opt = solve_cmd->add_option("--seed", solve.seed, "Random seed");
    solve_cmd->add_option("--out", solve.out, "RUN.json path (default: stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run every scenario in a directory with several algorithms");
    bench_cmd->add_option("dir", bench.dir, "Scenario directory")->required();
    bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithm list")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Results CSV")->required();
    bench_cmd->add_option("--w", bench.w, "Override sub-optimality bound")->check(CLI::Range(1.0, 1e9));
    bench_cmd->add_option("--timeout-ms", bench.timeout_ms, "Override wall-clock budget")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--max-expansions", bench.max_expansions, "Override expansion budget")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--jobs", bench.jobs, "Worker threads (default: all cores)");
    bench_cmd->add_option("--passes", bench.passes, "Shortcut passes")->capture_default_str()->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--frames", bench.frames, "Write per-timestep plot data (JSON)");
    bench_cmd->add_option("--summary", bench.summary, "Write the aggregate table (CSV)");

    std::string verify_scenario, verify_run;
    auto* verify_cmd = app.add_subcommand("verify", "Check a RUN.json solution against its scenario");
    verify_cmd->add_option("scenario", verify_scenario, "Scenario JSON")->required();
    verify_cmd->add_option("run", verify_run, "RUN.json")->required();

    std::string shortcut_run;
    std::string shortcut_out;
    int passes = 2;
    auto* shortcut_cmd = app.add_subcommand("shortcut", "Shortcut the solution stored in RUN.json");
    shortcut_cmd->add_option("run", shortcut_run, "RUN.json")->required();
    shortcut_cmd->add_option("--passes", passes, "Shortcut passes")->capture_default_str()->check(CLI::NonNegativeNumber);
    shortcut_cmd->add_option("--out", shortcut_out, "Output path (default: overwrite the input)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitInvalid;
    }

    if (*gen_cmd) return cmd_gen(gen);
    if (*solve_cmd) {
        solve.has_seed = seed_opt->count() > 0;
        return cmd_solve(solve);
    }
    if (*bench_cmd) return cmd_bench(bench);
    if (*verify_cmd) return cmd_verify(verify_scenario, verify_run);
    if (*shortcut_cmd) return cmd_shortcut(shortcut_run, passes, shortcut_out);
    return kExitInvalid;
}
