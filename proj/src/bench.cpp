#include "gecbs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

namespace gecbs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Scenario apply_overrides(Scenario s, const SolveOverrides& o) {
    if (o.algorithm) s.solver.algorithm = *o.algorithm;
    if (o.w) s.solver.w = *o.w;
    if (o.timeout_ms) s.solver.timeout_ms = *o.timeout_ms;
    if (o.max_expansions) s.solver.max_expansions = *o.max_expansions;
    if (o.seed) s.solver.seed = *o.seed;
    if (s.solver.w < 1.0) throw Error(ErrorCode::InvalidInput, "w must be >= 1");
    if (s.solver.max_expansions < 0) throw Error(ErrorCode::InvalidInput, "max expansions must be >= 0");
    if (!(s.solver.timeout_ms >= 0.0)) throw Error(ErrorCode::InvalidInput, "timeout must be >= 0");
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

RunDocument solve_scenario(const Scenario& scenario, const SolveOverrides& overrides) {
    RunDocument run;
    run.scenario = apply_overrides(scenario, overrides);
    const auto domain = run.scenario.build_domain();
    const SolverConfig config = run.scenario.solver_config();
    run.algorithm = config.algorithm.name();
    run.seed = config.seed;
    run.result = solve(*domain, config);
    return run;
}

bool shortcut_run(RunDocument& run, int passes) {
    if (!run.result.solution) return false;
    if (passes < 0) throw Error(ErrorCode::InvalidInput, "passes must be >= 0");
    const auto domain = run.scenario.build_domain();
    ShortcutRecord rec;
    rec.passes = passes;
    rec.solution = shortcut(*run.result.solution, *domain, passes);
    rec.cost = sum_of_costs(rec.solution, *domain);
    run.shortcut = std::move(rec);
    return true;
}

std::uint64_t cell_seed(std::uint64_t scenario_seed, const std::string& algorithm) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : algorithm) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return scenario_seed + h;
}

RunRecord run_cell(const Scenario& scenario, const std::string& algorithm, const BenchOptions& options) {
    RunRecord rec;
    rec.scenario = scenario.name;
    rec.algo = algorithm;
    try {
        SolveOverrides o;
        o.algorithm = algorithm;
        o.w = options.w;
        o.max_expansions = options.max_expansions;
        o.timeout_ms = options.timeout_ms;
        o.seed = cell_seed(scenario.solver.seed, algorithm);
        RunDocument run = solve_scenario(scenario, o);
        const auto& st = run.result.stats;
        rec.status = run.result.status;
        rec.runtime_ms = st.runtime_ms;
        rec.hl_expansions = st.hl_expansions;
        rec.ll_calls = st.ll_calls;
        rec.lb = st.lb;
        rec.queues = st.queues;
        if (run.result.status == SolveStatus::Solved && run.result.solution) {
            const auto domain = run.scenario.build_domain();
            rec.verified = verify(*domain, *run.result.solution).clean();
            rec.cost = sum_of_costs(*run.result.solution, *domain);
            rec.solution = run.result.solution;
            const auto started = Clock::now();
            Solution sc = shortcut(*run.result.solution, *domain, options.shortcut_passes);
            rec.shortcut_ms = ms_since(started);
            rec.verified = rec.verified && verify(*domain, sc).clean();
            rec.cost_shortcut = sum_of_costs(sc, *domain);
            rec.shortcut_solution = std::move(sc);
            rec.success = rec.verified;
            if (rec.lb > 0.0) rec.subopt = rec.cost / rec.lb;
            else if (rec.cost == 0.0) rec.subopt = 1.0;
            if (!rec.verified) rec.error = "solution failed verification";
        }
    } catch (const std::exception& e) {
        rec.success = false;
        rec.error = e.what();
    }
    return rec;
}

BenchReport run_benchmark(const std::vector<Scenario>& scenarios, const BenchOptions& options) {
    const std::size_t n_algos = options.algorithms.size();
    for (const auto& a : options.algorithms) AlgorithmSpec::parse(a);
    const std::size_t cells = scenarios.size() * n_algos;
    BenchReport report;
    report.records.resize(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < cells; c = next++) {
            report.records[c] = run_cell(scenarios[c / n_algos], options.algorithms[c % n_algos], options);
        }
    };
    unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs) : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cells, 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    report.aggregate = aggregate(report.records, options.algorithms);
    return report;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records, const std::vector<std::string>& algorithms) {
    std::vector<AggregateRow> rows;
    for (const auto& algo : algorithms) {
        AggregateRow row;
        row.algo = algo;
        std::vector<double> runtime, cost, cost_sc;
        for (const auto& r : records) {
            if (r.algo != algo) continue;
            ++row.runs;
            if (!r.success) continue;
            ++row.successes;
            runtime.push_back(r.runtime_ms);
            cost.push_back(r.cost);
            cost_sc.push_back(r.cost_shortcut);
        }
        row.success_pct = row.runs ? 100.0 * row.successes / row.runs : 0.0;
        std::tie(row.runtime_mean, row.runtime_std) = mean_std(runtime);
        std::tie(row.cost_mean, row.cost_std) = mean_std(cost);
        std::tie(row.cost_shortcut_mean, row.cost_shortcut_std) = mean_std(cost_sc);
        rows.push_back(row);
    }
    return rows;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "scenario,algo,success,runtime_ms,hl_expansions,ll_calls,cost,cost_shortcut,lb,subopt\n";
    for (const auto& r : records) {
        out << r.scenario << ',' << r.algo << ',' << (r.success ? 1 : 0) << ',' << fixed3(r.runtime_ms) << ','
            << r.hl_expansions << ',' << r.ll_calls << ',';
        if (r.success) out << fmt(r.cost) << ',' << fmt(r.cost_shortcut) << ',';
        else out << ",,";
        out << fmt(r.lb) << ',';
        if (r.success && r.subopt) out << fmt(*r.subopt);
        out << '\n';
    }
    return out.str();
}

std::string aggregate_to_csv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "algo,runs,successes,success_pct,runtime_mean_ms,runtime_std_ms,cost_mean,cost_std,cost_shortcut_mean,"
           "cost_shortcut_std\n";
    for (const auto& r : rows) {
        out << r.algo << ',' << r.runs << ',' << r.successes << ',' << fmt(r.success_pct) << ','
            << fmt(r.runtime_mean) << ',' << fmt(r.runtime_std) << ',' << fmt(r.cost_mean) << ',' << fmt(r.cost_std)
            << ',' << fmt(r.cost_shortcut_mean) << ',' << fmt(r.cost_shortcut_std) << '\n';
    }
    return out.str();
}

std::string aggregate_to_text(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %10s %22s %20s %20s\n", "algorithm", "success %", "runtime ms",
                  "cost", "cost (shortcut)");
    out << line;
    for (const auto& r : rows) {
        char rt[64], c[64], cs[64];
        std::snprintf(rt, sizeof rt, "%.1f +- %.1f", r.runtime_mean, r.runtime_std);
        std::snprintf(c, sizeof c, "%.2f +- %.2f", r.cost_mean, r.cost_std);
        std::snprintf(cs, sizeof cs, "%.2f +- %.2f", r.cost_shortcut_mean, r.cost_shortcut_std);
        std::snprintf(line, sizeof line, "%-24s %10.1f %22s %20s %20s\n", r.algo.c_str(), r.success_pct, rt, c, cs);
        out << line;
    }
    return out.str();
}

json frames_json(const std::vector<Scenario>& scenarios, const std::vector<RunRecord>& records) {
    std::map<std::string, const Scenario*> by_name;
    for (const auto& s : scenarios) by_name.emplace(s.name, &s);
    json runs = json::array();
    for (const auto& r : records) {
        if (!r.success) continue;
        auto it = by_name.find(r.scenario);
        if (it == by_name.end()) continue;
        const auto domain = it->second->build_domain();
        const auto* arm = dynamic_cast<const PlanarArmDomain*>(domain.get());
        const Solution& sol = r.shortcut_solution ? *r.shortcut_solution : *r.solution;
        Time horizon = 0;
        for (const auto& p : sol) horizon = std::max(horizon, p.last_time());
        json frames = json::array();
        for (Time t = 0; t <= horizon; ++t) {
            json agents = json::array();
            for (const auto& p : sol) {
                const Configuration& q = p.at(t);
                json points = json::array();
                if (arm) {
                    const auto segs = arm->forward_kinematics(p.agent, q);
                    points.push_back(segs.front().a);
                    for (const auto& s : segs) points.push_back(s.b);
                } else {
                    points.push_back(GridDomain::cell_center(q));
                }
                agents.push_back(json{{"agent", p.agent}, {"config", q}, {"points", points}});
            }
            frames.push_back(json{{"t", t}, {"agents", agents}});
        }
        runs.push_back(json{{"scenario", r.scenario},
                            {"algo", r.algo},
                            {"domain", arm ? "planar_arm" : "grid"},
                            {"cost", r.cost},
                            {"cost_shortcut", r.cost_shortcut},
                            {"queues", r.queues},
                            {"frames", frames}});
    }
    return json{{"version", kFormatVersion}, {"runs", runs}};
}

std::vector<Scenario> load_scenario_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Scenario> out;
    for (const auto& f : files) out.push_back(load_scenario(f.string()));
    return out;
}

}  // namespace gecbs
