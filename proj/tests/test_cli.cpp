#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "gecbs_test_cli";

int run(const std::string& args) {
    const std::string cmd = std::string(GECBS_CLI) + " " + args + " >>" + (kDir / "log.txt").string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string p(const std::string& name) { return (kDir / name).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const char* kSwap = R"({"version": 1, "name": "swap",
  "domain": {"type": "grid", "width": 2, "height": 1, "blocked": []},
  "agents": [{"start": [0, 0], "goal": [1, 0]}, {"start": [1, 0], "goal": [0, 0]}],
  "solver": {"algorithm": "cbs", "max_expansions": 30}})";

struct Setup {
    Setup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
};

}  // namespace

TEST_CASE("command line exit codes") {
    Setup setup;
    CHECK(run("gen --template grid-oracle --count 3 --seed 5 --out " + p("scen")) == 0);
    const std::string s0 = p("scen/grid-oracle-s5-000.json");
    REQUIRE(fs::exists(s0));

    CHECK(run("solve " + s0 + " --algo gen-ecbs --w 1.5 --seed 2 --out " + p("run.json")) == 0);
    CHECK(run("verify " + s0 + " " + p("run.json")) == 0);
    CHECK(run("shortcut " + p("run.json") + " --passes 2") == 0);
    CHECK(run("verify " + s0 + " " + p("run.json")) == 0);
    CHECK(run("solve " + s0 + " --algo cbs --timeout-ms 5000 --max-expansions 1000") == 0);

    write(p("swap.json"), kSwap);
    CHECK(run("solve " + p("swap.json") + " --out " + p("swap_run.json")) == 1);
    CHECK(run("verify " + p("swap.json") + " " + p("swap_run.json")) == 1);
    CHECK(run("shortcut " + p("swap_run.json")) == 1);

    CHECK(run("solve " + p("missing.json")) == 2);
    write(p("bad.json"), "{\"version\": 1");
    CHECK(run("solve " + p("bad.json")) == 2);
    CHECK(run("solve " + s0 + " --algo astar") == 2);
    CHECK(run("solve " + s0 + " --w 0.5") == 2);
    CHECK(run("solve " + s0 + " --bogus") == 2);
    CHECK(run("") == 2);
    CHECK(run("verify " + s0 + " " + p("bad.json")) == 2);
    CHECK(run("gen --template nope --count 1 --seed 1 --out " + p("x")) == 2);

    std::string tampered = slurp(p("run.json"));
    const auto at = tampered.find("\"steps\"");
    REQUIRE(at != std::string::npos);
    const auto open = tampered.find('[', tampered.find('[', at) + 1);
    const auto close = tampered.find(']', open);
    tampered.replace(open, close - open + 1, "[99, 99]");
    write(p("tampered.json"), tampered);
    CHECK(run("verify " + s0 + " " + p("tampered.json")) == 1);
}

TEST_CASE("bench writes the results table") {
    Setup setup;
    REQUIRE(run("gen --template grid-oracle --count 2 --seed 8 --out " + p("scen")) == 0);
    CHECK(run("bench " + p("scen") + " --algos cbs,pp,gen-ecbs --out " + p("results.csv") + " --jobs 1") == 0);
    std::ifstream in(p("results.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "scenario,algo,success,runtime_ms,hl_expansions,ll_calls,cost,cost_shortcut,lb,subopt");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 6);

    fs::create_directories(kDir / "empty");
    CHECK(run("bench " + p("empty") + " --out " + p("empty.csv")) == 0);
    CHECK(slurp(p("empty.csv")) == header + "\n");
    CHECK(run("bench " + p("scen") + " --algos nope --out " + p("r.csv")) == 2);
    CHECK(run("bench " + p("nothere") + " --out " + p("r.csv")) == 2);
}

TEST_CASE("repeated solves write identical files") {
    Setup setup;
    REQUIRE(run("gen --template arm4-cluttered --count 1 --seed 4 --out " + p("scen")) == 0);
    const std::string s0 = p("scen/arm4-cluttered-s4-000.json");
    REQUIRE(fs::exists(s0));
    CHECK(run("solve " + s0 + " --seed 9 --out " + p("a.json")) == 0);
    CHECK(run("solve " + s0 + " --seed 9 --out " + p("b.json")) == 0);
    CHECK(slurp(p("a.json")) == slurp(p("b.json")));
    CHECK(!slurp(p("a.json")).empty());
}
