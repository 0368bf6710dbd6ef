#include "gecbs/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gecbs {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

void require_object(const json& j, const std::string& what) {
    if (!j.is_object()) invalid(what + " must be a JSON object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
    require_object(j, what);
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) invalid("unknown field '" + key + "' in " + what);
    }
}

const json& field(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) invalid("missing field '" + std::string(key) + "' in " + what);
    return *it;
}

long long as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) invalid(what + " must be an integer");
    return j.get<long long>();
}

double as_number(const json& j, const std::string& what) {
    if (!j.is_number()) invalid(what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) invalid(what + " must be finite");
    return v;
}

std::uint64_t as_uint(const json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        invalid(what + " must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) invalid(what + " must be a string");
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& what) {
    if (!j.is_array()) invalid(what + " must be an array");
    return j;
}

Configuration config_from(const json& j, const std::string& what) {
    as_array(j, what);
    if (j.size() > Configuration::kMaxDims) invalid(what + " has too many coordinates");
    std::vector<int> v;
    for (const auto& x : j) v.push_back(static_cast<int>(as_int(x, what)));
    return Configuration(v);
}

Point2 point_from(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) invalid(what + " must be [x, y]");
    return {as_number(j[0], what), as_number(j[1], what)};
}

std::vector<Configuration> configs_from(const json& j, const std::string& what) {
    std::vector<Configuration> out;
    for (const auto& q : as_array(j, what)) out.push_back(config_from(q, what));
    return out;
}

const char* kind_name(ConflictKind k) { return k == ConflictKind::Vertex ? "vertex" : "edge"; }

}  // namespace

void to_json(json& j, const Configuration& q) { j = q.to_vector(); }
void from_json(const json& j, Configuration& q) { q = config_from(j, "configuration"); }

void to_json(json& j, const Point2& p) { j = json::array({p.x, p.y}); }
void from_json(const json& j, Point2& p) { p = point_from(j, "point"); }

void to_json(json& j, const Path& p) { j = json{{"agent", p.agent}, {"steps", p.steps}}; }
void from_json(const json& j, Path& p) {
    check_keys(j, {"agent", "steps"}, "path");
    p.agent = static_cast<AgentId>(as_int(field(j, "agent", "path"), "path agent"));
    p.steps = configs_from(field(j, "steps", "path"), "path steps");
    if (p.steps.empty()) throw Error(ErrorCode::MalformedPath, "path of agent " + std::to_string(p.agent) + " is empty");
}

void to_json(json& j, const Conflict& c) {
    j = json{{"kind", kind_name(c.kind)}, {"agent_i", c.agent_i}, {"agent_j", c.agent_j}, {"time", c.time},
             {"configs_i", c.configs_i}, {"configs_j", c.configs_j}, {"point", c.point}};
}
void from_json(const json& j, Conflict& c) {
    const std::string w = "conflict";
    check_keys(j, {"kind", "agent_i", "agent_j", "time", "configs_i", "configs_j", "point"}, w);
    const std::string kind = as_string(field(j, "kind", w), "conflict kind");
    if (kind != "vertex" && kind != "edge") invalid("unknown conflict kind '" + kind + "'");
    c.kind = kind == "vertex" ? ConflictKind::Vertex : ConflictKind::Edge;
    c.agent_i = static_cast<AgentId>(as_int(field(j, "agent_i", w), "agent_i"));
    c.agent_j = static_cast<AgentId>(as_int(field(j, "agent_j", w), "agent_j"));
    c.time = static_cast<Time>(as_int(field(j, "time", w), "conflict time"));
    c.configs_i = configs_from(field(j, "configs_i", w), "configs_i");
    c.configs_j = configs_from(field(j, "configs_j", w), "configs_j");
    c.point = point_from(field(j, "point", w), "conflict point");
}

void to_json(json& j, const Constraint& c) {
    json payload;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, VertexPayload>) payload = {{"q", p.q}};
            else if constexpr (std::is_same_v<P, EdgePayload>) payload = {{"from", p.from}, {"to", p.to}};
            else if constexpr (std::is_same_v<P, SpherePayload>) payload = {{"center", p.center}, {"radius", p.radius}};
            else if constexpr (std::is_same_v<P, AvoidancePayload>) payload = {{"other", p.other}, {"snapshot", p.snapshot}};
            else payload = {{"other", p.other}};
        },
        c.payload);
    j = json{{"agent", c.agent},
             {"type", to_string(c.type)},
             {"time", c.time ? json(*c.time) : json(nullptr)},
             {"on_edge", c.on_edge},
             {"payload", payload}};
}

void from_json(const json& j, Constraint& c) {
    const std::string w = "constraint";
    check_keys(j, {"agent", "type", "time", "on_edge", "payload"}, w);
    c.agent = static_cast<AgentId>(as_int(field(j, "agent", w), "constraint agent"));
    const std::string type = as_string(field(j, "type", w), "constraint type");
    auto t = constraint_type_from_string(type);
    if (!t) invalid("unknown constraint type '" + type + "'");
    c.type = *t;
    const json& time = field(j, "time", w);
    if (time.is_null()) c.time.reset();
    else c.time = static_cast<Time>(as_int(time, "constraint time"));
    const json& on_edge = field(j, "on_edge", w);
    if (!on_edge.is_boolean()) invalid("on_edge must be a boolean");
    c.on_edge = on_edge.get<bool>();
    const json& p = field(j, "payload", w);
    switch (c.type) {
        case ConstraintType::Vertex:
            check_keys(p, {"q"}, "vertex payload");
            c.payload = VertexPayload{config_from(field(p, "q", w), "q")};
            break;
        case ConstraintType::Edge:
            check_keys(p, {"from", "to"}, "edge payload");
            c.payload = EdgePayload{config_from(field(p, "from", w), "from"), config_from(field(p, "to", w), "to")};
            break;
        case ConstraintType::Sphere:
            check_keys(p, {"center", "radius"}, "sphere payload");
            c.payload = SpherePayload{point_from(field(p, "center", w), "center"),
                                      as_number(field(p, "radius", w), "radius")};
            break;
        case ConstraintType::Avoidance:
            check_keys(p, {"other", "snapshot"}, "avoidance payload");
            c.payload = AvoidancePayload{static_cast<AgentId>(as_int(field(p, "other", w), "other")),
                                         configs_from(field(p, "snapshot", w), "snapshot")};
            break;
        case ConstraintType::StepPriority:
            check_keys(p, {"other"}, "step-priority payload");
            c.payload = StepPriorityPayload{static_cast<AgentId>(as_int(field(p, "other", w), "other"))};
            break;
        case ConstraintType::Priority:
            check_keys(p, {"other"}, "priority payload");
            c.payload = PriorityPayload{static_cast<AgentId>(as_int(field(p, "other", w), "other"))};
            break;
    }
}

void to_json(json& j, const QueueStats& q) {
    j = json{{"name", q.name},           {"alpha", q.alpha},         {"beta", q.beta},
             {"rewards", q.rewards},     {"penalties", q.penalties}, {"selections", q.selections}};
}
void from_json(const json& j, QueueStats& q) {
    const std::string w = "queue stats";
    check_keys(j, {"name", "alpha", "beta", "rewards", "penalties", "selections"}, w);
    q.name = as_string(field(j, "name", w), "queue name");
    q.alpha = as_number(field(j, "alpha", w), "alpha");
    q.beta = as_number(field(j, "beta", w), "beta");
    q.rewards = as_int(field(j, "rewards", w), "rewards");
    q.penalties = as_int(field(j, "penalties", w), "penalties");
    q.selections = as_int(field(j, "selections", w), "selections");
}

void to_json(json& j, const SolverStats& s) {
    j = json{{"runtime_ms", s.runtime_ms},
             {"hl_expansions", s.hl_expansions},
             {"hl_evaluations", s.hl_evaluations},
             {"ll_calls", s.ll_calls},
             {"ll_expansions", s.ll_expansions},
             {"nodes_generated", s.nodes_generated},
             {"cost", s.cost},
             {"lb", s.lb},
             {"queues", s.queues}};
}
void from_json(const json& j, SolverStats& s) {
    const std::string w = "solver stats";
    check_keys(j, {"runtime_ms", "hl_expansions", "hl_evaluations", "ll_calls", "ll_expansions", "nodes_generated",
                   "cost", "lb", "queues"},
               w);
    s.runtime_ms = j.contains("runtime_ms") ? as_number(j["runtime_ms"], "runtime_ms") : 0.0;
    s.hl_expansions = as_int(field(j, "hl_expansions", w), "hl_expansions");
    s.hl_evaluations = as_int(field(j, "hl_evaluations", w), "hl_evaluations");
    s.ll_calls = as_int(field(j, "ll_calls", w), "ll_calls");
    s.ll_expansions = as_int(field(j, "ll_expansions", w), "ll_expansions");
    s.nodes_generated = as_int(field(j, "nodes_generated", w), "nodes_generated");
    s.cost = as_number(field(j, "cost", w), "cost");
    s.lb = as_number(field(j, "lb", w), "lb");
    s.queues = as_array(field(j, "queues", w), "queues").get<std::vector<QueueStats>>();
}

json solution_to_json(const Solution& s) { return json(s); }

Solution solution_from_json(const json& j) {
    Solution s;
    for (const auto& p : as_array(j, "solution")) s.push_back(p.get<Path>());
    return s;
}

void to_json(json& j, const SolverResult& r) {
    j = json{{"status", to_string(r.status)},
             {"solution", r.solution ? solution_to_json(*r.solution) : json(nullptr)},
             {"stats", r.stats}};
}

namespace {
SolveStatus status_from(const json& j) {
    const std::string s = as_string(j, "status");
    for (auto st : {SolveStatus::Solved, SolveStatus::Timeout, SolveStatus::Exhausted})
        if (s == to_string(st)) return st;
    invalid("unknown solve status '" + s + "'");
}
}  // namespace

void from_json(const json& j, SolverResult& r) {
    const std::string w = "solver result";
    check_keys(j, {"status", "solution", "stats"}, w);
    r.status = status_from(field(j, "status", w));
    const json& sol = field(j, "solution", w);
    if (sol.is_null()) r.solution.reset();
    else r.solution = solution_from_json(sol);
    r.stats = field(j, "stats", w).get<SolverStats>();
}

void to_json(json& j, const CTNode& n) {
    json paths = json::array();
    for (const auto& p : n.paths) paths.push_back(p ? json(*p) : json(nullptr));
    j = json{{"id", n.id},
             {"parent", n.parent ? json(*n.parent) : json(nullptr)},
             {"constraints", n.constraints.to_vector()},
             {"paths", paths},
             {"cost_per_agent", n.cost_per_agent},
             {"lb_per_agent", n.lb_per_agent},
             {"cost", n.cost},
             {"lb", n.lb},
             {"conflicts", n.conflicts ? json(*n.conflicts) : json(nullptr)},
             {"agents_replan", n.agents_replan},
             {"last_slot", n.last_slot ? json(*n.last_slot) : json(nullptr)},
             {"slot_counts", n.slot_counts}};
}

void from_json(const json& j, CTNode& n) {
    const std::string w = "CT node";
    check_keys(j, {"id", "parent", "constraints", "paths", "cost_per_agent", "lb_per_agent", "cost", "lb", "conflicts",
                   "agents_replan", "last_slot", "slot_counts"},
               w);
    n = CTNode{};
    n.id = as_int(field(j, "id", w), "id");
    if (const json& p = field(j, "parent", w); !p.is_null()) n.parent = as_int(p, "parent");
    for (const auto& c : as_array(field(j, "constraints", w), "constraints")) n.constraints = n.constraints.with(c.get<Constraint>());
    for (const auto& p : as_array(field(j, "paths", w), "paths"))
        n.paths.push_back(p.is_null() ? nullptr : std::make_shared<const Path>(p.get<Path>()));
    for (const auto& x : as_array(field(j, "cost_per_agent", w), "cost_per_agent")) n.cost_per_agent.push_back(as_number(x, "cost"));
    for (const auto& x : as_array(field(j, "lb_per_agent", w), "lb_per_agent")) n.lb_per_agent.push_back(as_number(x, "lb"));
    n.cost = as_number(field(j, "cost", w), "cost");
    n.lb = as_number(field(j, "lb", w), "lb");
    if (const json& c = field(j, "conflicts", w); !c.is_null())
        n.conflicts = std::make_shared<const std::vector<Conflict>>(as_array(c, "conflicts").get<std::vector<Conflict>>());
    for (const auto& x : as_array(field(j, "agents_replan", w), "agents_replan"))
        n.agents_replan.push_back(static_cast<AgentId>(as_int(x, "agent")));
    if (const json& s = field(j, "last_slot", w); !s.is_null()) n.last_slot = static_cast<std::size_t>(as_uint(s, "last_slot"));
    for (const auto& x : as_array(field(j, "slot_counts", w), "slot_counts")) n.slot_counts.push_back(static_cast<int>(as_int(x, "slot count")));
}

void to_json(json& j, const MenuEntry& e) {
    j = json{{"type", to_string(e.kind)}};
    if (e.kind == MenuKind::Sphere) j["radius"] = e.radius;
    if (e.prior) j["prior"] = json::array({e.prior->first, e.prior->second});
}

void from_json(const json& j, MenuEntry& e) {
    const std::string w = "menu entry";
    if (j.is_string()) {
        e = MenuEntry::parse(j.get<std::string>());
        return;
    }
    check_keys(j, {"type", "radius", "prior"}, w);
    const std::string type = as_string(field(j, "type", w), "menu type");
    if (type == "sphere") {
        e = MenuEntry::sphere(as_number(field(j, "radius", w), "sphere radius"));
    } else {
        if (j.contains("radius")) invalid("radius is only valid for sphere entries");
        e = MenuEntry::parse(type);
    }
    if (j.contains("prior")) {
        const json& p = j["prior"];
        if (!p.is_array() || p.size() != 2) invalid("prior must be [alpha, beta]");
        e.prior = std::pair{as_number(p[0], "prior alpha"), as_number(p[1], "prior beta")};
    }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Domain> Scenario::build_domain() const {
    std::vector<Configuration> starts;
    std::vector<Configuration> goals;
    for (const auto& a : agents) {
        starts.push_back(a.start);
        goals.push_back(a.goal);
    }
    if (agents.empty()) invalid("scenario has no agents");
    if (const auto* g = std::get_if<GridSpec>(&domain)) {
        return std::make_unique<GridDomain>(g->width, g->height, g->blocked, starts, goals);
    }
    const auto& arm = std::get<ArmSceneSpec>(domain);
    if (arm.arms.size() != agents.size()) invalid("planar_arm scenarios need one arm per agent");
    return std::make_unique<PlanarArmDomain>(arm.arms, arm.obstacles, arm.delta, starts, goals, arm.substeps);
}

std::vector<MenuEntry> default_menu(const Scenario& scenario) {
    std::vector<double> radii{0.5, 1.0, 1.5};
    if (const auto* arm = std::get_if<ArmSceneSpec>(&scenario.domain)) {
        double total = 0.0;
        int count = 0;
        for (const auto& a : arm->arms)
            for (double l : a.links) {
                total += l;
                ++count;
            }
        const double mean = count ? total / count : 1.0;
        radii = {0.1 * mean, 0.3 * mean, 0.6 * mean};
    }
    std::vector<MenuEntry> menu{MenuEntry::complete_entry(), MenuEntry::of(MenuKind::Avoidance),
                                MenuEntry::of(MenuKind::StepPriority)};
    for (double r : radii) menu.push_back(MenuEntry::sphere(r));
    menu[3].prior = std::pair{3.0, 1.0};
    return menu;
}

ConstraintMenu Scenario::menu() const {
    return ConstraintMenu(solver.menu.empty() ? default_menu(*this) : solver.menu);
}

SolverConfig Scenario::solver_config() const {
    SolverConfig c;
    c.algorithm = AlgorithmSpec::parse(solver.algorithm);
    c.w = solver.w;
    c.menu = menu();
    c.low_level = solver.low_level;
    c.dts_cap = solver.dts_cap;
    c.seed = solver.seed;
    c.max_expansions = solver.max_expansions;
    c.timeout_ms = solver.timeout_ms;
    c.ll_max_expansions = solver.ll_max_expansions;
    c.pp_retries = solver.pp_retries;
    c.pp_order = solver.pp_order;
    return c;
}

namespace {

json domain_to_json(const Scenario& s) {
    if (const auto* g = std::get_if<GridSpec>(&s.domain)) {
        json blocked = json::array();
        for (auto [x, y] : g->blocked) blocked.push_back({x, y});
        return json{{"type", "grid"}, {"width", g->width}, {"height", g->height}, {"blocked", blocked}};
    }
    const auto& a = std::get<ArmSceneSpec>(s.domain);
    json arms = json::array();
    for (const auto& arm : a.arms) {
        json limits = json::array();
        for (auto [lo, hi] : arm.joint_limits) limits.push_back({lo, hi});
        arms.push_back(json{{"base", arm.base},
                            {"base_angle", arm.base_angle},
                            {"links", arm.links},
                            {"joint_limits", limits},
                            {"thickness", arm.thickness}});
    }
    json obstacles = json::array();
    for (const auto& c : a.obstacles) obstacles.push_back(json{{"center", c.center}, {"radius", c.radius}});
    return json{{"type", "planar_arm"},
                {"delta", a.delta},
                {"substeps", a.substeps},
                {"arms", arms},
                {"obstacles", obstacles}};
}

std::pair<int, int> int_pair(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) invalid(what + " must be a pair of integers");
    return {static_cast<int>(as_int(j[0], what)), static_cast<int>(as_int(j[1], what))};
}

std::variant<GridSpec, ArmSceneSpec> domain_from_json(const json& j) {
    require_object(j, "domain");
    const std::string type = as_string(field(j, "type", "domain"), "domain type");
    if (type == "grid") {
        check_keys(j, {"type", "width", "height", "blocked"}, "grid domain");
        GridSpec g;
        g.width = static_cast<int>(as_int(field(j, "width", "grid"), "width"));
        g.height = static_cast<int>(as_int(field(j, "height", "grid"), "height"));
        if (j.contains("blocked"))
            for (const auto& c : as_array(j["blocked"], "blocked")) g.blocked.push_back(int_pair(c, "blocked cell"));
        return g;
    }
    if (type == "planar_arm") {
        check_keys(j, {"type", "delta", "substeps", "arms", "obstacles"}, "planar_arm domain");
        ArmSceneSpec a;
        if (j.contains("delta")) a.delta = as_number(j["delta"], "delta");
        if (j.contains("substeps")) a.substeps = static_cast<int>(as_int(j["substeps"], "substeps"));
        if (a.substeps < 1) invalid("substeps must be >= 1");
        for (const auto& arm : as_array(field(j, "arms", "planar_arm"), "arms")) {
            check_keys(arm, {"base", "base_angle", "links", "joint_limits", "thickness"}, "arm");
            ArmSpec s;
            s.base = point_from(field(arm, "base", "arm"), "arm base");
            if (arm.contains("base_angle")) s.base_angle = as_number(arm["base_angle"], "base_angle");
            for (const auto& l : as_array(field(arm, "links", "arm"), "links")) s.links.push_back(as_number(l, "link"));
            for (const auto& l : as_array(field(arm, "joint_limits", "arm"), "joint_limits"))
                s.joint_limits.push_back(int_pair(l, "joint limit"));
            if (arm.contains("thickness")) s.thickness = as_number(arm["thickness"], "thickness");
            a.arms.push_back(std::move(s));
        }
        if (j.contains("obstacles")) {
            for (const auto& o : as_array(j["obstacles"], "obstacles")) {
                check_keys(o, {"center", "radius"}, "obstacle");
                a.obstacles.push_back(
                    {point_from(field(o, "center", "obstacle"), "center"), as_number(field(o, "radius", "obstacle"), "radius")});
            }
        }
        return a;
    }
    invalid("unknown domain type '" + type + "'");
}

json solver_to_json(const SolverSpec& s) {
    json j{{"algorithm", s.algorithm},
           {"w", s.w},
           {"menu", s.menu},
           {"dts_cap", s.dts_cap},
           {"seed", s.seed},
           {"max_expansions", s.max_expansions},
           {"timeout_ms", s.timeout_ms},
           {"ll_max_expansions", s.ll_max_expansions},
           {"pp_retries", s.pp_retries},
           {"pp_order", s.pp_order}};
    if (s.low_level) {
        j["low_level"] = json{
            {"mode", s.low_level->kind == LowLevelMode::Kind::Focal ? "focal" : "weighted-astar"},
            {"weight", s.low_level->weight}};
    }
    return j;
}

SolverSpec solver_from_json(const json& j) {
    const std::string w = "solver";
    check_keys(j, {"algorithm", "w", "menu", "dts_cap", "seed", "max_expansions", "timeout_ms", "low_level",
                   "ll_max_expansions", "pp_retries", "pp_order"},
               w);
    SolverSpec s;
    if (j.contains("algorithm")) s.algorithm = as_string(j["algorithm"], "algorithm");
    AlgorithmSpec::parse(s.algorithm);
    if (j.contains("w")) s.w = as_number(j["w"], "w");
    if (s.w < 1.0) invalid("w must be >= 1");
    if (j.contains("menu")) s.menu = as_array(j["menu"], "menu").get<std::vector<MenuEntry>>();
    if (j.contains("dts_cap")) s.dts_cap = as_number(j["dts_cap"], "dts_cap");
    if (j.contains("seed")) s.seed = as_uint(j["seed"], "seed");
    if (j.contains("max_expansions")) s.max_expansions = as_int(j["max_expansions"], "max_expansions");
    if (j.contains("timeout_ms")) s.timeout_ms = as_number(j["timeout_ms"], "timeout_ms");
    if (j.contains("ll_max_expansions")) s.ll_max_expansions = as_int(j["ll_max_expansions"], "ll_max_expansions");
    if (j.contains("pp_retries")) s.pp_retries = static_cast<int>(as_int(j["pp_retries"], "pp_retries"));
    if (j.contains("pp_order"))
        for (const auto& a : as_array(j["pp_order"], "pp_order")) s.pp_order.push_back(static_cast<AgentId>(as_int(a, "pp_order")));
    if (j.contains("low_level")) {
        const json& l = j["low_level"];
        check_keys(l, {"mode", "weight"}, "low_level");
        const std::string mode = as_string(field(l, "mode", "low_level"), "low_level mode");
        const double weight = l.contains("weight") ? as_number(l["weight"], "low_level weight") : 1.0;
        if (weight < 1.0) invalid("low_level weight must be >= 1");
        if (mode == "focal") s.low_level = LowLevelMode::focal(weight);
        else if (mode == "weighted-astar") s.low_level = LowLevelMode::weighted_astar(weight);
        else invalid("unknown low_level mode '" + mode + "'");
    }
    return s;
}

void check_version(const json& j, const std::string& what) {
    const json& v = field(j, "version", what);
    if (as_int(v, "version") != kFormatVersion) invalid("unsupported " + what + " version " + v.dump());
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json j{{"version", kFormatVersion}, {"name", s.name}, {"domain", domain_to_json(s)}};
    json agents = json::array();
    for (const auto& a : s.agents) agents.push_back(json{{"start", a.start}, {"goal", a.goal}});
    j["agents"] = agents;
    j["solver"] = solver_to_json(s.solver);
    if (s.template_name || s.generator_seed) {
        json meta = json::object();
        if (s.template_name) meta["template"] = *s.template_name;
        if (s.generator_seed) meta["generator_seed"] = *s.generator_seed;
        j["metadata"] = meta;
    }
    return j;
}

Scenario scenario_from_json(const json& j) {
    try {
        const std::string w = "scenario";
        check_keys(j, {"version", "name", "metadata", "domain", "agents", "solver"}, w);
        check_version(j, w);
        Scenario s;
        s.name = as_string(field(j, "name", w), "name");
        if (j.contains("metadata")) {
            const json& m = j["metadata"];
            check_keys(m, {"template", "generator_seed"}, "metadata");
            if (m.contains("template")) s.template_name = as_string(m["template"], "template");
            if (m.contains("generator_seed")) s.generator_seed = as_uint(m["generator_seed"], "generator_seed");
        }
        s.domain = domain_from_json(field(j, "domain", w));
        for (const auto& a : as_array(field(j, "agents", w), "agents")) {
            check_keys(a, {"start", "goal"}, "agent");
            s.agents.push_back({config_from(field(a, "start", "agent"), "start"), config_from(field(a, "goal", "agent"), "goal")});
        }
        if (j.contains("solver")) s.solver = solver_from_json(j["solver"]);
        return s;
    } catch (const json::exception& e) {
        invalid(std::string("malformed scenario: ") + e.what());
    }
}

namespace {
bool scalar_array(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

void pretty(const json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, value] : j.items()) {
            out += pad + json(key).dump() + ": ";
            pretty(value, indent + 2, out);
            out += ++k < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += pad;
            pretty(j[k], indent + 2, out);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else {
        std::string flat = j.dump();
        if (j.is_array()) {
            std::string spaced;
            for (char c : flat) {
                spaced += c;
                if (c == ',') spaced += ' ';
            }
            flat = spaced;
        }
        out += flat;
    }
}
}  // namespace

std::string to_pretty_json(const json& j) {
    std::string out;
    pretty(j, 0, out);
    return out + "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        invalid("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

void save_scenario(const Scenario& s, const std::string& path) {
    write_text_file(path, to_pretty_json(scenario_to_json(s)));
}

json run_to_json(const RunDocument& run) {
    json result = run.result;
    result["stats"].erase("runtime_ms");
    json j{{"version", kFormatVersion},
           {"algorithm", run.algorithm},
           {"seed", run.seed},
           {"result", result},
           {"scenario", scenario_to_json(run.scenario)}};
    if (run.shortcut) {
        j["shortcut"] = json{{"passes", run.shortcut->passes},
                             {"cost", run.shortcut->cost},
                             {"solution", solution_to_json(run.shortcut->solution)}};
    }
    return j;
}

RunDocument run_from_json(const json& j) {
    try {
        const std::string w = "run record";
        check_keys(j, {"version", "algorithm", "seed", "result", "scenario", "shortcut"}, w);
        check_version(j, w);
        RunDocument run;
        run.algorithm = as_string(field(j, "algorithm", w), "algorithm");
        run.seed = as_uint(field(j, "seed", w), "seed");
        run.result = field(j, "result", w).get<SolverResult>();
        run.scenario = scenario_from_json(field(j, "scenario", w));
        if (j.contains("shortcut")) {
            const json& s = j["shortcut"];
            check_keys(s, {"passes", "cost", "solution"}, "shortcut");
            ShortcutRecord rec;
            rec.passes = static_cast<int>(as_int(field(s, "passes", "shortcut"), "passes"));
            rec.cost = as_number(field(s, "cost", "shortcut"), "shortcut cost");
            rec.solution = solution_from_json(field(s, "solution", "shortcut"));
            run.shortcut = std::move(rec);
        }
        return run;
    } catch (const json::exception& e) {
        invalid(std::string("malformed run record: ") + e.what());
    }
}

RunDocument load_run(const std::string& path) { return run_from_json(read_json_file(path)); }

void save_run(const RunDocument& run, const std::string& path) {
    write_text_file(path, to_pretty_json(run_to_json(run)));
}

}  // namespace gecbs
