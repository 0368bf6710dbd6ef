#include "gecbs/highlevel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gecbs/dts.hpp"

namespace gecbs {

std::vector<Conflict> find_conflicts(const std::vector<const Path*>& paths, const Domain& domain) {
    std::vector<Conflict> out;
    const int n = static_cast<int>(paths.size());
    const int m = domain.check_substeps();
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = i + 1; j < n; ++j) {
            if (!paths[i] || !paths[j] || !domain.may_interact(i, j)) continue;
            const Path& pi = *paths[i];
            const Path& pj = *paths[j];
            const Time horizon = std::max(pi.last_time(), pj.last_time());
            for (Time t = 0; t <= horizon; ++t) {
                const Configuration& a = pi.at(t);
                const Configuration& b = pj.at(t);
                if (auto p = domain.agents_collide(i, a, j, b)) {
                    out.push_back({ConflictKind::Vertex, i, j, t, {a}, {b}, *p});
                }
                if (t == horizon) break;
                const Configuration& a2 = pi.at(t + 1);
                const Configuration& b2 = pj.at(t + 1);
                if (a == a2 && b == b2) continue;
                if (auto hit = domain.edge_collides_interior(i, a, a2, j, b, b2, m)) {
                    out.push_back({ConflictKind::Edge, i, j, t, {a, a2}, {b, b2}, hit->point});
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Conflict& x, const Conflict& y) {
        return std::tie(x.time, x.agent_i, x.agent_j, x.kind) < std::tie(y.time, y.agent_i, y.agent_j, y.kind);
    });
    return out;
}

std::vector<Conflict> find_conflicts(const Solution& solution, const Domain& domain) {
    std::vector<const Path*> ptrs;
    for (const auto& p : solution) ptrs.push_back(&p);
    return find_conflicts(ptrs, domain);
}

Solution CTNode::solution() const {
    Solution s;
    for (const auto& p : paths) s.push_back(*p);
    return s;
}

double rho_tilde(const CTNode& node, std::size_t slot) {
    const int total = std::accumulate(node.slot_counts.begin(), node.slot_counts.end(), 0);
    if (total == 0 || slot >= node.slot_counts.size()) return 1.0;
    return 1.0 - static_cast<double>(node.slot_counts[slot]) / total;
}

// ---------------------------------------------------------------------------

namespace {
constexpr double kCostTol = 1e-9;
}

FocalQueueSet::FocalQueueSet(double w, std::vector<FocalKeyFn> keys)
    : w_(w), keys_(std::move(keys)), focal_(keys_.size()) {
    if (keys_.empty()) throw Error(ErrorCode::Internal, "focal queue set needs at least one key");
}

void FocalQueueSet::add_focal(Entry& e) {
    if (e.focal) return;
    for (std::size_t q = 0; q < focal_.size(); ++q) focal_[q].insert(e.keys[q]);
    e.focal = true;
}

void FocalQueueSet::remove_focal(Entry& e) {
    if (!e.focal) return;
    for (std::size_t q = 0; q < focal_.size(); ++q) focal_[q].erase(e.keys[q]);
    e.focal = false;
}

void FocalQueueSet::push(CTNode* node) {
    Entry e;
    e.node = node;
    e.lb = node->lb;
    e.cost = node->cost;
    for (const auto& key : keys_) e.keys.push_back(key(*node));
    auto [it, inserted] = entries_.emplace(node->id, std::move(e));
    if (!inserted) throw Error(ErrorCode::Internal, "CT node pushed twice");
    open_.insert({it->second.lb, node->id});
    by_cost_.insert({it->second.cost, node->id});
    if (it->second.cost <= bound_) add_focal(it->second);
}

void FocalQueueSet::erase(CTNode* node) {
    auto it = entries_.find(node->id);
    if (it == entries_.end()) return;
    remove_focal(it->second);
    open_.erase({it->second.lb, node->id});
    by_cost_.erase({it->second.cost, node->id});
    entries_.erase(it);
}

double FocalQueueSet::min_lb() const {
    return open_.empty() ? std::numeric_limits<double>::infinity() : open_.begin()->first;
}

bool FocalQueueSet::in_focal(long id) const {
    auto it = entries_.find(id);
    return it != entries_.end() && it->second.focal;
}

void FocalQueueSet::refresh() {
    if (open_.empty()) return;
    const double fresh = w_ * min_lb() + kCostTol * std::max(1.0, w_ * min_lb());
    if (fresh > bound_) {
        for (auto it = by_cost_.upper_bound({bound_, std::numeric_limits<long>::max()});
             it != by_cost_.end() && it->first <= fresh; ++it) {
            add_focal(entries_.at(it->second));
        }
    } else if (fresh < bound_) {
        for (auto it = by_cost_.upper_bound({fresh, std::numeric_limits<long>::max()});
             it != by_cost_.end() && it->first <= bound_; ++it) {
            remove_focal(entries_.at(it->second));
        }
    }
    bound_ = fresh;
}

CTNode* FocalQueueSet::top(std::size_t q) {
    fallback_ = false;
    if (open_.empty()) return nullptr;
    refresh();
    if (!focal_.at(q).empty()) return entries_.at(focal_[q].begin()->id).node;
    fallback_ = true;
    return entries_.at(by_cost_.begin()->second).node;
}

// ---------------------------------------------------------------------------

namespace {

struct AlgoInfo {
    Algorithm algo;
    const char* name;
};
constexpr AlgoInfo kAlgos[] = {
    {Algorithm::CBS, "cbs"},         {Algorithm::ECBS, "ecbs"},
    {Algorithm::PP, "pp"},           {Algorithm::ACECBS, "ac-ecbs"},
    {Algorithm::ACECBSLazy, "ac-ecbs-lazy"}, {Algorithm::GenECBS, "gen-ecbs"},
    {Algorithm::GenCBS, "gen-cbs"},
};
constexpr const char* kSubPrefix = "ecbs-sub:";

}  // namespace

std::string AlgorithmSpec::name() const {
    if (algorithm == Algorithm::ECBSSub) {
        if (sphere_alias) return std::string(kSubPrefix) + "sphere(" + sphere_alias + ")";
        return std::string(kSubPrefix) + (substitute ? substitute->name() : "complete");
    }
    for (const auto& a : kAlgos)
        if (a.algo == algorithm) return a.name;
    return "?";
}

AlgorithmSpec AlgorithmSpec::parse(const std::string& text) {
    for (const auto& a : kAlgos)
        if (text == a.name) return {a.algo, std::nullopt, 0};
    const std::string prefix = kSubPrefix;
    if (text.rfind(prefix, 0) == 0) {
        const std::string type = text.substr(prefix.size());
        if (type == "sphere(S)" || type == "sphere(M)" || type == "sphere(L)") {
            return {Algorithm::ECBSSub, std::nullopt, type[7]};
        }
        return {Algorithm::ECBSSub, MenuEntry::parse(type), 0};
    }
    throw Error(ErrorCode::InvalidInput, "unknown algorithm '" + text + "'");
}

std::vector<std::string> algorithm_names() {
    std::vector<std::string> out;
    for (const auto& a : kAlgos) out.emplace_back(a.name);
    out.emplace_back(std::string(kSubPrefix) + "<type>");
    return out;
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

bool is_dynamic(const Constraint& c) {
    return c.type == ConstraintType::StepPriority || c.type == ConstraintType::Priority;
}

AgentId dynamic_other(const Constraint& c) {
    if (c.type == ConstraintType::StepPriority) return std::get<StepPriorityPayload>(c.payload).other;
    return std::get<PriorityPayload>(c.payload).other;
}

MenuEntry resolve_alias(char alias, const ConstraintMenu& menu) {
    std::vector<double> radii;
    for (const auto& e : menu.entries())
        if (e.kind == MenuKind::Sphere) radii.push_back(e.radius);
    if (radii.empty()) throw Error(ErrorCode::InvalidInput, "sphere(S|M|L) needs sphere radii in the menu");
    std::sort(radii.begin(), radii.end());
    switch (alias) {
        case 'S': return MenuEntry::sphere(radii.front());
        case 'M': return MenuEntry::sphere(radii[(radii.size() - 1) / 2]);
        default: return MenuEntry::sphere(radii.back());
    }
}

enum class EvalStatus { Ok, Infeasible, Budget };

class Engine {
public:
    Engine(const Domain& domain, const SolverConfig& config);
    SolverResult run();

private:
    EvalStatus evaluate(CTNode& node);
    bool out_of_budget() const;
    void expand(CTNode& node);
    void discard(const CTNode& node) { nodes_.erase(node.id); }
    CTNode* adopt(std::unique_ptr<CTNode> node);
    SolverResult finish(SolveStatus status, const CTNode* goal);
    void notify(SearchEvent e, const CTNode& node, std::size_t q) const {
        if (config_.observer) config_.observer(e, node, q);
    }

    const Domain& domain_;
    SolverConfig config_;
    ConstraintMenu menu_;
    double w_ = 1.0;
    bool lazy_ = false;
    bool multi_queue_ = false;
    LowLevelMode mode_;
    std::unique_ptr<FocalQueueSet> queues_;
    std::optional<DynamicThompsonSampler> dts_;
    std::unordered_map<long, std::unique_ptr<CTNode>> nodes_;
    long next_id_ = 0;
    SolverStats stats_;
    Clock::time_point started_;
};

Engine::Engine(const Domain& domain, const SolverConfig& config)
    : domain_(domain), config_(config), menu_(ConstraintMenu::complete_only()) {
    const Algorithm algo = config.algorithm.algorithm;
    if (!(config.w >= 1.0)) throw Error(ErrorCode::InvalidInput, "w must be >= 1");
    w_ = config.w;
    switch (algo) {
        case Algorithm::CBS:
            w_ = 1.0;
            break;
        case Algorithm::ECBS:
            break;
        case Algorithm::ECBSSub: {
            MenuEntry entry = config.algorithm.sphere_alias ? resolve_alias(config.algorithm.sphere_alias, config.menu)
                                                            : config.algorithm.substitute.value_or(MenuEntry{});
            menu_ = ConstraintMenu::substitution(entry);
            break;
        }
        case Algorithm::ACECBS:
            menu_ = config.menu;
            break;
        case Algorithm::ACECBSLazy:
            menu_ = config.menu;
            lazy_ = true;
            break;
        case Algorithm::GenECBS:
            menu_ = config.menu;
            lazy_ = multi_queue_ = true;
            break;
        case Algorithm::GenCBS:
            menu_ = config.menu;
            lazy_ = multi_queue_ = true;
            w_ = 1.0;
            break;
        case Algorithm::PP:
            throw Error(ErrorCode::Internal, "PP does not use the constraint-tree engine");
    }
    mode_ = config.low_level.value_or(LowLevelMode::focal(w_));

    std::vector<FocalKeyFn> keys;
    auto conflicts_cost = [](const CTNode& n) {
        return FocalKey{{static_cast<double>(n.conflict_count()), n.cost, 0.0}, n.id};
    };
    if (algo == Algorithm::CBS) {
        keys.push_back([](const CTNode& n) {
            return FocalKey{{n.cost, static_cast<double>(n.conflict_count()), 0.0}, n.id};
        });
    } else if (!multi_queue_) {
        keys.push_back(conflicts_cost);
    } else {
        const bool count_conflicts = algo == Algorithm::GenECBS;
        auto key_for = [count_conflicts](std::optional<std::size_t> slot) -> FocalKeyFn {
            return [count_conflicts, slot](const CTNode& n) {
                const double rho = slot ? rho_tilde(n, *slot) : 0.0;
                if (count_conflicts) return FocalKey{{static_cast<double>(n.conflict_count()), n.cost, rho}, n.id};
                return FocalKey{{n.cost, rho, 0.0}, n.id};
            };
        };
        keys.push_back(key_for(std::nullopt));
        for (std::size_t k = 1; k < menu_.size(); ++k) keys.push_back(key_for(k));

        std::vector<std::pair<double, double>> priors;
        for (const auto& e : menu_.entries()) priors.push_back(e.prior.value_or(std::pair{1.0, 1.0}));
        dts_.emplace(priors, config.dts_cap, config.seed);
    }
    queues_ = std::make_unique<FocalQueueSet>(w_, std::move(keys));

    for (std::size_t q = 0; q < queues_->queue_count(); ++q) {
        QueueStats qs;
        qs.name = multi_queue_ ? menu_.entries()[q].name() : "focal";
        if (dts_) {
            qs.alpha = dts_->alpha(q);
            qs.beta = dts_->beta(q);
        }
        stats_.queues.push_back(qs);
    }
}

bool Engine::out_of_budget() const {
    if (stats_.hl_expansions >= config_.max_expansions) return true;
    const double elapsed = std::chrono::duration<double, std::milli>(Clock::now() - started_).count();
    return elapsed > config_.timeout_ms;
}

EvalStatus Engine::evaluate(CTNode& node) {
    const int n = domain_.num_agents();
    std::set<AgentId> pending(node.agents_replan.begin(), node.agents_replan.end());
    std::vector<Constraint> dynamic;
    for (const auto& c : node.constraints.to_vector())
        if (is_dynamic(c)) dynamic.push_back(c);

    for (int round = 0; !pending.empty(); ++round) {
        if (round > n) return EvalStatus::Infeasible;
        std::set<AgentId> changed;
        for (AgentId a : pending) {
            std::vector<const Path*> others(n, nullptr);
            for (AgentId b = 0; b < n; ++b)
                if (b != a && node.paths[b]) others[b] = node.paths[b].get();
            const ConstraintContext ctx{node.constraints.for_agent(a), std::move(others)};
            PlanResult res = plan(domain_, a, domain_.start(a), domain_.goal(a), ctx, mode_, config_.ll_max_expansions);
            ++stats_.ll_calls;
            stats_.ll_expansions += res.expansions;
            if (res.status == PlanStatus::Infeasible) return EvalStatus::Infeasible;
            if (res.status == PlanStatus::BudgetExceeded) return EvalStatus::Budget;
            node.paths[a] = std::make_shared<const Path>(std::move(res.path));
            node.cost_per_agent[a] = res.cost;
            node.lb_per_agent[a] = std::max(node.lb_per_agent[a], res.lb);
            changed.insert(a);
        }
        pending.clear();
        for (const auto& c : dynamic) {
            if (!changed.count(dynamic_other(c)) || pending.count(c.agent)) continue;
            std::vector<const Path*> others(n, nullptr);
            for (AgentId b = 0; b < n; ++b)
                if (node.paths[b]) others[b] = node.paths[b].get();
            const ConstraintContext ctx{{&c}, std::move(others)};
            if (!ConstraintChecker(domain_, c.agent, ctx).satisfied_by(*node.paths[c.agent])) pending.insert(c.agent);
        }
    }

    std::vector<const Path*> ptrs;
    for (const auto& p : node.paths) ptrs.push_back(p.get());
    node.conflicts = std::make_shared<const std::vector<Conflict>>(find_conflicts(ptrs, domain_));
    node.cost = std::accumulate(node.cost_per_agent.begin(), node.cost_per_agent.end(), 0.0);
    node.lb = std::accumulate(node.lb_per_agent.begin(), node.lb_per_agent.end(), 0.0);
    node.agents_replan.clear();
    return EvalStatus::Ok;
}

CTNode* Engine::adopt(std::unique_ptr<CTNode> node) {
    CTNode* raw = node.get();
    nodes_.emplace(raw->id, std::move(node));
    return raw;
}

void Engine::expand(CTNode& node) {
    const Conflict& conflict = node.conflicts->front();
    std::vector<const Path*> ptrs;
    for (const auto& p : node.paths) ptrs.push_back(p.get());
    const auto pairs = make_constraints(conflict, menu_);
    std::vector<const Constraint*> kept;
    for (const auto& pair : pairs) {
        for (const Constraint* c : {&pair.for_i, &pair.for_j}) {
            bool duplicate = false;
            for (const Constraint* existing : node.constraints.for_agent(c->agent))
                duplicate = duplicate || same_effect(*existing, *c, domain_, ptrs);
            for (const Constraint* sibling : kept)
                duplicate = duplicate || same_effect(*sibling, *c, domain_, ptrs);
            if (duplicate) continue;
            kept.push_back(c);

            auto child = std::make_unique<CTNode>();
            child->id = next_id_++;
            child->parent = node.id;
            child->constraints = node.constraints.with(*c);
            child->paths = node.paths;
            child->cost_per_agent = node.cost_per_agent;
            child->lb_per_agent = node.lb_per_agent;
            child->cost = node.cost;
            child->lb = node.lb;
            child->conflicts = node.conflicts;
            child->agents_replan = {c->agent};
            child->last_slot = pair.slot;
            child->slot_counts = node.slot_counts;
            ++child->slot_counts[pair.slot];
            ++stats_.nodes_generated;
            notify(SearchEvent::Generated, *child, 0);
            if (!lazy_) {
                ++stats_.hl_evaluations;
                if (evaluate(*child) != EvalStatus::Ok) continue;
                notify(SearchEvent::Evaluated, *child, 0);
            }
            queues_->push(adopt(std::move(child)));
        }
    }
}

SolverResult Engine::finish(SolveStatus status, const CTNode* goal) {
    SolverResult result;
    result.status = status;
    stats_.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - started_).count();
    if (goal) {
        result.solution = goal->solution();
        stats_.cost = goal->cost;
        stats_.lb = std::min(queues_->min_lb(), goal->lb);
    } else {
        stats_.lb = queues_->empty() ? 0.0 : queues_->min_lb();
    }
    if (dts_) {
        for (std::size_t q = 0; q < stats_.queues.size(); ++q) {
            stats_.queues[q].alpha = dts_->alpha(q);
            stats_.queues[q].beta = dts_->beta(q);
        }
    }
    result.stats = stats_;
    return result;
}

SolverResult Engine::run() {
    started_ = Clock::now();
    const int n = domain_.num_agents();
    auto root = std::make_unique<CTNode>();
    root->id = next_id_++;
    root->paths.resize(n);
    root->cost_per_agent.assign(n, 0.0);
    root->lb_per_agent.assign(n, 0.0);
    root->slot_counts.assign(menu_.size(), 0);
    root->agents_replan.resize(n);
    std::iota(root->agents_replan.begin(), root->agents_replan.end(), 0);
    ++stats_.nodes_generated;
    ++stats_.hl_evaluations;
    notify(SearchEvent::Generated, *root, 0);
    if (evaluate(*root) != EvalStatus::Ok) return finish(SolveStatus::Exhausted, nullptr);
    notify(SearchEvent::Evaluated, *root, 0);
    queues_->push(adopt(std::move(root)));

    const bool certified = mode_.kind == LowLevelMode::Kind::Focal && mode_.weight <= w_;
    while (true) {
        if (queues_->empty()) return finish(SolveStatus::Exhausted, nullptr);
        if (out_of_budget()) return finish(SolveStatus::Timeout, nullptr);

        const std::size_t q = dts_ ? dts_->sample() : 0;
        CTNode* node = queues_->top(q);
        ++stats_.queues[q].selections;
        if (certified && node->cost > w_ * queues_->min_lb() + kCostTol * std::max(1.0, w_ * queues_->min_lb())) {
            throw Error(ErrorCode::Internal, "selected CT node violates the focal bound");
        }

        if (!node->evaluated()) {
            queues_->erase(node);
            const std::size_t before = node->conflict_count();
            ++stats_.hl_evaluations;
            const EvalStatus st = evaluate(*node);
            const bool improved = st == EvalStatus::Ok && node->conflict_count() < before;
            if (dts_) {
                if (improved) {
                    dts_->reward(q);
                    ++stats_.queues[q].rewards;
                } else {
                    dts_->penalize(q);
                    ++stats_.queues[q].penalties;
                }
            }
            if (st != EvalStatus::Ok) {
                discard(*node);
                continue;
            }
            notify(SearchEvent::Evaluated, *node, q);
            queues_->push(node);
            continue;
        }

        if (node->conflict_count() == 0) {
            notify(SearchEvent::Returned, *node, q);
            return finish(SolveStatus::Solved, node);
        }

        queues_->erase(node);
        ++stats_.hl_expansions;
        notify(SearchEvent::Expanded, *node, q);
        expand(*node);
        discard(*node);
    }
}

SolverResult solve_prioritized(const Domain& domain, const SolverConfig& config) {
    const auto started = Clock::now();
    const int n = domain.num_agents();
    const LowLevelMode mode = config.low_level.value_or(LowLevelMode::focal(1.0));
    std::mt19937_64 rng(config.seed);

    std::vector<AgentId> order = config.pp_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
    } else {
        std::vector<AgentId> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int a = 0; a < n; ++a)
            if (static_cast<int>(sorted.size()) != n || sorted[a] != a)
                throw Error(ErrorCode::InvalidInput, "PP order must be a permutation of the agents");
    }

    SolverResult result;
    QueueStats qs;
    qs.name = "pp";
    result.stats.queues.push_back(qs);
    auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - started).count(); };
    result.status = SolveStatus::Exhausted;

    for (int attempt = 0; attempt <= std::max(0, config.pp_retries); ++attempt) {
        if (attempt > 0) {
            if (elapsed() > config.timeout_ms) {
                result.status = SolveStatus::Timeout;
                break;
            }
            std::shuffle(order.begin(), order.end(), rng);
        }
        ++result.stats.hl_expansions;
        std::vector<std::optional<Path>> paths(n);
        std::vector<Constraint> owned;
        owned.reserve(n * n);
        double cost = 0.0;
        double lb = 0.0;
        bool ok = true;
        for (std::size_t idx = 0; idx < order.size() && ok; ++idx) {
            const AgentId a = order[idx];
            ConstraintContext ctx;
            ctx.other_paths.assign(n, nullptr);
            for (std::size_t k = 0; k < idx; ++k) {
                owned.push_back(Constraint::priority(a, order[k]));
                ctx.constraints.push_back(&owned.back());
                ctx.other_paths[order[k]] = &*paths[order[k]];
            }
            PlanResult res = plan(domain, a, domain.start(a), domain.goal(a), ctx, mode, config.ll_max_expansions);
            ++result.stats.ll_calls;
            result.stats.ll_expansions += res.expansions;
            if (res.status != PlanStatus::Found) {
                ok = false;
                break;
            }
            cost += res.cost;
            lb += res.lb;
            paths[a] = std::move(res.path);
        }
        if (ok) {
            Solution s;
            for (auto& p : paths) s.push_back(std::move(*p));
            result.status = SolveStatus::Solved;
            result.solution = std::move(s);
            result.stats.cost = cost;
            result.stats.lb = lb;
            break;
        }
    }
    result.stats.runtime_ms = elapsed();
    return result;
}

}  // namespace

SolverResult solve(const Domain& domain, const SolverConfig& config) {
    if (config.algorithm.algorithm == Algorithm::PP) return solve_prioritized(domain, config);
    Engine engine(domain, config);
    return engine.run();
}

namespace {
SolverConfig with_budget(Algorithm algo, Budget budget) {
    SolverConfig c;
    c.algorithm.algorithm = algo;
    c.max_expansions = budget.max_expansions;
    c.timeout_ms = budget.timeout_ms;
    return c;
}
}  // namespace

SolverResult solve_cbs(const Domain& domain, Budget budget) {
    return solve(domain, with_budget(Algorithm::CBS, budget));
}

SolverResult solve_ecbs(const Domain& domain, double w, Budget budget) {
    SolverConfig c = with_budget(Algorithm::ECBS, budget);
    c.w = w;
    return solve(domain, c);
}

SolverResult solve_pp(const Domain& domain, std::vector<AgentId> order, int retries, std::uint64_t seed,
                      Budget budget) {
    SolverConfig c = with_budget(Algorithm::PP, budget);
    c.pp_order = std::move(order);
    c.pp_retries = retries;
    c.seed = seed;
    return solve(domain, c);
}

SolverResult solve_ac_ecbs(const Domain& domain, double w, const ConstraintMenu& menu, bool lazy, Budget budget) {
    SolverConfig c = with_budget(lazy ? Algorithm::ACECBSLazy : Algorithm::ACECBS, budget);
    c.w = w;
    c.menu = menu;
    return solve(domain, c);
}

SolverResult solve_gen_ecbs(const Domain& domain, double w, const ConstraintMenu& menu, std::uint64_t seed,
                            Budget budget) {
    SolverConfig c = with_budget(Algorithm::GenECBS, budget);
    c.w = w;
    c.menu = menu;
    c.seed = seed;
    return solve(domain, c);
}

}  // namespace gecbs
