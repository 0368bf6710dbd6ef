#include "gecbs/constraints.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#include "gecbs/low_level.hpp"

namespace gecbs {

const char* to_string(MenuKind k) {
    switch (k) {
        case MenuKind::Complete: return "complete";
        case MenuKind::Sphere: return "sphere";
        case MenuKind::Avoidance: return "avoidance";
        case MenuKind::StepPriority: return "step-priority";
        case MenuKind::Priority: return "priority";
    }
    return "?";
}

std::string MenuEntry::name() const {
    if (kind != MenuKind::Sphere) return to_string(kind);
    char buf[64];
    std::snprintf(buf, sizeof buf, "sphere(%g)", radius);
    return buf;
}

MenuEntry MenuEntry::parse(const std::string& text) {
    for (auto k : {MenuKind::Complete, MenuKind::Avoidance, MenuKind::StepPriority, MenuKind::Priority}) {
        if (text == to_string(k)) return of(k);
    }
    const std::string prefix = "sphere(";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
        const std::string num = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        try {
            std::size_t used = 0;
            const double r = std::stod(num, &used);
            if (used == num.size()) return sphere(r);
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorCode::InvalidInput, "unknown constraint type '" + text + "'");
}

namespace {
void validate_entries(const std::vector<MenuEntry>& entries) {
    std::set<double> radii;
    std::set<MenuKind> kinds;
    for (const auto& e : entries) {
        if (e.kind == MenuKind::Sphere) {
            if (!(e.radius >= 0.0)) throw Error(ErrorCode::InvalidInput, "sphere radius must be >= 0");
            if (!radii.insert(e.radius).second) throw Error(ErrorCode::InvalidInput, "duplicate sphere radius");
        } else if (!kinds.insert(e.kind).second) {
            throw Error(ErrorCode::InvalidInput, std::string("duplicate menu entry ") + to_string(e.kind));
        }
        if (e.prior && (e.prior->first < 1.0 || e.prior->second < 1.0)) {
            throw Error(ErrorCode::InvalidInput, "DTS prior parameters must be >= 1");
        }
    }
}
}  // namespace

ConstraintMenu::ConstraintMenu(std::vector<MenuEntry> entries) {
    validate_entries(entries);
    auto complete = std::find_if(entries.begin(), entries.end(), [](const MenuEntry& e) { return e.complete(); });
    if (complete == entries.end()) {
        throw Error(ErrorCode::InvalidInput, "constraint menu must contain the complete (vertex/edge) type");
    }
    for (const auto& e : entries) {
        if (e.kind == MenuKind::Sphere && !(e.radius > 0.0)) {
            throw Error(ErrorCode::InvalidInput, "menu sphere radii must be strictly positive");
        }
    }
    entries_.push_back(*complete);
    for (const auto& e : entries)
        if (!e.complete()) entries_.push_back(e);
}

ConstraintMenu ConstraintMenu::complete_only() { return ConstraintMenu({MenuEntry::complete_entry()}); }

ConstraintMenu ConstraintMenu::substitution(MenuEntry entry) {
    if (entry.complete()) return complete_only();
    validate_entries({entry});
    ConstraintMenu m;
    m.entries_.push_back(entry);
    return m;
}

int ConstraintMenu::incomplete_count() const {
    return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                          [](const MenuEntry& e) { return !e.complete(); }));
}

ConstraintPair make_constraint_pair(const Conflict& conflict, const MenuEntry& entry, std::size_t slot) {
    const AgentId i = conflict.agent_i;
    const AgentId j = conflict.agent_j;
    const Time t = conflict.time;
    const bool edge = conflict.kind == ConflictKind::Edge;
    ConstraintPair pair;
    pair.slot = slot;
    switch (entry.kind) {
        case MenuKind::Complete:
            if (edge) {
                pair.for_i = Constraint::edge(i, t, conflict.configs_i[0], conflict.configs_i[1]);
                pair.for_j = Constraint::edge(j, t, conflict.configs_j[0], conflict.configs_j[1]);
            } else {
                pair.for_i = Constraint::vertex(i, t, conflict.configs_i[0]);
                pair.for_j = Constraint::vertex(j, t, conflict.configs_j[0]);
            }
            break;
        case MenuKind::Sphere:
            pair.for_i = Constraint::sphere(i, t, edge, conflict.point, entry.radius);
            pair.for_j = Constraint::sphere(j, t, edge, conflict.point, entry.radius);
            break;
        case MenuKind::Avoidance:
            pair.for_i = Constraint::avoidance(i, t, j, conflict.configs_j);
            pair.for_j = Constraint::avoidance(j, t, i, conflict.configs_i);
            break;
        case MenuKind::StepPriority:
            pair.for_i = Constraint::step_priority(i, t, edge, j);
            pair.for_j = Constraint::step_priority(j, t, edge, i);
            break;
        case MenuKind::Priority:
            pair.for_i = Constraint::priority(i, j);
            pair.for_j = Constraint::priority(j, i);
            break;
    }
    return pair;
}

std::vector<ConstraintPair> make_constraints(const Conflict& conflict, const ConstraintMenu& menu) {
    std::vector<ConstraintPair> out;
    out.reserve(menu.size());
    for (std::size_t k = 0; k < menu.size(); ++k) out.push_back(make_constraint_pair(conflict, menu.entries()[k], k));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

using Item = std::vector<Configuration>;  // one config, or a transition

std::vector<Item> violating_items(const Constraint& c, const Domain& domain, const ConstraintContext& ctx,
                                  long budget, std::mt19937_64& rng) {
    const AgentId a = c.agent;
    const Time t = c.time.value_or(0);
    ConstraintChecker checker(domain, a, ctx);
    auto violates = [&](const Item& item) {
        return item.size() == 1 ? checker.vertex_forbidden(item[0], t) : checker.edge_forbidden(item[0], item[1], t);
    };
    auto items_of = [&](const Configuration& q, std::vector<Item>& out) {
        if (!domain.config_valid(a, q)) return;
        if (!c.on_edge) {
            Item item{q};
            if (violates(item)) out.push_back(std::move(item));
            return;
        }
        for (const auto& s : domain.successors(a, q)) {
            Item item{q, s.config};
            if (violates(item)) out.push_back(std::move(item));
        }
    };
    std::vector<Item> out;
    const StateId count = domain.state_count(a);
    if (count <= budget) {
        for (StateId id = 0; id < count; ++id) items_of(domain.decode(a, id), out);
    } else {
        std::uniform_int_distribution<StateId> pick(0, count - 1);
        for (long k = 0; k < budget; ++k) items_of(domain.decode(a, pick(rng)), out);
    }
    return out;
}

bool items_collide(const Domain& domain, AgentId i, const Item& a, AgentId j, const Item& b) {
    if (a.size() == 1 && b.size() == 1) return domain.agents_collide(i, a[0], j, b[0]).has_value();
    const Item ea = a.size() == 1 ? Item{a[0], a[0]} : a;
    const Item eb = b.size() == 1 ? Item{b[0], b[0]} : b;
    return domain.edge_collides(i, ea[0], ea[1], j, eb[0], eb[1], domain.check_substeps()).has_value();
}

}  // namespace

DisjunctiveCheck mutually_disjunctive_check(const Constraint& c_i, const Constraint& c_j, const Domain& domain,
                                            long sample_budget, std::uint64_t seed,
                                            const std::vector<const Path*>& paths) {
    std::mt19937_64 rng(seed);
    ConstraintContext ctx_i{{&c_i}, paths};
    ConstraintContext ctx_j{{&c_j}, paths};
    const bool exhaustive = dynamic_cast<const GridDomain*>(&domain) != nullptr;
    const long per_agent_budget = exhaustive ? std::numeric_limits<long>::max() : sample_budget;
    const auto vi = violating_items(c_i, domain, ctx_i, per_agent_budget, rng);
    const auto vj = violating_items(c_j, domain, ctx_j, per_agent_budget, rng);

    DisjunctiveCheck out;
    auto test = [&](const Item& a, const Item& b) {
        ++out.pairs_checked;
        if (items_collide(domain, c_i.agent, a, c_j.agent, b)) return false;
        out.confirmed = false;
        out.witness_i = a;
        out.witness_j = b;
        return true;
    };
    const long total = static_cast<long>(vi.size()) * static_cast<long>(vj.size());
    if (vi.empty() || vj.empty()) return out;
    if (exhaustive || total <= sample_budget) {
        for (const auto& a : vi)
            for (const auto& b : vj)
                if (test(a, b)) return out;
        return out;
    }
    std::uniform_int_distribution<std::size_t> pick_i(0, vi.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_j(0, vj.size() - 1);
    for (long k = 0; k < sample_budget; ++k) {
        if (test(vi[pick_i(rng)], vj[pick_j(rng)])) return out;
    }
    return out;
}

bool same_effect(const Constraint& a, const Constraint& b, const Domain& domain, const std::vector<const Path*>& paths,
                 StateId max_states) {
    if (a == b) return true;
    if (a.agent != b.agent || !a.time || !b.time) return false;
    if (std::max(*a.time, *b.time) - std::min(*a.time, *b.time) > 1) return false;
    if (domain.state_count(a.agent) > max_states) return false;
    const ConstraintContext ctx_a{{&a}, paths};
    const ConstraintContext ctx_b{{&b}, paths};
    const ConstraintChecker ca(domain, a.agent, ctx_a);
    const ConstraintChecker cb(domain, b.agent, ctx_b);
    std::set<Time> vertex_times, edge_times;
    for (Time t : {*a.time, *b.time}) {
        vertex_times.insert({t, t + 1});
        edge_times.insert(t);
        if (t > 0) edge_times.insert(t - 1);
    }
    for (StateId id = 0; id < domain.state_count(a.agent); ++id) {
        const Configuration q = domain.decode(a.agent, id);
        if (!domain.config_valid(a.agent, q)) continue;
        for (Time t : vertex_times)
            if (ca.vertex_forbidden(q, t) != cb.vertex_forbidden(q, t)) return false;
        for (const auto& s : domain.successors(a.agent, q))
            for (Time t : edge_times)
                if (ca.edge_forbidden(q, s.config, t) != cb.edge_forbidden(q, s.config, t)) return false;
    }
    return true;
}

}  // namespace gecbs
