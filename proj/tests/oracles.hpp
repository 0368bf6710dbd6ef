#pragma once

// Independent reference implementations used as test oracles. They only rely
// on the grid layout (width, height, blocked cells), never on solver code.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gecbs/domain.hpp"

namespace oracle {

using Cell = std::pair<int, int>;

struct Grid {
    int width = 0;
    int height = 0;
    std::set<Cell> blocked;

    explicit Grid(const gecbs::GridDomain& d) : width(d.width()), height(d.height()) {
        for (auto c : d.blocked_cells()) blocked.insert(c);
    }
    bool free(Cell c) const {
        return c.first >= 0 && c.second >= 0 && c.first < width && c.second < height && !blocked.count(c);
    }
    // Moves then wait, so an agent can always stay.
    std::vector<Cell> next(Cell c) const {
        static const int dx[] = {1, -1, 0, 0};
        static const int dy[] = {0, 0, 1, -1};
        std::vector<Cell> out;
        for (int k = 0; k < 4; ++k) {
            Cell n{c.first + dx[k], c.second + dy[k]};
            if (free(n)) out.push_back(n);
        }
        out.push_back(c);
        return out;
    }
    int index(Cell c) const { return c.first * height + c.second; }
};

inline Cell cell(const gecbs::Configuration& q) { return {q[0], q[1]}; }

/// Breadth-first distances from `from` to every reachable cell.
inline std::map<Cell, int> bfs(const Grid& g, Cell from) {
    std::map<Cell, int> dist;
    std::queue<Cell> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        Cell c = q.front();
        q.pop();
        for (Cell n : g.next(c)) {
            if (dist.count(n)) continue;
            dist[n] = dist[c] + 1;
            q.push(n);
        }
    }
    return dist;
}

inline int bfs_distance(const Grid& g, Cell from, Cell to) {
    auto d = bfs(g, from);
    auto it = d.find(to);
    return it == d.end() ? -1 : it->second;
}

/// Time-expanded brute force for one grid agent under vertex constraints
/// {(cell, t)} and edge constraints {(from, to, t)}: the smallest arrival time
/// T such that the goal is reachable at T and may be kept forever after.
/// Returns -1 when no such T <= horizon exists.
struct TimedConstraints {
    std::set<std::pair<Cell, int>> vertex;
    std::set<std::tuple<Cell, Cell, int>> edge;
};

inline int time_expanded_optimum(const Grid& g, Cell start, Cell goal, const TimedConstraints& c, int horizon) {
    int last = 0;
    for (const auto& v : c.vertex) last = std::max(last, v.second);
    for (const auto& e : c.edge) last = std::max(last, std::get<2>(e) + 1);
    auto goal_free_from = [&](int t) {
        for (int s = t; s <= last; ++s) {
            if (c.vertex.count({goal, s})) return false;
            if (s > t && c.edge.count({goal, goal, s - 1})) return false;
        }
        return true;
    };
    if (c.vertex.count({start, 0})) return -1;
    std::set<Cell> layer{start};
    for (int t = 0; t <= horizon; ++t) {
        if (layer.count(goal) && goal_free_from(t)) return t;
        std::set<Cell> next;
        for (Cell a : layer) {
            for (Cell b : g.next(a)) {
                if (c.edge.count({a, b, t}) || c.vertex.count({b, t + 1})) continue;
                next.insert(b);
            }
        }
        layer = std::move(next);
        if (layer.empty()) return -1;
    }
    return -1;
}

/// Optimal sum of costs by A* in the composite joint space. A state holds every
/// agent's cell plus a flag marking agents that have finished (parked at their
/// goal forever, paying nothing). Unfinished agents pay 1 per step, waits
/// included. Conflicts: same cell, or two agents swapping cells.
inline std::optional<int> joint_astar(const Grid& g, const std::vector<Cell>& starts, const std::vector<Cell>& goals,
                                      long max_expansions = 5000000) {
    const int n = static_cast<int>(starts.size());
    std::vector<std::map<Cell, int>> h(n);
    for (int a = 0; a < n; ++a) {
        h[a] = bfs(g, goals[a]);
        if (!h[a].count(starts[a])) return std::nullopt;
    }
    struct State {
        std::vector<Cell> pos;
        unsigned done = 0;
        bool operator<(const State& o) const { return done != o.done ? done < o.done : pos < o.pos; }
    };
    auto heuristic = [&](const State& s) {
        int sum = 0;
        for (int a = 0; a < n; ++a)
            if (!(s.done >> a & 1u)) sum += h[a].at(s.pos[a]);
        return sum;
    };
    const unsigned all = (1u << n) - 1;
    std::map<State, int> best;
    using Item = std::tuple<int, int, long, State>;  // f, -g, seq, state
    auto cmp = [](const Item& x, const Item& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
        if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) > std::get<1>(y);
        return std::get<2>(x) > std::get<2>(y);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> open(cmp);
    State root{starts, 0};
    best[root] = 0;
    long seq = 0;
    open.emplace(heuristic(root), 0, seq++, root);
    long expansions = 0;
    while (!open.empty()) {
        auto [f, neg_g, id, s] = open.top();
        open.pop();
        const int gcost = -neg_g;
        if (best[s] < gcost) continue;
        if (s.done == all) return gcost;
        if (++expansions > max_expansions) return std::nullopt;
        // Per agent options: (next cell, finishes now).
        std::vector<std::vector<std::pair<Cell, bool>>> opts(n);
        for (int a = 0; a < n; ++a) {
            if (s.done >> a & 1u) {
                opts[a].push_back({s.pos[a], true});
                continue;
            }
            for (Cell c : g.next(s.pos[a])) opts[a].push_back({c, false});
            if (s.pos[a] == goals[a]) opts[a].push_back({s.pos[a], true});
        }
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            State t;
            t.pos.resize(n);
            t.done = s.done;
            int step = 0;
            for (int a = 0; a < n; ++a) {
                t.pos[a] = opts[a][pick[a]].first;
                if (opts[a][pick[a]].second) t.done |= 1u << a;
                else ++step;
            }
            bool ok = true;
            for (int a = 0; a < n && ok; ++a)
                for (int b = a + 1; b < n && ok; ++b) {
                    if (t.pos[a] == t.pos[b]) ok = false;
                    if (t.pos[a] == s.pos[b] && t.pos[b] == s.pos[a] && t.pos[a] != s.pos[a]) ok = false;
                }
            if (ok) {
                const int ng = gcost + step;
                auto it = best.find(t);
                if (it == best.end() || ng < it->second) {
                    best[t] = ng;
                    open.emplace(ng + heuristic(t), -ng, seq++, t);
                }
            }
            int k = 0;
            while (k < n && ++pick[k] == opts[k].size()) pick[k++] = 0;
            if (k == n) break;
        }
    }
    return std::nullopt;
}

/// Independent validity check of a grid solution; returns an empty string when
/// valid, otherwise a description of the first problem found.
inline std::string check_grid_solution(const Grid& g, const std::vector<Cell>& starts, const std::vector<Cell>& goals,
                                       const std::vector<std::vector<Cell>>& paths) {
    const std::size_t n = starts.size();
    if (paths.size() != n) return "wrong path count";
    std::size_t horizon = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const auto& p = paths[a];
        if (p.empty()) return "empty path";
        if (p.front() != starts[a]) return "wrong start";
        if (p.back() != goals[a]) return "wrong goal";
        for (std::size_t t = 0; t < p.size(); ++t) {
            if (!g.free(p[t])) return "blocked cell";
            if (t > 0) {
                const int d = std::abs(p[t].first - p[t - 1].first) + std::abs(p[t].second - p[t - 1].second);
                if (d > 1) return "jump";
            }
        }
        horizon = std::max(horizon, p.size());
    }
    auto at = [&](std::size_t a, std::size_t t) { return paths[a][std::min(t, paths[a].size() - 1)]; };
    for (std::size_t t = 0; t < horizon; ++t)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                if (at(a, t) == at(b, t)) return "vertex conflict";
                if (t + 1 < horizon && at(a, t) == at(b, t + 1) && at(b, t) == at(a, t + 1) && at(a, t) != at(a, t + 1))
                    return "swap conflict";
            }
    return {};
}

/// Sum over agents of the final goal arrival index.
inline int grid_sum_of_costs(const std::vector<std::vector<Cell>>& paths) {
    int sum = 0;
    for (const auto& p : paths) {
        int T = static_cast<int>(p.size()) - 1;
        while (T > 0 && p[T - 1] == p.back()) --T;
        sum += T;
    }
    return sum;
}

}  // namespace oracle
