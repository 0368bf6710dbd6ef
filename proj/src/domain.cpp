#include "gecbs/domain.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace gecbs {

namespace geometry {

namespace {
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
Point2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 add_scaled(Point2 a, Point2 d, double s) { return {a.x + d.x * s, a.y + d.y * s}; }
double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
}  // namespace

double point_segment_distance(Point2 p, const Segment& s) {
    const Point2 d = sub(s.b, s.a);
    const double len2 = dot(d, d);
    double u = len2 > 0.0 ? dot(sub(p, s.a), d) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return dist(p, add_scaled(s.a, d, u));
}

ClosestPoints closest_points(const Segment& s1, const Segment& s2) {
    const Point2 d1 = sub(s1.b, s1.a);
    const Point2 d2 = sub(s2.b, s2.a);
    const Point2 r = sub(s1.a, s2.a);
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    constexpr double tiny = 1e-15;
    double s = 0.0;
    double t = 0.0;
    if (a <= tiny && e <= tiny) {
        s = t = 0.0;
    } else if (a <= tiny) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= tiny) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > tiny ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    ClosestPoints out;
    out.on_first = add_scaled(s1.a, d1, s);
    out.on_second = add_scaled(s2.a, d2, t);
    out.distance = dist(out.on_first, out.on_second);
    return out;
}

}  // namespace geometry

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(std::vector<Configuration> starts, std::vector<Configuration> goals, int substeps)
    : starts_(std::move(starts)), goals_(std::move(goals)), substeps_(substeps) {
    if (starts_.size() != goals_.size()) {
        throw Error(ErrorCode::InvalidInput, "number of starts and goals differ");
    }
    if (substeps_ < 1) throw Error(ErrorCode::InvalidInput, "substeps must be >= 1");
}

double Domain::transition_cost(const Configuration&, const Configuration&) const { return 1.0; }

void Domain::validate_endpoints() const {
    const int n = num_agents();
    for (int a = 0; a < n; ++a) {
        for (const auto* q : {&starts_[a], &goals_[a]}) {
            if (q->size() != dims(a) || !config_valid(a, *q)) {
                throw Error(ErrorCode::InvalidInput,
                            "agent " + std::to_string(a) + " start or goal is out of bounds or in collision");
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (agents_collide(i, starts_[i], j, starts_[j])) {
                throw Error(ErrorCode::InvalidInput,
                            "starts of agents " + std::to_string(i) + " and " + std::to_string(j) + " collide");
            }
            if (agents_collide(i, goals_[i], j, goals_[j])) {
                throw Error(ErrorCode::InvalidInput,
                            "goals of agents " + std::to_string(i) + " and " + std::to_string(j) + " collide");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// GridDomain

GridDomain::GridDomain(int width, int height, std::vector<std::pair<int, int>> blocked,
                       std::vector<Configuration> starts, std::vector<Configuration> goals)
    : Domain(std::move(starts), std::move(goals), 1), width_(width), height_(height) {
    if (width_ <= 0 || height_ <= 0) throw Error(ErrorCode::InvalidInput, "grid extents must be positive");
    blocked_.assign(static_cast<std::size_t>(width_) * height_, 0);
    for (auto [x, y] : blocked) {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) {
            throw Error(ErrorCode::InvalidInput, "blocked cell out of bounds");
        }
        blocked_[static_cast<std::size_t>(x) * height_ + y] = 1;
    }
    for (auto b : blocked_) free_cells_ += b == 0;
    validate_endpoints();
}

std::vector<std::pair<int, int>> GridDomain::blocked_cells() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < width_; ++x)
        for (int y = 0; y < height_; ++y)
            if (blocked(x, y)) out.emplace_back(x, y);
    return out;
}

bool GridDomain::in_bounds(AgentId, const Configuration& q) const {
    return q.size() == 2 && q[0] >= 0 && q[1] >= 0 && q[0] < width_ && q[1] < height_;
}

bool GridDomain::config_valid(AgentId a, const Configuration& q) const {
    return in_bounds(a, q) && !blocked(q[0], q[1]);
}

bool GridDomain::transition_valid(AgentId a, const Configuration& from, const Configuration& to, int) const {
    if (!config_valid(a, from) || !config_valid(a, to)) return false;
    return std::abs(from[0] - to[0]) + std::abs(from[1] - to[1]) <= 1;
}

std::vector<Successor> GridDomain::successors(AgentId a, const Configuration& q) const {
    static constexpr int kMoves[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<Successor> out;
    out.reserve(5);
    for (const auto& m : kMoves) {
        Configuration next{q[0] + m[0], q[1] + m[1]};
        if (config_valid(a, next)) out.push_back({next, 1.0});
    }
    return out;
}

double GridDomain::heuristic(AgentId, const Configuration& q, const Configuration& goal) const {
    return std::abs(q[0] - goal[0]) + std::abs(q[1] - goal[1]);
}

std::optional<Point2> GridDomain::agents_collide(AgentId, const Configuration& qi, AgentId,
                                                 const Configuration& qj) const {
    if (qi == qj) return cell_center(qi);
    return std::nullopt;
}

std::optional<EdgeHit> GridDomain::edge_collides(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                 AgentId j, const Configuration& qj, const Configuration& qj2,
                                                 int substeps) const {
    if (qi == qj) return EdgeHit{cell_center(qi), 0.0};
    if (auto hit = edge_collides_interior(i, qi, qi2, j, qj, qj2, substeps)) return hit;
    if (qi2 == qj2) return EdgeHit{cell_center(qi2), 1.0};
    return std::nullopt;
}

std::optional<EdgeHit> GridDomain::edge_collides_interior(AgentId, const Configuration& qi, const Configuration& qi2,
                                                          AgentId, const Configuration& qj, const Configuration& qj2,
                                                          int) const {
    if (qi2 == qj && qj2 == qi && !(qi == qi2)) {
        const Point2 a = cell_center(qi);
        const Point2 b = cell_center(qj);
        return EdgeHit{{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}, 0.5};
    }
    return std::nullopt;
}

bool GridDomain::occupancy_intersects_circle(AgentId, const Configuration& q, Point2 center, double radius) const {
    const Point2 c = cell_center(q);
    return std::hypot(c.x - center.x, c.y - center.y) <= radius + 0.5 * geometry::kEps;
}

bool GridDomain::transition_intersects_circle(AgentId, const Configuration& from, const Configuration& to,
                                              Point2 center, double radius, int substeps) const {
    const Point2 a = cell_center(from);
    const Point2 b = cell_center(to);
    for (int k = 0; k <= substeps; ++k) {
        const double s = static_cast<double>(k) / substeps;
        const Point2 p{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
        if (std::hypot(p.x - center.x, p.y - center.y) <= radius + 0.5 * geometry::kEps) return true;
    }
    return false;
}

StateId GridDomain::encode(AgentId, const Configuration& q) const {
    return static_cast<StateId>(q[0]) * height_ + q[1];
}

Configuration GridDomain::decode(AgentId, StateId id) const {
    return Configuration{static_cast<int>(id / height_), static_cast<int>(id % height_)};
}

// ---------------------------------------------------------------------------
// PlanarArmDomain

namespace {
constexpr StateId kMaxTabulatedStates = 400000;
}

PlanarArmDomain::PlanarArmDomain(std::vector<ArmSpec> arms, std::vector<Circle> obstacles, double delta,
                                 std::vector<Configuration> starts, std::vector<Configuration> goals, int substeps)
    : Domain(std::move(starts), std::move(goals), substeps),
      arms_(std::move(arms)),
      obstacles_(std::move(obstacles)),
      delta_(delta) {
    if (!(delta_ > 0.0)) throw Error(ErrorCode::InvalidInput, "joint discretization must be positive");
    if (static_cast<int>(arms_.size()) != num_agents()) {
        throw Error(ErrorCode::InvalidInput, "one arm description per agent is required");
    }
    for (const auto& arm : arms_) {
        if (arm.links.empty() || arm.links.size() > Configuration::kMaxDims) {
            throw Error(ErrorCode::InvalidInput, "arms need between 1 and 8 links");
        }
        if (arm.joint_limits.size() != arm.links.size()) {
            throw Error(ErrorCode::InvalidInput, "one joint limit per link is required");
        }
        for (auto [lo, hi] : arm.joint_limits) {
            if (lo > hi) throw Error(ErrorCode::InvalidInput, "joint limit lower bound exceeds upper bound");
        }
        for (double l : arm.links) {
            if (!(l > 0.0)) throw Error(ErrorCode::InvalidInput, "link lengths must be positive");
        }
        if (!(arm.thickness >= 0.0)) throw Error(ErrorCode::InvalidInput, "link thickness must be >= 0");
    }
    for (const auto& c : obstacles_) {
        if (!(c.radius >= 0.0)) throw Error(ErrorCode::InvalidInput, "obstacle radius must be >= 0");
    }
    build_tables();
    validate_endpoints();
}

double PlanarArmDomain::reach(AgentId a) const {
    double r = 0.0;
    for (double l : arms_.at(a).links) r += l;
    return r;
}

std::vector<Segment> PlanarArmDomain::forward_kinematics(AgentId a, const double* joint_indices) const {
    const auto& arm = arms_.at(a);
    std::vector<Segment> segs;
    segs.reserve(arm.links.size());
    Point2 p = arm.base;
    double angle = arm.base_angle;
    for (std::size_t k = 0; k < arm.links.size(); ++k) {
        angle += joint_indices[k] * delta_;
        Point2 next{p.x + arm.links[k] * std::cos(angle), p.y + arm.links[k] * std::sin(angle)};
        segs.push_back({p, next});
        p = next;
    }
    return segs;
}

std::vector<Segment> PlanarArmDomain::forward_kinematics(AgentId a, const Configuration& q) const {
    if (!segment_table_.empty() && !segment_table_[a].empty() && in_bounds(a, q)) {
        const std::size_t n = arms_[a].links.size();
        const auto base = segment_table_[a].begin() + static_cast<std::ptrdiff_t>(encode(a, q) * n);
        return {base, base + static_cast<std::ptrdiff_t>(n)};
    }
    double idx[Configuration::kMaxDims];
    for (std::size_t k = 0; k < q.size(); ++k) idx[k] = q[k];
    return forward_kinematics(a, idx);
}

bool PlanarArmDomain::in_bounds(AgentId a, const Configuration& q) const {
    const auto& lim = arms_.at(a).joint_limits;
    if (q.size() != lim.size()) return false;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k] < lim[k].first || q[k] > lim[k].second) return false;
    }
    return true;
}

bool PlanarArmDomain::segments_static_free(const std::vector<Segment>& segs, double eps) const {
    for (const auto& seg : segs) {
        for (const auto& c : obstacles_) {
            if (geometry::point_segment_distance(c.center, seg) <= eps + c.radius + 0.5 * geometry::kEps) return false;
        }
    }
    return true;
}

bool PlanarArmDomain::config_valid(AgentId a, const Configuration& q) const {
    if (!in_bounds(a, q)) return false;
    if (!valid_table_.empty() && !valid_table_[a].empty()) return valid_table_[a][encode(a, q)] != 0;
    return segments_static_free(forward_kinematics(a, q), arms_[a].thickness);
}

bool PlanarArmDomain::is_primitive(AgentId, const Configuration& from, const Configuration& to) const {
    int changed = 0;
    for (std::size_t k = 0; k < from.size(); ++k) {
        const int d = std::abs(from[k] - to[k]);
        if (d > 1) return false;
        changed += d;
    }
    return changed <= 1;
}

bool PlanarArmDomain::transition_valid(AgentId a, const Configuration& from, const Configuration& to,
                                       int substeps) const {
    if (from.size() != dims(a) || to.size() != dims(a)) return false;
    if (!is_primitive(a, from, to) || !config_valid(a, from) || !config_valid(a, to)) return false;
    if (from == to) return true;
    double idx[Configuration::kMaxDims];
    for (int k = 1; k < substeps; ++k) {
        const double s = static_cast<double>(k) / substeps;
        for (std::size_t d = 0; d < from.size(); ++d) idx[d] = from[d] + s * (to[d] - from[d]);
        if (!segments_static_free(forward_kinematics(a, idx), arms_[a].thickness)) return false;
    }
    return true;
}

std::vector<Successor> PlanarArmDomain::successors(AgentId a, const Configuration& q) const {
    std::vector<Successor> out;
    if (!config_valid(a, q)) return out;
    out.push_back({q, 1.0});
    const int substeps = check_substeps();
    for (std::size_t k = 0; k < q.size(); ++k) {
        for (int dir : {1, -1}) {
            Configuration next = q;
            next[k] += dir;
            if (transition_valid(a, q, next, substeps)) out.push_back({next, 1.0});
        }
    }
    return out;
}

double PlanarArmDomain::heuristic(AgentId, const Configuration& q, const Configuration& goal) const {
    double h = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) h += std::abs(q[k] - goal[k]);
    return h;
}

std::optional<Point2> PlanarArmDomain::segments_collide(const std::vector<Segment>& a, double eps_a,
                                                        const std::vector<Segment>& b, double eps_b) const {
    const double threshold = eps_a + eps_b + geometry::kEps;
    for (const auto& sa : a) {
        for (const auto& sb : b) {
            const auto cp = geometry::closest_points(sa, sb);
            if (cp.distance <= threshold) {
                const double w = (eps_a + eps_b) > 0.0 ? eps_a / (eps_a + eps_b) : 0.5;
                return Point2{cp.on_first.x + (cp.on_second.x - cp.on_first.x) * w,
                              cp.on_first.y + (cp.on_second.y - cp.on_first.y) * w};
            }
        }
    }
    return std::nullopt;
}

bool PlanarArmDomain::may_interact(AgentId i, AgentId j) const {
    if (i == j) return false;
    const auto& ai = arms_.at(i);
    const auto& aj = arms_.at(j);
    const double d = std::hypot(ai.base.x - aj.base.x, ai.base.y - aj.base.y);
    return d <= reach(i) + reach(j) + ai.thickness + aj.thickness + geometry::kEps;
}

std::optional<Point2> PlanarArmDomain::agents_collide(AgentId i, const Configuration& qi, AgentId j,
                                                      const Configuration& qj) const {
    // Evaluate in canonical agent order so the predicate is exactly symmetric.
    if (i > j) return agents_collide(j, qj, i, qi);
    if (!may_interact(i, j)) return std::nullopt;
    return segments_collide(forward_kinematics(i, qi), arms_[i].thickness, forward_kinematics(j, qj),
                            arms_[j].thickness);
}

std::optional<EdgeHit> PlanarArmDomain::edge_hit(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                 AgentId j, const Configuration& qj, const Configuration& qj2,
                                                 int substeps, bool interior) const {
    if (i > j) return edge_hit(j, qj, qj2, i, qi, qi2, substeps, interior);
    if (!may_interact(i, j)) return std::nullopt;
    const int first = interior ? 1 : 0;
    const int last = interior ? substeps - 1 : substeps;
    double xi[Configuration::kMaxDims];
    double xj[Configuration::kMaxDims];
    for (int k = first; k <= last; ++k) {
        const double s = static_cast<double>(k) / substeps;
        std::vector<Segment> si;
        std::vector<Segment> sj;
        if (k == 0) {
            si = forward_kinematics(i, qi);
            sj = forward_kinematics(j, qj);
        } else if (k == substeps) {
            si = forward_kinematics(i, qi2);
            sj = forward_kinematics(j, qj2);
        } else {
            for (std::size_t d = 0; d < qi.size(); ++d) xi[d] = qi[d] + s * (qi2[d] - qi[d]);
            for (std::size_t d = 0; d < qj.size(); ++d) xj[d] = qj[d] + s * (qj2[d] - qj[d]);
            si = forward_kinematics(i, xi);
            sj = forward_kinematics(j, xj);
        }
        if (auto p = segments_collide(si, arms_[i].thickness, sj, arms_[j].thickness)) return EdgeHit{*p, s};
    }
    return std::nullopt;
}

std::optional<EdgeHit> PlanarArmDomain::edge_collides(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                      AgentId j, const Configuration& qj, const Configuration& qj2,
                                                      int substeps) const {
    return edge_hit(i, qi, qi2, j, qj, qj2, substeps, false);
}

std::optional<EdgeHit> PlanarArmDomain::edge_collides_interior(AgentId i, const Configuration& qi,
                                                               const Configuration& qi2, AgentId j,
                                                               const Configuration& qj, const Configuration& qj2,
                                                               int substeps) const {
    if (qi == qi2 && qj == qj2) return std::nullopt;
    return edge_hit(i, qi, qi2, j, qj, qj2, substeps, true);
}

bool PlanarArmDomain::occupancy_intersects_circle(AgentId a, const Configuration& q, Point2 center,
                                                  double radius) const {
    const double eps = arms_.at(a).thickness;
    for (const auto& seg : forward_kinematics(a, q)) {
        if (geometry::point_segment_distance(center, seg) <= eps + radius + 0.5 * geometry::kEps) return true;
    }
    return false;
}

bool PlanarArmDomain::transition_intersects_circle(AgentId a, const Configuration& from, const Configuration& to,
                                                   Point2 center, double radius, int substeps) const {
    if (occupancy_intersects_circle(a, from, center, radius) || occupancy_intersects_circle(a, to, center, radius)) {
        return true;
    }
    if (from == to) return false;
    const double eps = arms_.at(a).thickness;
    double idx[Configuration::kMaxDims];
    for (int k = 1; k < substeps; ++k) {
        const double s = static_cast<double>(k) / substeps;
        for (std::size_t d = 0; d < from.size(); ++d) idx[d] = from[d] + s * (to[d] - from[d]);
        for (const auto& seg : forward_kinematics(a, idx)) {
            if (geometry::point_segment_distance(center, seg) <= eps + radius + 0.5 * geometry::kEps) return true;
        }
    }
    return false;
}

StateId PlanarArmDomain::state_count(AgentId a) const {
    StateId n = 1;
    for (auto [lo, hi] : arms_.at(a).joint_limits) n *= static_cast<StateId>(hi - lo + 1);
    return n;
}

StateId PlanarArmDomain::encode(AgentId a, const Configuration& q) const {
    const auto& lim = arms_[a].joint_limits;
    StateId id = 0;
    for (std::size_t k = 0; k < lim.size(); ++k) {
        id = id * (lim[k].second - lim[k].first + 1) + (q[k] - lim[k].first);
    }
    return id;
}

Configuration PlanarArmDomain::decode(AgentId a, StateId id) const {
    const auto& lim = arms_[a].joint_limits;
    std::vector<int> coords(lim.size());
    for (std::size_t k = lim.size(); k-- > 0;) {
        const StateId range = lim[k].second - lim[k].first + 1;
        coords[k] = static_cast<int>(id % range) + lim[k].first;
        id /= range;
    }
    return Configuration(coords);
}

void PlanarArmDomain::build_tables() {
    const int n = num_agents();
    valid_table_.assign(n, {});
    segment_table_.assign(n, {});
    std::vector<std::vector<Segment>> segs(n);
    for (int a = 0; a < n; ++a) {
        const StateId count = state_count(a);
        if (count > kMaxTabulatedStates) continue;
        const std::size_t links = arms_[a].links.size();
        segs[a].reserve(static_cast<std::size_t>(count) * links);
        std::vector<std::uint8_t> valid(static_cast<std::size_t>(count));
        double idx[Configuration::kMaxDims];
        for (StateId id = 0; id < count; ++id) {
            const Configuration q = decode(a, id);
            for (std::size_t k = 0; k < links; ++k) idx[k] = q[k];
            auto fk = forward_kinematics(a, idx);
            valid[id] = segments_static_free(fk, arms_[a].thickness) ? 1 : 0;
            segs[a].insert(segs[a].end(), fk.begin(), fk.end());
        }
        valid_table_[a] = std::move(valid);
    }
    segment_table_ = std::move(segs);
}

}  // namespace gecbs
