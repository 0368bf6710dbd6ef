#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gecbs/core.hpp"

namespace gecbs {

using StateId = std::int64_t;

struct Successor {
    Configuration config;
    double cost = 1.0;
};

struct EdgeHit {
    Point2 point;
    double s = 0.0;  // interpolation parameter in [0, 1]
};

/// Planning domain: successors, heuristics and collision geometry for a fixed
/// set of agents. Implementations are immutable after construction and every
/// query is safe to call concurrently.
class Domain {
public:
    virtual ~Domain() = default;

    int num_agents() const { return static_cast<int>(starts_.size()); }
    const Configuration& start(AgentId a) const { return starts_.at(a); }
    const Configuration& goal(AgentId a) const { return goals_.at(a); }
    const std::vector<Configuration>& starts() const { return starts_; }
    const std::vector<Configuration>& goals() const { return goals_; }

    /// Interpolation sub-steps M used by the low-level conflict-count heuristic.
    int substeps() const { return substeps_; }
    /// Resolution used for conflict detection, constraint checks, shortcutting
    /// and verification (2M).
    int check_substeps() const { return 2 * substeps_; }

    virtual std::size_t dims(AgentId a) const = 0;
    virtual bool in_bounds(AgentId a, const Configuration& q) const = 0;
    /// In bounds and free of static obstacles.
    virtual bool config_valid(AgentId a, const Configuration& q) const = 0;
    /// One primitive (or a wait) whose endpoints and interpolated sub-steps are static-free.
    virtual bool transition_valid(AgentId a, const Configuration& from, const Configuration& to,
                                  int substeps) const = 0;

    virtual std::vector<Successor> successors(AgentId a, const Configuration& q) const = 0;
    virtual double heuristic(AgentId a, const Configuration& q, const Configuration& goal) const = 0;
    virtual double transition_cost(const Configuration& from, const Configuration& to) const;

    virtual std::optional<Point2> agents_collide(AgentId i, const Configuration& qi, AgentId j,
                                                 const Configuration& qj) const = 0;
    /// First collision along two simultaneous transitions, checked at
    /// s = 0, 1/M, ..., 1.
    virtual std::optional<EdgeHit> edge_collides(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                 AgentId j, const Configuration& qj, const Configuration& qj2,
                                                 int substeps) const = 0;
    /// Same as edge_collides restricted to interior sub-steps 0 < s < 1.
    virtual std::optional<EdgeHit> edge_collides_interior(AgentId i, const Configuration& qi,
                                                          const Configuration& qi2, AgentId j,
                                                          const Configuration& qj, const Configuration& qj2,
                                                          int substeps) const = 0;
    virtual bool occupancy_intersects_circle(AgentId a, const Configuration& q, Point2 center,
                                             double radius) const = 0;
    virtual bool transition_intersects_circle(AgentId a, const Configuration& from, const Configuration& to,
                                              Point2 center, double radius, int substeps) const = 0;

    /// Pairs of agents whose occupancies can never meet may be skipped.
    virtual bool may_interact(AgentId i, AgentId j) const { return i != j; }

    /// Dense index of a configuration; lexicographic in the coordinates.
    virtual StateId encode(AgentId a, const Configuration& q) const = 0;
    virtual Configuration decode(AgentId a, StateId id) const = 0;
    virtual StateId state_count(AgentId a) const = 0;

protected:
    Domain(std::vector<Configuration> starts, std::vector<Configuration> goals, int substeps);
    /// Throws InvalidInput unless starts and goals are valid and mutually conflict-free.
    void validate_endpoints() const;

private:
    std::vector<Configuration> starts_;
    std::vector<Configuration> goals_;
    int substeps_;
};

/// 4-connected grid of unit cells; cell (x, y) has workspace center (x + 0.5, y + 0.5).
class GridDomain final : public Domain {
public:
    GridDomain(int width, int height, std::vector<std::pair<int, int>> blocked, std::vector<Configuration> starts,
               std::vector<Configuration> goals);

    int width() const { return width_; }
    int height() const { return height_; }
    bool blocked(int x, int y) const { return blocked_[static_cast<std::size_t>(x) * height_ + y] != 0; }
    std::vector<std::pair<int, int>> blocked_cells() const;
    int free_cell_count() const { return free_cells_; }
    static Point2 cell_center(const Configuration& q) { return {q[0] + 0.5, q[1] + 0.5}; }

    std::size_t dims(AgentId) const override { return 2; }
    bool in_bounds(AgentId a, const Configuration& q) const override;
    bool config_valid(AgentId a, const Configuration& q) const override;
    bool transition_valid(AgentId a, const Configuration& from, const Configuration& to,
                          int substeps) const override;
    std::vector<Successor> successors(AgentId a, const Configuration& q) const override;
    double heuristic(AgentId a, const Configuration& q, const Configuration& goal) const override;
    std::optional<Point2> agents_collide(AgentId i, const Configuration& qi, AgentId j,
                                         const Configuration& qj) const override;
    std::optional<EdgeHit> edge_collides(AgentId i, const Configuration& qi, const Configuration& qi2, AgentId j,
                                         const Configuration& qj, const Configuration& qj2,
                                         int substeps) const override;
    std::optional<EdgeHit> edge_collides_interior(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                  AgentId j, const Configuration& qj, const Configuration& qj2,
                                                  int substeps) const override;
    bool occupancy_intersects_circle(AgentId a, const Configuration& q, Point2 center,
                                     double radius) const override;
    bool transition_intersects_circle(AgentId a, const Configuration& from, const Configuration& to, Point2 center,
                                      double radius, int substeps) const override;
    StateId encode(AgentId a, const Configuration& q) const override;
    Configuration decode(AgentId a, StateId id) const override;
    StateId state_count(AgentId) const override { return static_cast<StateId>(width_) * height_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> blocked_;
    int free_cells_ = 0;
};

struct Circle {
    Point2 center;
    double radius = 0.0;
    friend bool operator==(const Circle&, const Circle&) = default;
};

struct ArmSpec {
    Point2 base;
    double base_angle = 0.0;  // radians, orientation of joint 0 at index 0
    std::vector<double> links;
    std::vector<std::pair<int, int>> joint_limits;  // inclusive index ranges
    double thickness = 0.05;                        // capsule radius epsilon
    friend bool operator==(const ArmSpec&, const ArmSpec&) = default;
};

struct Segment {
    Point2 a;
    Point2 b;
};

/// Planar serial arms. Joint j of agent a sits at angle index * delta relative
/// to the previous link; occupancy is the union of link capsules of radius
/// `thickness`.
class PlanarArmDomain final : public Domain {
public:
    static constexpr double kDefaultDelta = 0.2617993877991494;  // 15 degrees

    PlanarArmDomain(std::vector<ArmSpec> arms, std::vector<Circle> obstacles, double delta,
                    std::vector<Configuration> starts, std::vector<Configuration> goals, int substeps = 4);

    const std::vector<ArmSpec>& arms() const { return arms_; }
    const std::vector<Circle>& obstacles() const { return obstacles_; }
    double delta() const { return delta_; }
    double reach(AgentId a) const;

    /// Link segments for real-valued joint indices.
    std::vector<Segment> forward_kinematics(AgentId a, const double* joint_indices) const;
    std::vector<Segment> forward_kinematics(AgentId a, const Configuration& q) const;

    std::size_t dims(AgentId a) const override { return arms_.at(a).links.size(); }
    bool in_bounds(AgentId a, const Configuration& q) const override;
    bool config_valid(AgentId a, const Configuration& q) const override;
    bool transition_valid(AgentId a, const Configuration& from, const Configuration& to,
                          int substeps) const override;
    std::vector<Successor> successors(AgentId a, const Configuration& q) const override;
    double heuristic(AgentId a, const Configuration& q, const Configuration& goal) const override;
    std::optional<Point2> agents_collide(AgentId i, const Configuration& qi, AgentId j,
                                         const Configuration& qj) const override;
    std::optional<EdgeHit> edge_collides(AgentId i, const Configuration& qi, const Configuration& qi2, AgentId j,
                                         const Configuration& qj, const Configuration& qj2,
                                         int substeps) const override;
    std::optional<EdgeHit> edge_collides_interior(AgentId i, const Configuration& qi, const Configuration& qi2,
                                                  AgentId j, const Configuration& qj, const Configuration& qj2,
                                                  int substeps) const override;
    bool occupancy_intersects_circle(AgentId a, const Configuration& q, Point2 center,
                                     double radius) const override;
    bool transition_intersects_circle(AgentId a, const Configuration& from, const Configuration& to, Point2 center,
                                      double radius, int substeps) const override;
    bool may_interact(AgentId i, AgentId j) const override;
    StateId encode(AgentId a, const Configuration& q) const override;
    Configuration decode(AgentId a, StateId id) const override;
    StateId state_count(AgentId a) const override;

private:
    std::optional<EdgeHit> edge_hit(AgentId i, const Configuration& qi, const Configuration& qi2, AgentId j,
                                    const Configuration& qj, const Configuration& qj2, int substeps,
                                    bool interior) const;
    std::optional<Point2> segments_collide(const std::vector<Segment>& a, double eps_a,
                                           const std::vector<Segment>& b, double eps_b) const;
    bool segments_static_free(const std::vector<Segment>& segs, double eps) const;
    bool is_primitive(AgentId a, const Configuration& from, const Configuration& to) const;
    void build_tables();

    std::vector<ArmSpec> arms_;
    std::vector<Circle> obstacles_;
    double delta_;
    // Per agent: static validity and link segments for every encoded state
    // (empty when the state space is too large to tabulate).
    std::vector<std::vector<std::uint8_t>> valid_table_;
    std::vector<std::vector<Segment>> segment_table_;
};

namespace geometry {

/// Closed-form closest points between two segments.
struct ClosestPoints {
    Point2 on_first;
    Point2 on_second;
    double distance = 0.0;
};
ClosestPoints closest_points(const Segment& s1, const Segment& s2);
double point_segment_distance(Point2 p, const Segment& s);

/// Slack added to every closed distance predicate.
inline constexpr double kEps = 1e-9;

}  // namespace geometry

}  // namespace gecbs
