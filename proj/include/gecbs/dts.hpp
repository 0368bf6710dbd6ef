#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gecbs {

/// Dynamic Thompson Sampling over a fixed set of arms (focal queues). Each
/// arm keeps Beta(alpha, beta) parameters; the sum alpha + beta is capped at
/// C by proportional rescaling so old outcomes fade.
class DynamicThompsonSampler {
public:
    static constexpr double kDefaultCap = 10.0;

    DynamicThompsonSampler(std::vector<std::pair<double, double>> priors, double cap, std::uint64_t seed);

    /// Draws v_k ~ Beta(alpha_k, beta_k) for every arm and returns argmax (lowest index on ties).
    std::size_t sample();
    void reward(std::size_t k);
    void penalize(std::size_t k);

    std::size_t size() const { return alpha_.size(); }
    double alpha(std::size_t k) const { return alpha_.at(k); }
    double beta(std::size_t k) const { return beta_.at(k); }
    double cap() const { return cap_; }

private:
    void enforce_cap(std::size_t k);
    double draw_beta(double a, double b);

    std::vector<double> alpha_;
    std::vector<double> beta_;
    double cap_;
    std::mt19937_64 rng_;
};

}  // namespace gecbs
