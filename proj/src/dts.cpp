#include "gecbs/dts.hpp"

#include <algorithm>

#include "gecbs/core.hpp"

namespace gecbs {

DynamicThompsonSampler::DynamicThompsonSampler(std::vector<std::pair<double, double>> priors, double cap,
                                               std::uint64_t seed)
    : cap_(cap), rng_(seed) {
    if (priors.empty()) throw Error(ErrorCode::InvalidInput, "DTS needs at least one arm");
    if (!(cap_ >= 2.0)) throw Error(ErrorCode::InvalidInput, "DTS cap must be >= 2");
    for (auto [a, b] : priors) {
        if (!(a >= 1.0) || !(b >= 1.0)) throw Error(ErrorCode::InvalidInput, "DTS priors must be >= 1");
        alpha_.push_back(a);
        beta_.push_back(b);
    }
    for (std::size_t k = 0; k < alpha_.size(); ++k) enforce_cap(k);
}

double DynamicThompsonSampler::draw_beta(double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(rng_);
    const double y = gb(rng_);
    return x + y > 0.0 ? x / (x + y) : 0.5;
}

std::size_t DynamicThompsonSampler::sample() {
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        const double v = draw_beta(alpha_[k], beta_[k]);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    return best;
}

void DynamicThompsonSampler::reward(std::size_t k) {
    alpha_.at(k) += 1.0;
    enforce_cap(k);
}

void DynamicThompsonSampler::penalize(std::size_t k) {
    beta_.at(k) += 1.0;
    enforce_cap(k);
}

void DynamicThompsonSampler::enforce_cap(std::size_t k) {
    double& a = alpha_[k];
    double& b = beta_[k];
    if (a + b > cap_) {
        const double scale = cap_ / (a + b);
        a *= scale;
        b *= scale;
    }
    // The floor of 1 may push the sum back over the cap; the other parameter absorbs it.
    if (a < 1.0) {
        a = 1.0;
        b = std::min(b, cap_ - 1.0);
    }
    if (b < 1.0) {
        b = 1.0;
        a = std::min(a, cap_ - 1.0);
    }
}

}  // namespace gecbs
