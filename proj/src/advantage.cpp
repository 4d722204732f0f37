#include "lgrpo/advantage.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>
#include <cmath>

namespace lgrpo {

AdvantageVector group_advantages(std::span<const double> rewards, double epsilon) {
    if (rewards.empty()) {
        fail(ErrorCode::EmptyInput, "cannot compute advantages of an empty group");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        fail(ErrorCode::InvalidArgument, "advantage epsilon must be > 0");
    }
    for (double r : rewards) {
        if (!std::isfinite(r)) {
            fail(ErrorCode::NonFiniteValue, "reward is not finite");
        }
    }

    const double g = static_cast<double>(rewards.size());
    double mean = 0.0;
    for (double r : rewards) {
        mean += r;
    }
    mean /= g;
    double var = 0.0;
    for (double r : rewards) {
        var += (r - mean) * (r - mean);
    }
    var /= g;

    AdvantageVector out;
    out.group_mean = mean;
    out.group_std = std::sqrt(var);
    out.epsilon = epsilon;
    out.advantages.resize(rewards.size());
    const auto [lo, hi] = std::minmax_element(rewards.begin(), rewards.end());
    if (*lo == *hi) {
        // The computed mean can differ from the common value by an ulp.
        out.group_std = 0.0;
        std::fill(out.advantages.begin(), out.advantages.end(), 0.0);
        return out;
    }
    const double scale = 1.0 / (out.group_std + epsilon);
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        out.advantages[i] = (rewards[i] - mean) * scale;
    }
    return out;
}

AdvantageVector group_advantages(const RewardVector& rewards, double epsilon) {
    auto out = group_advantages(rewards.rewards, epsilon);
    if (rewards.degenerate) {
        std::fill(out.advantages.begin(), out.advantages.end(), 0.0);
    }
    return out;
}

} // namespace lgrpo
