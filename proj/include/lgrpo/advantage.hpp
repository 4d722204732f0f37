#ifndef LGRPO_ADVANTAGE_HPP
#define LGRPO_ADVANTAGE_HPP

#include "lgrpo/reward.hpp"

#include <span>
#include <vector>

namespace lgrpo {

/// GRPO group-relative advantages, A_i = (R_i - mean) / (std + eps), with the
/// population standard deviation.
struct AdvantageVector {
    std::vector<double> advantages;
    double group_mean = 0.0;
    double group_std = 0.0;
    double epsilon = 0.0;
};

AdvantageVector group_advantages(std::span<const double> rewards, double epsilon);

/// A degenerate reward vector yields all-zero advantages.
AdvantageVector group_advantages(const RewardVector& rewards, double epsilon);

} // namespace lgrpo

#endif
