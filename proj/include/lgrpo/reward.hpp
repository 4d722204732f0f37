#ifndef LGRPO_REWARD_HPP
#define LGRPO_REWARD_HPP

#include <span>
#include <vector>

namespace lgrpo {

/// Default spread below which a group counts as degenerate.
inline constexpr double kDefaultDegenerateTolerance = 1e-8;

/// Reward assigned to every member of a degenerate group.
inline constexpr double kNeutralReward = 0.5;

/// Per-trajectory scores in [0, 1], shared by every scoring method.
///
/// raw_distances holds the pre-normalization "badness" of each trajectory
/// (distance to the consensus point for the centroid methods). Rewards are the
/// min-max normalization of the negated distances: the nearest member gets
/// exactly 1 and the farthest exactly 0. When the distances span no more than
/// the degeneracy tolerance, every reward is 0.5 and `degenerate` is set.
struct RewardVector {
    std::vector<double> rewards;
    std::vector<double> raw_distances;
    bool degenerate = false;

    std::size_t size() const noexcept { return rewards.size(); }
};

RewardVector normalize_distances(std::vector<double> raw_distances,
                                 double degenerate_tolerance = kDefaultDegenerateTolerance);

} // namespace lgrpo

#endif
