#include "lgrpo/reward.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>

namespace lgrpo {

RewardVector normalize_distances(std::vector<double> raw_distances, double degenerate_tolerance) {
    if (raw_distances.empty()) {
        fail(ErrorCode::EmptyInput, "cannot normalize an empty distance vector");
    }
    const auto [lo, hi] = std::minmax_element(raw_distances.begin(), raw_distances.end());
    const double dmin = *lo;
    const double dmax = *hi;

    RewardVector out;
    out.rewards.resize(raw_distances.size());
    if (dmax - dmin <= degenerate_tolerance) {
        out.degenerate = true;
        std::fill(out.rewards.begin(), out.rewards.end(), kNeutralReward);
    } else {
        // (-d_i - min(-d)) / (max(-d) - min(-d)) == (dmax - d_i) / (dmax - dmin)
        const double range = dmax - dmin;
        for (std::size_t i = 0; i < raw_distances.size(); ++i) {
            out.rewards[i] = (dmax - raw_distances[i]) / range;
        }
    }
    out.raw_distances = std::move(raw_distances);
    return out;
}

} // namespace lgrpo
