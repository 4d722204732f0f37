#ifndef LGRPO_SCORING_HPP
#define LGRPO_SCORING_HPP

#include "lgrpo/baselines.hpp"
#include "lgrpo/irce.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace lgrpo {

enum class Method { irce, mean_pool, kmeans, eigen };

inline constexpr std::array<Method, 4> kAllMethods = {Method::irce, Method::mean_pool, Method::kmeans,
                                                      Method::eigen};

/// CLI spelling: "irce", "mean", "kmeans", "eigen".
std::string_view method_name(Method m) noexcept;

/// Accepts the CLI spellings plus "mean_pool". Throws ConfigError otherwise.
Method parse_method(std::string_view name);

struct ScoringConfig {
    IrceConfig irce;
    BaselineConfig baseline;
};

/// Rewards from one method together with the consensus point they imply.
///
/// The consensus point is the IRCE / mean-pool centroid, the k-means quality
/// center, or for eigen centrality the eigenvector-weighted normalized mean of
/// the projected vectors.
struct ScoreResult {
    RewardVector rewards;
    std::vector<double> consensus;
    /// One-line audit trail (iterations, chosen cluster, eigenvalue, ...).
    std::string note;
};

ScoreResult score_group(const TrajectoryGroup& group, Method method, const ScoringConfig& config);

} // namespace lgrpo

#endif
