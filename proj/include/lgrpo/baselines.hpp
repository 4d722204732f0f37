#ifndef LGRPO_BASELINES_HPP
#define LGRPO_BASELINES_HPP

#include "lgrpo/geometry.hpp"
#include "lgrpo/reward.hpp"

#include <cstdint>
#include <vector>

namespace lgrpo {

struct BaselineConfig {
    int kmeans_k = 2; // fixed; anything else is rejected
    int kmeans_max_iters = 100;
    int kmeans_restarts = 8;
    int power_iters = 100;
    double power_tol = 1e-10;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Mean-pool consensus: distances to Norm(mean of projected vectors).
RewardVector mean_pool_rewards(const TrajectoryGroup& group);

struct KMeansResult {
    RewardVector rewards;
    /// Cluster index (0 or 1) of every member, in input order.
    std::vector<int> assignment;
    /// The two centers as means of projected vectors (not renormalized).
    std::vector<std::vector<double>> centers;
    std::vector<std::size_t> cluster_sizes;
    std::vector<double> cluster_wcss;
    double wcss = 0.0;
    int quality_cluster = 0;
    int best_restart = 0;
};

/// Two-cluster Lloyd k-means on the projected vectors.
///
/// Each restart seeds from a random member and the member farthest from it.
/// Seeds are drawn over a canonical (lexicographically sorted) ordering of the
/// members so the result does not depend on input order. The restart with
/// the lowest within-cluster sum of squares wins. The quality cluster is the
/// larger one. Size ties go to the lower mean squared spread, and after that
/// to the cluster holding the canonically first member.
KMeansResult kmeans_cluster(const TrajectoryGroup& group, const BaselineConfig& config);

RewardVector kmeans_rewards(const TrajectoryGroup& group, const BaselineConfig& config);

struct EigenCentralityResult {
    RewardVector rewards;
    /// Unit-norm principal eigenvector, oriented so its components sum >= 0.
    std::vector<double> eigenvector;
    double eigenvalue = 0.0;
    double residual = 0.0; // ||A v - lambda v||
    int iterations = 0;
};

/// Principal eigenvector of A_ij = (1 + cos(h_i, h_j)) / 2 by power iteration.
/// The reward is the min-max normalized component; raw_distances report the
/// centrality deficit max(v) - v_i so the shared RewardVector contract holds.
EigenCentralityResult eigen_centrality(const TrajectoryGroup& group, const BaselineConfig& config);

RewardVector eigen_centrality_rewards(const TrajectoryGroup& group, const BaselineConfig& config);

} // namespace lgrpo

#endif
