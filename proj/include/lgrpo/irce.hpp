#ifndef LGRPO_IRCE_HPP
#define LGRPO_IRCE_HPP

#include "lgrpo/geometry.hpp"
#include "lgrpo/reward.hpp"

#include <span>
#include <vector>

namespace lgrpo {

/// Iterative robust centroid estimation settings.
///
/// The Gaussian kernel bandwidth is temperature * sigma, where sigma is the
/// population standard deviation of the current sample-to-centroid distances
/// plus epsilon. temperature = 1 gives the unscaled kernel; smaller values
/// sharpen the down-weighting of far samples. Iteration stops early once the
/// centroid moves less than convergence_threshold (Euclidean), so a threshold
/// of 0 always runs max_iterations updates.
struct IrceConfig {
    int max_iterations = 5;
    double temperature = 0.5;
    double epsilon = 1e-8;
    double convergence_threshold = 1e-6;

    /// Distance spreads at or below epsilon are treated as exact ties and get
    /// uniform kernel weights.
    ///
    /// Throws InvalidArgument unless max_iterations >= 1, temperature > 0,
    /// epsilon > 0 and convergence_threshold >= 0.
    void validate() const;
};

/// If the weighted sum of projected vectors has norm at or below this, the
/// update is abandoned and the previous centroid is kept.
inline constexpr double kSingularSumTolerance = 1e-12;

struct CentroidEstimate {
    UnitVector centroid;
    /// Soft weights of the last completed update (uniform when no update ran).
    std::vector<double> weights;
    int iterations_used = 0;
    bool converged = false;
    /// A zero-sum singularity stopped the iteration (initial mean or an update).
    bool singular = false;
    /// Centroid displacement after each completed update.
    std::vector<double> distance_trace;
};

struct IrceResult {
    CentroidEstimate estimate;
    RewardVector rewards;
};

CentroidEstimate estimate_centroid(std::span<const UnitVector> projected, const IrceConfig& config);
CentroidEstimate estimate_centroid(const TrajectoryGroup& group, const IrceConfig& config);

/// The two evaluation strategies behind estimate_centroid, which picks the
/// cheaper one for the group size. The direct form updates the centroid in
/// d dimensions each iteration. The pairwise form computes all member-to-member
/// squared distances once, iterates on G x G quantities only and builds the
/// centroid in d dimensions at the end. Both compute the same estimate.
CentroidEstimate estimate_centroid_direct(std::span<const UnitVector> projected, const IrceConfig& config);
CentroidEstimate estimate_centroid_pairwise(std::span<const UnitVector> projected, const IrceConfig& config);

/// Centroid estimate plus the min-max normalized rewards against it.
IrceResult run_irce(const TrajectoryGroup& group, const IrceConfig& config);

RewardVector compute_rewards(const TrajectoryGroup& group, const IrceConfig& config);

/// Norm(mean of the projected vectors). When the mean has (near) zero norm the
/// first projected vector stands in and `singular` is set.
struct MeanDirection {
    std::vector<double> direction;
    bool singular = false;
};
MeanDirection mean_direction(std::span<const UnitVector> projected);

/// Distances of every projected vector to a point.
std::vector<double> distances_to(std::span<const UnitVector> projected, std::span<const double> point);

} // namespace lgrpo

#endif
