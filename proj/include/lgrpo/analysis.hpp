#ifndef LGRPO_ANALYSIS_HPP
#define LGRPO_ANALYSIS_HPP

#include "lgrpo/geometry.hpp"
#include "lgrpo/reward.hpp"
#include "lgrpo/scoring.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lgrpo {

/// Label thresholds splitting samples into correct / incorrect; the band in
/// between belongs to neither class.
struct LabelThresholds {
    double correct_above = 0.7;
    double incorrect_below = 0.3;

    void validate() const;
    bool is_correct(double label) const noexcept { return label > correct_above; }
    bool is_incorrect(double label) const noexcept { return label < incorrect_below; }
};

struct GeometryReport {
    std::size_t n_correct = 0;
    std::size_t n_incorrect = 0;
    std::optional<double> mean_dist_correct;
    std::optional<double> mean_dist_incorrect;
    std::optional<double> distance_ratio;
    std::optional<double> spearman_rho;
    std::optional<double> top1_agreement;
    /// Consensus point the distances were measured against.
    std::vector<double> consensus;
    std::string note;
};

/// Separability and agreement statistics of one labeled set. Distances are
/// measured from the projected vectors to the scorer's consensus point in the
/// full dimension. Throws MissingLabels when the group has none.
GeometryReport geometry_report(const TrajectoryGroup& rollouts, Method method,
                               const ScoringConfig& config, const LabelThresholds& thresholds = {});

/// Same statistics for an already-computed score.
GeometryReport geometry_report(const TrajectoryGroup& rollouts, const ScoreResult& score,
                               const LabelThresholds& thresholds = {});

/// Spearman rank correlation with average ranks for ties. Returns nullopt when
/// either sequence has zero rank variance. Throws LengthMismatch, or
/// InvalidArgument for fewer than two samples.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

/// Average (1-based) ranks, ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax(std::span<const double> x);

/// Fraction of groups whose top-rewarded member is labeled correct.
double top1_agreement(std::span<const RewardVector> reward_sets,
                      std::span<const std::vector<double>> label_sets,
                      const LabelThresholds& thresholds = {});

struct PcaOptions {
    int max_iterations = 20000;
    /// Stop once ||C v - lambda v|| <= tolerance * lambda.
    double tolerance = 1e-8;
};

struct PcaProjection {
    std::vector<std::vector<double>> components;
    /// One row of k coordinates per point.
    std::vector<std::vector<double>> projected;
    std::vector<double> explained_variance;
    double total_variance = 0.0;
    std::vector<double> mean;

    /// Coordinates of an arbitrary d-vector in the component basis.
    std::vector<double> project(std::span<const double> point) const;
};

/// Top-k principal components of the mean-centered points by power iteration
/// with deflation. The covariance is never materialized. Throws NoConvergence
/// when the points have zero total variance or an eigenvector fails to settle.
PcaProjection pca_project(const TrajectoryGroup& points, std::size_t k = 2, const PcaOptions& options = {});

} // namespace lgrpo

#endif
