#ifndef LGRPO_REPORT_HPP
#define LGRPO_REPORT_HPP

#include "lgrpo/analysis.hpp"
#include "lgrpo/config.hpp"
#include "lgrpo/synthetic.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lgrpo {

/// Shortest round-trip decimal form; "NA" for an empty optional.
std::string format_real(double v);
std::string format_real(const std::optional<double>& v);

/// Generates `config.groups` groups; group g uses derive_seed(seed, g).
std::vector<SyntheticGroup> simulate(const SimulationConfig& config, std::uint64_t seed);

// Reward CSV:
//   # lgrpo-rewards v1 method=<m>
//   # group <g>: <scorer note>            (one per group)
//   group_id,index,raw_distance,reward[,advantage][,label]
//   <one row per trajectory>
void write_reward_csv(std::ostream& out, std::span<const TrajectoryGroup> groups, const RunConfig& config,
                      bool with_advantages);

// Geometry CSV:
//   # lgrpo-geometry v1 method=<m> correct_above=<t> incorrect_below=<t>
//   group_id,n_correct,n_incorrect,mean_dist_correct,mean_dist_incorrect,distance_ratio,spearman_rho,top1
//   <one row per group>, then a row with group_id "all": counts summed, distances
//   pooled over every classified sample, spearman averaged over groups where it
//   is defined, top1 = top1_agreement across groups.
struct GeometrySummary {
    std::vector<GeometryReport> groups;
    GeometryReport overall;
};
GeometrySummary summarize_geometry(std::span<const TrajectoryGroup> groups, const RunConfig& config);
void write_geometry_csv(std::ostream& out, const GeometrySummary& summary, const RunConfig& config);

// PCA CSV:
//   # lgrpo-pca v1 group=<g> explained_variance=<v1>;<v2> total_variance=<t>
//   kind,index,label,pc1,pc2
//   point,<i>,<label or NA>,<x>,<y>       (one per trajectory)
//   centroid,NA,NA,<x>,<y>
void write_pca_csv(std::ostream& out, std::size_t group_id, const PcaProjection& pca,
                   const TrajectoryGroup& group, std::span<const double> centroid);

/// Scatter plot of the 2D projection: green correct, red incorrect, grey
/// in-between or unlabeled, gold star at the centroid.
void write_pca_svg(std::ostream& out, const PcaProjection& pca, const TrajectoryGroup& group,
                   std::span<const double> centroid, const LabelThresholds& thresholds);

struct ComparisonRow {
    Method method = Method::irce;
    std::size_t groups_scored = 0; // groups whose spearman is defined
    std::optional<double> mean_spearman;
    double top1 = 0.0;
    std::optional<double> mean_microseconds;
};

/// Scores every labeled group with all four methods. Timing is opt-in because
/// it makes the output non-deterministic.
std::vector<ComparisonRow> compare_methods(std::span<const TrajectoryGroup> groups, const RunConfig& config,
                                           bool with_timing);

// Comparison table:
//   # lgrpo-compare v1 groups=<n>
//   method,groups_scored,mean_spearman,top1_agreement[,mean_us_per_group]
void write_compare_table(std::ostream& out, std::span<const ComparisonRow> rows, std::size_t group_count);

} // namespace lgrpo

#endif
