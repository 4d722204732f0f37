#ifndef LGRPO_CONFIG_HPP
#define LGRPO_CONFIG_HPP

#include "lgrpo/analysis.hpp"
#include "lgrpo/scoring.hpp"
#include "lgrpo/synthetic.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace lgrpo {

enum class SimulationKind {
    core_periphery, // generate_group / generate_rollout_set
    graded,         // generate_graded_group
    suite,          // alternating graded and core-periphery groups
};

struct SimulationConfig {
    SimulationKind kind = SimulationKind::core_periphery;
    std::size_t groups = 1;
    SyntheticSpec synthetic;
    GradedSpec graded;
};

/// Everything a CLI run needs besides file paths.
struct RunConfig {
    Method method = Method::irce;
    ScoringConfig scoring;
    LabelThresholds thresholds;
    SimulationConfig simulation;
    double advantage_epsilon = 1e-8;
    /// Feeds the k-means restarts and the synthetic generators.
    std::uint64_t seed = 0;

    /// Pushes `seed` into the per-module seed fields.
    void apply_seed();
    void validate() const;
};

/// Applies one key=value setting. Throws ConfigError for unknown keys or
/// unparsable values. Recognized keys:
///
///   method                      irce | mean | kmeans | eigen
///   seed                        unsigned integer
///   advantage.epsilon
///   irce.max_iterations  irce.temperature  irce.epsilon  irce.convergence_threshold
///   kmeans.max_iters  kmeans.restarts  eigen.power_iters  eigen.power_tol
///   analysis.correct_above  analysis.incorrect_below
///   simulate.kind               core_periphery | graded | suite
///   simulate.groups
///   synthetic.dimension  synthetic.n_correct  synthetic.n_incorrect
///   synthetic.correct_spread  synthetic.incorrect_spread
///   synthetic.incorrect_mode    gaussian | uniform
///   graded.dimension  graded.group_size  graded.max_angle  graded.label_noise
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses flat "key = value" text; '#' starts a comment, blank lines are ignored.
RunConfig parse_config(std::string_view text, RunConfig base = {});

RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies a string-keyed map, as handed over by host-language bindings.
RunConfig config_from_map(const std::map<std::string, std::string>& settings, RunConfig base = {});

/// Reads LGRPO_SEED. Throws ConfigError when set but not an unsigned integer.
std::optional<std::uint64_t> seed_from_environment();

} // namespace lgrpo

#endif
