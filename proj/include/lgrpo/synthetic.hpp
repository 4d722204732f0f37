#ifndef LGRPO_SYNTHETIC_HPP
#define LGRPO_SYNTHETIC_HPP

#include "lgrpo/geometry.hpp"

#include <cstdint>
#include <vector>

namespace lgrpo {

enum class IncorrectMode {
    gaussian, // Norm(mu* + incorrect_spread * N(0, I))
    uniform,  // uniform on the unit sphere
};

/// Core-periphery geometry: a tight cluster of correct samples around a random
/// true direction plus a diffuse set of incorrect ones.
struct SyntheticSpec {
    std::size_t dimension = 64;
    std::size_t n_correct = 6;
    std::size_t n_incorrect = 2;
    double correct_spread = 0.02;
    double incorrect_spread = 1.0;
    IncorrectMode incorrect_mode = IncorrectMode::uniform;
    std::uint64_t rng_seed = 0;

    /// Throws InvalidSpec.
    void validate() const;
};

/// Groups where quality is graded rather than binary. Member i sits at angle
/// theta_i ~ U(0, max_angle) from the true direction, in a uniformly random
/// orthogonal direction, and is labeled clamp(1 - theta_i / max_angle + noise).
struct GradedSpec {
    std::size_t dimension = 64;
    std::size_t group_size = 8;
    double max_angle = 1.2; // radians
    double label_noise = 0.05;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// A generated group plus the direction it was built around.
struct SyntheticGroup {
    TrajectoryGroup group;
    std::vector<double> true_direction;
};

/// Correct members get label 1, incorrect ones label 0; the order is shuffled.
SyntheticGroup generate_group(const SyntheticSpec& spec);

/// Same mechanics as generate_group, meant for large rollout sets.
SyntheticGroup generate_rollout_set(const SyntheticSpec& spec);

SyntheticGroup generate_graded_group(const GradedSpec& spec);

/// Uniformly random unit vector.
std::vector<double> random_unit_vector(std::size_t dimension, std::uint64_t seed);

/// Decorrelated per-group seed derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

} // namespace lgrpo

#endif
