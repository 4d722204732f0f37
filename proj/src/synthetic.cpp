#include "lgrpo/synthetic.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lgrpo {

void SyntheticSpec::validate() const {
    if (dimension < 1) {
        fail(ErrorCode::InvalidSpec, "synthetic dimension must be >= 1");
    }
    if (n_correct + n_incorrect < 1) {
        fail(ErrorCode::InvalidSpec, "synthetic spec must request at least one sample");
    }
    if (!(correct_spread > 0.0) || !std::isfinite(correct_spread)) {
        fail(ErrorCode::InvalidSpec, "correct_spread must be > 0");
    }
    if (incorrect_mode == IncorrectMode::gaussian &&
        (!(incorrect_spread > correct_spread) || !std::isfinite(incorrect_spread))) {
        fail(ErrorCode::InvalidSpec, "incorrect_spread must exceed correct_spread in gaussian mode");
    }
}

void GradedSpec::validate() const {
    if (dimension < 2) {
        fail(ErrorCode::InvalidSpec, "graded groups need dimension >= 2");
    }
    if (group_size < 1) {
        fail(ErrorCode::InvalidSpec, "graded group_size must be >= 1");
    }
    if (!(max_angle > 0.0) || max_angle > 3.14159265358979323846) {
        fail(ErrorCode::InvalidSpec, "graded max_angle must be in (0, pi]");
    }
    if (!(label_noise >= 0.0) || !std::isfinite(label_noise)) {
        fail(ErrorCode::InvalidSpec, "graded label_noise must be >= 0");
    }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<double> gaussian(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(d);
    for (double& x : v) {
        x = n(rng);
    }
    return v;
}

// Rejects the (astronomically unlikely) zero draw by redrawing.
std::vector<double> unit_gaussian(std::size_t d, std::mt19937_64& rng) {
    for (;;) {
        auto v = gaussian(d, rng);
        const double n = vec::norm(v);
        if (n > kZeroNormTolerance) {
            for (double& x : v) {
                x /= n;
            }
            return v;
        }
    }
}

std::vector<double> perturbed(const std::vector<double>& center, double spread, std::mt19937_64& rng) {
    for (;;) {
        auto v = gaussian(center.size(), rng);
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = center[k] + spread * v[k];
        }
        const double n = vec::norm(v);
        if (n > kZeroNormTolerance) {
            for (double& x : v) {
                x /= n;
            }
            return v;
        }
    }
}

SyntheticGroup assemble(std::vector<std::vector<double>> points, std::vector<double> labels,
                        std::vector<double> direction, std::mt19937_64& rng) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<LatentVector> vectors;
    std::vector<double> shuffled_labels;
    vectors.reserve(points.size());
    for (std::size_t i : order) {
        vectors.emplace_back(std::move(points[i]));
        shuffled_labels.push_back(labels[i]);
    }
    return {TrajectoryGroup(std::move(vectors), std::move(shuffled_labels)), std::move(direction)};
}

} // namespace

std::vector<double> random_unit_vector(std::size_t dimension, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return unit_gaussian(dimension, rng);
}

SyntheticGroup generate_group(const SyntheticSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.rng_seed);
    auto direction = unit_gaussian(spec.dimension, rng);

    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    points.reserve(spec.n_correct + spec.n_incorrect);
    for (std::size_t i = 0; i < spec.n_correct; ++i) {
        points.push_back(perturbed(direction, spec.correct_spread, rng));
        labels.push_back(1.0);
    }
    for (std::size_t i = 0; i < spec.n_incorrect; ++i) {
        if (spec.incorrect_mode == IncorrectMode::uniform) {
            points.push_back(unit_gaussian(spec.dimension, rng));
        } else {
            points.push_back(perturbed(direction, spec.incorrect_spread, rng));
        }
        labels.push_back(0.0);
    }
    return assemble(std::move(points), std::move(labels), std::move(direction), rng);
}

SyntheticGroup generate_rollout_set(const SyntheticSpec& spec) {
    return generate_group(spec);
}

SyntheticGroup generate_graded_group(const GradedSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.rng_seed);
    auto direction = unit_gaussian(spec.dimension, rng);
    std::uniform_real_distribution<double> angle(0.0, spec.max_angle);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    for (std::size_t i = 0; i < spec.group_size; ++i) {
        const double theta = angle(rng);
        // Random direction orthogonal to the truth.
        std::vector<double> u;
        for (;;) {
            u = gaussian(spec.dimension, rng);
            const double along = vec::dot(u, direction);
            for (std::size_t k = 0; k < u.size(); ++k) {
                u[k] -= along * direction[k];
            }
            const double n = vec::norm(u);
            if (n > 1e-6) {
                for (double& x : u) {
                    x /= n;
                }
                break;
            }
        }
        std::vector<double> p(spec.dimension);
        for (std::size_t k = 0; k < p.size(); ++k) {
            p[k] = std::cos(theta) * direction[k] + std::sin(theta) * u[k];
        }
        const double n = vec::norm(p);
        for (double& x : p) {
            x /= n;
        }
        points.push_back(std::move(p));
        const double label = 1.0 - theta / spec.max_angle + spec.label_noise * noise(rng);
        labels.push_back(std::clamp(label, 0.0, 1.0));
    }
    return assemble(std::move(points), std::move(labels), std::move(direction), rng);
}

} // namespace lgrpo
