#include "lgrpo/irce.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>
#include <cmath>

namespace lgrpo {

void IrceConfig::validate() const {
    if (max_iterations < 1) {
        fail(ErrorCode::InvalidArgument, "irce max_iterations must be >= 1");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        fail(ErrorCode::InvalidArgument, "irce temperature must be > 0");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        fail(ErrorCode::InvalidArgument, "irce epsilon must be > 0");
    }
    if (!(convergence_threshold >= 0.0) || !std::isfinite(convergence_threshold)) {
        fail(ErrorCode::InvalidArgument, "irce convergence_threshold must be >= 0");
    }
}

namespace {

void check_projected(std::span<const UnitVector> projected) {
    if (projected.empty()) {
        fail(ErrorCode::EmptyInput, "trajectory group is empty");
    }
    const std::size_t d = projected.front().dim();
    for (const auto& h : projected) {
        if (h.dim() != d) {
            fail(ErrorCode::DimensionMismatch, "group members differ in dimension");
        }
    }
}

// Returns false when the accumulated vector is too small to normalize.
bool normalize_in_place(std::vector<double>& v) {
    const double n = vec::norm(v);
    if (!(n > kSingularSumTolerance)) {
        return false;
    }
    for (double& x : v) {
        x /= n;
    }
    return true;
}

// Gaussian kernel weights on the distances, normalized to sum to one. The
// exponent is shifted by the smallest squared distance so the largest weight is
// exactly exp(0); normalization makes the shift invisible.
void kernel_weights(std::span<const double> d, const IrceConfig& config, std::span<double> w) {
    const std::size_t g = d.size();
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    if (*hi - *lo <= config.epsilon) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(g));
        return;
    }

    double mean = 0.0;
    for (double x : d) {
        mean += x;
    }
    mean /= static_cast<double>(g);
    double var = 0.0;
    for (double x : d) {
        var += (x - mean) * (x - mean);
    }
    var /= static_cast<double>(g);
    const double sigma = std::sqrt(var) + config.epsilon;
    const double bandwidth = config.temperature * sigma;
    const double denom = 2.0 * bandwidth * bandwidth;
    const double dmin2 = (*lo) * (*lo);

    double total = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        w[i] = std::exp(-(d[i] * d[i] - dmin2) / denom);
        total += w[i];
    }
    for (double& x : w) {
        x /= total;
    }
}

// Scales `next` by 1/n in place and returns its distance to `mu`.
double scale_and_displacement(std::vector<double>& next, double n, std::span<const double> mu) {
    double s0 = 0.0, s1 = 0.0;
    const std::size_t dim = next.size();
    std::size_t k = 0;
    for (; k + 2 <= dim; k += 2) {
        next[k] /= n;
        next[k + 1] /= n;
        const double e0 = next[k] - mu[k];
        const double e1 = next[k + 1] - mu[k + 1];
        s0 += e0 * e0;
        s1 += e1 * e1;
    }
    for (; k < dim; ++k) {
        next[k] /= n;
        const double e = next[k] - mu[k];
        s0 += e * e;
    }
    return std::sqrt(s0 + s1);
}

} // namespace

MeanDirection mean_direction(std::span<const UnitVector> projected) {
    check_projected(projected);
    const std::size_t d = projected.front().dim();
    std::vector<double> mean(d, 0.0);
    for (const auto& h : projected) {
        const auto x = h.values();
        for (std::size_t k = 0; k < d; ++k) {
            mean[k] += x[k];
        }
    }
    const double inv_g = 1.0 / static_cast<double>(projected.size());
    for (double& x : mean) {
        x *= inv_g;
    }
    if (!normalize_in_place(mean)) {
        const auto first = projected.front().values();
        return {std::vector<double>(first.begin(), first.end()), true};
    }
    return {std::move(mean), false};
}

std::vector<double> distances_to(std::span<const UnitVector> projected, std::span<const double> point) {
    std::vector<double> d;
    d.reserve(projected.size());
    for (const auto& h : projected) {
        if (h.dim() != point.size()) {
            fail(ErrorCode::DimensionMismatch, "point dimension differs from group dimension");
        }
        d.push_back(vec::distance(h.values(), point));
    }
    return d;
}

static bool prefer_pairwise(std::size_t g, int max_iterations) {
    // The pairwise table costs g(g-1)/2 passes over d; each direct iteration
    // costs about 2g+2.
    return g * (g - 1) <= 2 * static_cast<std::size_t>(max_iterations) * (2 * g + 2);
}

CentroidEstimate estimate_centroid(std::span<const UnitVector> projected, const IrceConfig& config) {
    config.validate();
    check_projected(projected);
    if (prefer_pairwise(projected.size(), config.max_iterations)) {
        return estimate_centroid_pairwise(projected, config);
    }
    return estimate_centroid_direct(projected, config);
}

namespace {

// Distances from every member to Norm(sum_j c_j h_j) for weights c summing to
// one, using only the table D of pairwise squared distances:
//   P_i = sum_j c_j D_ij,  Q = sum_i c_i P_i,  r = |sum_j c_j h_j| = sqrt(1 - Q/2),
//   |h_i - m/r|^2 = (P_i - Q/(1+r)) / r.
// Every term is built from differences of nearby points, so close members keep
// full relative accuracy. Returns r; `d` is left untouched when r is singular.
double pairwise_member_distances(std::span<const double> table, std::span<const double> c,
                                 std::span<double> p, std::span<double> d) {
    const std::size_t g = c.size();
    double q = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < g; ++j) {
            s += c[j] * table[i * g + j];
        }
        p[i] = s;
        q += c[i] * s;
    }
    const double r = std::sqrt(std::max(0.0, 1.0 - 0.5 * q));
    if (!(r > kSingularSumTolerance)) {
        return r;
    }
    for (std::size_t i = 0; i < g; ++i) {
        d[i] = std::sqrt(std::max(0.0, (p[i] - q / (1.0 + r)) / r));
    }
    return r;
}

// |sum_j e_j h_j| for arbitrary coefficients e: (sum e)^2 - e'De/2.
double pairwise_combination_norm(std::span<const double> table, std::span<const double> e) {
    const std::size_t g = e.size();
    double total = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        total += e[i];
        double s = 0.0;
        for (std::size_t j = 0; j < g; ++j) {
            s += table[i * g + j] * e[j];
        }
        quad += e[i] * s;
    }
    return std::sqrt(std::max(0.0, total * total - 0.5 * quad));
}

} // namespace

CentroidEstimate estimate_centroid_pairwise(std::span<const UnitVector> projected, const IrceConfig& config) {
    config.validate();
    check_projected(projected);
    const std::size_t g = projected.size();
    const std::size_t dim = projected.front().dim();

    std::vector<double> table(g * g, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            const double v = vec::squared_distance(projected[i].values(), projected[j].values());
            table[i * g + j] = v;
            table[j * g + i] = v;
        }
    }

    // The current centroid is Norm(sum_j coef_j h_j) with |sum_j coef_j h_j| = r.
    std::vector<double> coef(g, 1.0 / static_cast<double>(g));
    std::vector<double> weights = coef;
    std::vector<double> p(g), d(g), d_next(g), diff(g);
    double r = pairwise_member_distances(table, coef, p, d);
    if (!(r > kSingularSumTolerance)) {
        const auto first = projected.front().values();
        return {UnitVector::from_unit_values(std::vector<double>(first.begin(), first.end())),
                std::move(weights), 0, false, true, {}};
    }

    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(config.max_iterations));
    int used = 0;
    bool converged = false;
    bool singular = false;

    for (int s = 0; s < config.max_iterations; ++s) {
        kernel_weights(d, config, weights);
        const double r_next = pairwise_member_distances(table, weights, p, d_next);
        if (!(r_next > kSingularSumTolerance)) {
            singular = true;
            break;
        }
        for (std::size_t j = 0; j < g; ++j) {
            diff[j] = weights[j] / r_next - coef[j] / r;
        }
        const double displacement = pairwise_combination_norm(table, diff);
        trace.push_back(displacement);
        coef = weights;
        r = r_next;
        d.swap(d_next);
        used = s + 1;
        if (displacement < config.convergence_threshold) {
            converged = true;
            break;
        }
    }

    std::vector<double> mu(dim, 0.0);
    for (std::size_t j = 0; j < g; ++j) {
        const auto x = projected[j].values();
        const double cj = coef[j];
        for (std::size_t k = 0; k < dim; ++k) {
            mu[k] += cj * x[k];
        }
    }
    if (!normalize_in_place(mu)) {
        // Only reachable when rounding in d-space disagrees with the table.
        const auto first = projected.front().values();
        mu.assign(first.begin(), first.end());
        singular = true;
        converged = false;
    }
    return {UnitVector::from_unit_values(std::move(mu)), std::move(weights), used, converged, singular,
            std::move(trace)};
}

CentroidEstimate estimate_centroid_direct(std::span<const UnitVector> projected, const IrceConfig& config) {
    config.validate();
    check_projected(projected);
    const std::size_t g = projected.size();
    const std::size_t dim = projected.front().dim();

    auto init = mean_direction(projected);
    std::vector<double> weights(g, 1.0 / static_cast<double>(g));
    if (init.singular) {
        return {UnitVector::from_unit_values(std::move(init.direction)), std::move(weights), 0, false,
                true, {}};
    }

    std::vector<double> mu = std::move(init.direction);
    std::vector<double> next(dim);
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(config.max_iterations));
    int used = 0;
    bool converged = false;
    bool singular = false;

    std::vector<double> d(g);
    for (int s = 0; s < config.max_iterations; ++s) {
        for (std::size_t i = 0; i < g; ++i) {
            d[i] = vec::distance(projected[i].values(), mu);
        }
        kernel_weights(d, config, weights);

        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < g; ++i) {
            const auto x = projected[i].values();
            const double wi = weights[i];
            for (std::size_t k = 0; k < dim; ++k) {
                next[k] += wi * x[k];
            }
        }
        const double n = vec::norm(next);
        if (!(n > kSingularSumTolerance)) {
            singular = true;
            break;
        }

        const double displacement = scale_and_displacement(next, n, mu);
        trace.push_back(displacement);
        mu.swap(next);
        used = s + 1;
        if (displacement < config.convergence_threshold) {
            converged = true;
            break;
        }
    }

    return {UnitVector::from_unit_values(std::move(mu)), std::move(weights), used, converged, singular,
            std::move(trace)};
}

CentroidEstimate estimate_centroid(const TrajectoryGroup& group, const IrceConfig& config) {
    const auto projected = project_group(group);
    return estimate_centroid(projected, config);
}

IrceResult run_irce(const TrajectoryGroup& group, const IrceConfig& config) {
    const auto projected = project_group(group);
    auto estimate = estimate_centroid(projected, config);
    auto rewards = normalize_distances(distances_to(projected, estimate.centroid.values()), config.epsilon);
    return {std::move(estimate), std::move(rewards)};
}

RewardVector compute_rewards(const TrajectoryGroup& group, const IrceConfig& config) {
    return run_irce(group, config).rewards;
}

} // namespace lgrpo
