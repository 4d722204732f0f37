#include "lgrpo/baselines.hpp"

#include "lgrpo/error.hpp"
#include "lgrpo/irce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace lgrpo {

void BaselineConfig::validate() const {
    if (kmeans_k != 2) {
        fail(ErrorCode::InvalidArgument, "kmeans_k is fixed at 2");
    }
    if (kmeans_max_iters < 1 || kmeans_restarts < 1 || power_iters < 1) {
        fail(ErrorCode::InvalidArgument, "baseline iteration counts must be >= 1");
    }
    if (!(power_tol > 0.0) || !std::isfinite(power_tol)) {
        fail(ErrorCode::InvalidArgument, "power_tol must be > 0");
    }
}

RewardVector mean_pool_rewards(const TrajectoryGroup& group) {
    const auto projected = project_group(group);
    const auto center = mean_direction(projected);
    return normalize_distances(distances_to(projected, center.direction));
}

namespace {

void require_pair(const TrajectoryGroup& group, const char* method) {
    if (group.size() < 2) {
        fail(ErrorCode::GroupTooSmall, std::string(method) + " needs a group of at least 2");
    }
}

struct Partition {
    std::vector<int> assignment; // canonical order
    std::vector<std::vector<double>> centers;
    std::vector<std::size_t> sizes;
    std::vector<double> wcss;
    double total = 0.0;
};

Partition lloyd(const std::vector<std::span<const double>>& x, std::size_t seed_a, int max_iters) {
    const std::size_t g = x.size();
    const std::size_t dim = x.front().size();

    // Farthest member from the first seed; ties keep the earliest.
    std::size_t seed_b = seed_a;
    double far = -1.0;
    for (std::size_t i = 0; i < g; ++i) {
        const double d2 = vec::squared_distance(x[i], x[seed_a]);
        if (d2 > far) {
            far = d2;
            seed_b = i;
        }
    }

    Partition p;
    p.centers = {std::vector<double>(x[seed_a].begin(), x[seed_a].end()),
                 std::vector<double>(x[seed_b].begin(), x[seed_b].end())};
    p.assignment.assign(g, -1);
    p.sizes.assign(2, 0);

    for (int it = 0; it < max_iters; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < g; ++i) {
            const int a = vec::squared_distance(x[i], p.centers[1]) <
                                  vec::squared_distance(x[i], p.centers[0])
                              ? 1
                              : 0;
            if (a != p.assignment[i]) {
                p.assignment[i] = a;
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
        std::vector<std::vector<double>> sums(2, std::vector<double>(dim, 0.0));
        std::fill(p.sizes.begin(), p.sizes.end(), 0);
        for (std::size_t i = 0; i < g; ++i) {
            auto& s = sums[p.assignment[i]];
            for (std::size_t k = 0; k < dim; ++k) {
                s[k] += x[i][k];
            }
            ++p.sizes[p.assignment[i]];
        }
        for (int c = 0; c < 2; ++c) {
            if (p.sizes[c] == 0) {
                continue; // empty cluster keeps its previous center
            }
            const double inv = 1.0 / static_cast<double>(p.sizes[c]);
            for (std::size_t k = 0; k < dim; ++k) {
                p.centers[c][k] = sums[c][k] * inv;
            }
        }
    }

    std::fill(p.sizes.begin(), p.sizes.end(), 0);
    p.wcss.assign(2, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        const int c = p.assignment[i];
        ++p.sizes[c];
        p.wcss[c] += vec::squared_distance(x[i], p.centers[c]);
    }
    p.total = p.wcss[0] + p.wcss[1];
    return p;
}

} // namespace

KMeansResult kmeans_cluster(const TrajectoryGroup& group, const BaselineConfig& config) {
    config.validate();
    require_pair(group, "kmeans");
    const auto projected = project_group(group);
    const std::size_t g = projected.size();

    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto va = projected[a].values();
        const auto vb = projected[b].values();
        return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });
    std::vector<std::span<const double>> canon;
    canon.reserve(g);
    for (std::size_t i : order) {
        canon.push_back(projected[i].values());
    }

    std::mt19937_64 rng(config.rng_seed);
    Partition best;
    int best_restart = -1;
    for (int r = 0; r < config.kmeans_restarts; ++r) {
        const auto first = static_cast<std::size_t>(rng() % g);
        auto p = lloyd(canon, first, config.kmeans_max_iters);
        if (best_restart < 0 || p.total < best.total) {
            best = std::move(p);
            best_restart = r;
        }
    }

    int quality = 0;
    if (best.sizes[1] > best.sizes[0]) {
        quality = 1;
    } else if (best.sizes[1] == best.sizes[0]) {
        const double spread0 = best.wcss[0] / static_cast<double>(best.sizes[0]);
        const double spread1 = best.wcss[1] / static_cast<double>(best.sizes[1]);
        if (spread1 < spread0) {
            quality = 1;
        } else if (spread1 == spread0) {
            quality = best.assignment[0];
        }
    }

    KMeansResult out;
    out.assignment.resize(g);
    for (std::size_t c = 0; c < g; ++c) {
        out.assignment[order[c]] = best.assignment[c];
    }
    std::vector<double> raw(g);
    for (std::size_t i = 0; i < g; ++i) {
        raw[i] = vec::distance(projected[i].values(), best.centers[quality]);
    }
    out.rewards = normalize_distances(std::move(raw));
    out.centers = std::move(best.centers);
    out.cluster_sizes = std::move(best.sizes);
    out.cluster_wcss = std::move(best.wcss);
    out.wcss = best.total;
    out.quality_cluster = quality;
    out.best_restart = best_restart;
    return out;
}

RewardVector kmeans_rewards(const TrajectoryGroup& group, const BaselineConfig& config) {
    return kmeans_cluster(group, config).rewards;
}

EigenCentralityResult eigen_centrality(const TrajectoryGroup& group, const BaselineConfig& config) {
    config.validate();
    require_pair(group, "eigen centrality");
    const std::size_t g = group.size();

    std::vector<double> a(g * g, 1.0);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            const double s = 0.5 * (1.0 + cosine_similarity(group[i], group[j]));
            a[i * g + j] = s;
            a[j * g + i] = s;
        }
    }

    auto multiply = [&](const std::vector<double>& v, std::vector<double>& out) {
        for (std::size_t i = 0; i < g; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < g; ++j) {
                s += a[i * g + j] * v[j];
            }
            out[i] = s;
        }
    };

    std::vector<double> v(g, 1.0 / std::sqrt(static_cast<double>(g)));
    std::vector<double> av(g);
    bool converged = false;
    int it = 0;
    while (it < config.power_iters) {
        multiply(v, av);
        ++it;
        const double n = vec::norm(av);
        for (double& x : av) {
            x /= n;
        }
        const double step = vec::distance(av, v);
        v.swap(av);
        if (step < config.power_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        fail(ErrorCode::NoConvergence, "power iteration did not reach power_tol within " +
                                           std::to_string(config.power_iters) + " iterations");
    }

    if (std::accumulate(v.begin(), v.end(), 0.0) < 0.0) {
        for (double& x : v) {
            x = -x;
        }
    }
    multiply(v, av);
    const double lambda = vec::dot(v, av);
    double residual = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        const double r = av[i] - lambda * v[i];
        residual += r * r;
    }

    EigenCentralityResult out;
    const double vmax = *std::max_element(v.begin(), v.end());
    std::vector<double> deficit(g);
    for (std::size_t i = 0; i < g; ++i) {
        deficit[i] = vmax - v[i];
    }
    out.rewards = normalize_distances(std::move(deficit));
    out.eigenvector = std::move(v);
    out.eigenvalue = lambda;
    out.residual = std::sqrt(residual);
    out.iterations = it;
    return out;
}

RewardVector eigen_centrality_rewards(const TrajectoryGroup& group, const BaselineConfig& config) {
    return eigen_centrality(group, config).rewards;
}

} // namespace lgrpo
