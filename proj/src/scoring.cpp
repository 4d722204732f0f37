#include "lgrpo/scoring.hpp"

#include "lgrpo/error.hpp"

#include <sstream>

namespace lgrpo {

std::string_view method_name(Method m) noexcept {
    switch (m) {
    case Method::irce: return "irce";
    case Method::mean_pool: return "mean";
    case Method::kmeans: return "kmeans";
    case Method::eigen: return "eigen";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "irce") return Method::irce;
    if (name == "mean" || name == "mean_pool") return Method::mean_pool;
    if (name == "kmeans") return Method::kmeans;
    if (name == "eigen") return Method::eigen;
    fail(ErrorCode::ConfigError, "unknown method '" + std::string(name) + "'");
}

ScoreResult score_group(const TrajectoryGroup& group, Method method, const ScoringConfig& config) {
    ScoreResult out;
    std::ostringstream note;
    switch (method) {
    case Method::irce: {
        auto r = run_irce(group, config.irce);
        const auto mu = r.estimate.centroid.values();
        out.consensus.assign(mu.begin(), mu.end());
        out.rewards = std::move(r.rewards);
        note << "iterations=" << r.estimate.iterations_used
             << " converged=" << (r.estimate.converged ? "true" : "false");
        if (r.estimate.singular) {
            note << " singular=true";
        }
        break;
    }
    case Method::mean_pool: {
        const auto projected = project_group(group);
        auto center = mean_direction(projected);
        out.rewards = normalize_distances(distances_to(projected, center.direction));
        out.consensus = std::move(center.direction);
        note << "singular=" << (center.singular ? "true" : "false");
        break;
    }
    case Method::kmeans: {
        auto r = kmeans_cluster(group, config.baseline);
        const int q = r.quality_cluster;
        note << "quality_cluster=" << q << " size=" << r.cluster_sizes[q]
             << " other_size=" << r.cluster_sizes[1 - q] << " wcss=" << r.wcss
             << " restart=" << r.best_restart;
        out.consensus = std::move(r.centers[q]);
        out.rewards = std::move(r.rewards);
        break;
    }
    case Method::eigen: {
        auto r = eigen_centrality(group, config.baseline);
        const auto projected = project_group(group);
        std::vector<double> c(group.dim(), 0.0);
        for (std::size_t i = 0; i < projected.size(); ++i) {
            const auto x = projected[i].values();
            for (std::size_t k = 0; k < c.size(); ++k) {
                c[k] += r.eigenvector[i] * x[k];
            }
        }
        const double n = vec::norm(c);
        if (n > kSingularSumTolerance) {
            for (double& x : c) {
                x /= n;
            }
        }
        out.consensus = std::move(c);
        note << "eigenvalue=" << r.eigenvalue << " iterations=" << r.iterations;
        out.rewards = std::move(r.rewards);
        break;
    }
    }
    out.note = note.str();
    return out;
}

} // namespace lgrpo
