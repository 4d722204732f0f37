#include "lgrpo/analysis.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lgrpo {

void LabelThresholds::validate() const {
    if (!(incorrect_below >= 0.0 && correct_above <= 1.0 && incorrect_below <= correct_above)) {
        fail(ErrorCode::InvalidArgument, "label thresholds must satisfy 0 <= incorrect <= correct <= 1");
    }
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && x[order[j]] == x[order[i]]) {
            ++j;
        }
        // positions i..j-1 (0-based) share rank mean((i+1)..j)
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) {
            ranks[order[t]] = rank;
        }
        i = j;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::LengthMismatch, "spearman inputs differ in length: " + std::to_string(x.size()) +
                                            " vs " + std::to_string(y.size()));
    }
    if (x.size() < 2) {
        fail(ErrorCode::InvalidArgument, "spearman needs at least two samples");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            fail(ErrorCode::NonFiniteValue, "spearman input is not finite");
        }
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = 0.5 * (n + 1.0); // ranks always average to this

    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double a = rx[i] - mean;
        const double b = ry[i] - mean;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::size_t argmax(std::span<const double> x) {
    if (x.empty()) {
        fail(ErrorCode::EmptyInput, "argmax of an empty sequence");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] > x[best]) {
            best = i;
        }
    }
    return best;
}

double top1_agreement(std::span<const RewardVector> reward_sets,
                      std::span<const std::vector<double>> label_sets, const LabelThresholds& thresholds) {
    if (reward_sets.size() != label_sets.size()) {
        fail(ErrorCode::ShapeMismatch, "reward and label set counts differ");
    }
    if (reward_sets.empty()) {
        fail(ErrorCode::EmptyInput, "top-1 agreement over zero groups");
    }
    std::size_t hits = 0;
    for (std::size_t g = 0; g < reward_sets.size(); ++g) {
        const auto& r = reward_sets[g].rewards;
        if (r.empty() || r.size() != label_sets[g].size()) {
            fail(ErrorCode::ShapeMismatch, "group " + std::to_string(g) + " has mismatched reward/label sizes");
        }
        if (thresholds.is_correct(label_sets[g][argmax(r)])) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(reward_sets.size());
}

GeometryReport geometry_report(const TrajectoryGroup& rollouts, const ScoreResult& score,
                               const LabelThresholds& thresholds) {
    thresholds.validate();
    if (!rollouts.has_labels()) {
        fail(ErrorCode::MissingLabels, "geometry report requires labels");
    }
    if (score.rewards.size() != rollouts.size() || score.consensus.size() != rollouts.dim()) {
        fail(ErrorCode::ShapeMismatch, "score does not match the rollout set");
    }
    const auto& labels = *rollouts.labels();
    const auto projected = project_group(rollouts);

    GeometryReport out;
    double sum_correct = 0.0;
    double sum_incorrect = 0.0;
    for (std::size_t i = 0; i < projected.size(); ++i) {
        const double d = vec::distance(projected[i].values(), score.consensus);
        if (thresholds.is_correct(labels[i])) {
            ++out.n_correct;
            sum_correct += d;
        } else if (thresholds.is_incorrect(labels[i])) {
            ++out.n_incorrect;
            sum_incorrect += d;
        }
    }
    if (out.n_correct > 0) {
        out.mean_dist_correct = sum_correct / static_cast<double>(out.n_correct);
    }
    if (out.n_incorrect > 0) {
        out.mean_dist_incorrect = sum_incorrect / static_cast<double>(out.n_incorrect);
    }
    if (out.mean_dist_correct && out.mean_dist_incorrect && *out.mean_dist_correct > 0.0) {
        out.distance_ratio = *out.mean_dist_incorrect / *out.mean_dist_correct;
    }
    if (rollouts.size() >= 2) {
        out.spearman_rho = spearman(score.rewards.rewards, labels);
    }
    out.top1_agreement = thresholds.is_correct(labels[argmax(score.rewards.rewards)]) ? 1.0 : 0.0;
    out.consensus = score.consensus;
    out.note = score.note;
    return out;
}

GeometryReport geometry_report(const TrajectoryGroup& rollouts, Method method, const ScoringConfig& config,
                               const LabelThresholds& thresholds) {
    if (!rollouts.has_labels()) {
        fail(ErrorCode::MissingLabels, "geometry report requires labels");
    }
    return geometry_report(rollouts, score_group(rollouts, method, config), thresholds);
}

std::vector<double> PcaProjection::project(std::span<const double> point) const {
    if (point.size() != mean.size()) {
        fail(ErrorCode::DimensionMismatch, "point dimension differs from the PCA basis");
    }
    std::vector<double> out(components.size(), 0.0);
    for (std::size_t c = 0; c < components.size(); ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < point.size(); ++k) {
            s += (point[k] - mean[k]) * components[c][k];
        }
        out[c] = s;
    }
    return out;
}

namespace {

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (const auto& b : basis) {
        const double along = vec::dot(v, b);
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] -= along * b[k];
        }
    }
}

} // namespace

PcaProjection pca_project(const TrajectoryGroup& points, std::size_t k, const PcaOptions& options) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n < 2) {
        fail(ErrorCode::InvalidArgument, "pca needs at least two points");
    }
    if (k < 1 || k > d) {
        fail(ErrorCode::InvalidArgument, "pca component count must be in [1, dimension]");
    }

    PcaProjection out;
    out.mean.assign(d, 0.0);
    for (const auto& p : points.vectors()) {
        for (std::size_t j = 0; j < d; ++j) {
            out.mean[j] += p[j];
        }
    }
    for (double& m : out.mean) {
        m /= static_cast<double>(n);
    }
    // Centered rows, deflated in place after each component.
    std::vector<std::vector<double>> x(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            x[i][j] = points[i][j] - out.mean[j];
        }
        out.total_variance += vec::dot(x[i], x[i]);
    }
    out.total_variance /= static_cast<double>(n);
    if (!(out.total_variance > 1e-14)) {
        fail(ErrorCode::NoConvergence, "points have zero total variance");
    }
    const double negligible = 1e-12 * out.total_variance;

    auto cov_times = [&](const std::vector<double>& v, std::vector<double>& w) {
        std::fill(w.begin(), w.end(), 0.0);
        for (const auto& row : x) {
            const double s = vec::dot(row, v);
            for (std::size_t j = 0; j < d; ++j) {
                w[j] += s * row[j];
            }
        }
        for (double& e : w) {
            e /= static_cast<double>(n);
        }
    };

    std::vector<double> w(d);
    for (std::size_t c = 0; c < k; ++c) {
        // Start from the largest remaining row.
        std::size_t start = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = vec::dot(x[i], x[i]);
            if (r > best) {
                best = r;
                start = i;
            }
        }
        std::vector<double> v;
        double lambda = 0.0;
        if (best / static_cast<double>(n) <= negligible) {
            // No variance left: any unit vector orthogonal to the found components.
            for (std::size_t e = 0; e < d; ++e) {
                v.assign(d, 0.0);
                v[e] = 1.0;
                orthogonalize(v, out.components);
                const double nv = vec::norm(v);
                if (nv > 1e-6) {
                    for (double& t : v) {
                        t /= nv;
                    }
                    break;
                }
            }
        } else {
            v = x[start];
            orthogonalize(v, out.components);
            double nv = vec::norm(v);
            for (double& t : v) {
                t /= nv;
            }
            bool settled = false;
            for (int it = 0; it < options.max_iterations; ++it) {
                cov_times(v, w);
                orthogonalize(w, out.components);
                lambda = vec::dot(v, w);
                double residual = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    const double r = w[j] - lambda * v[j];
                    residual += r * r;
                }
                residual = std::sqrt(residual);
                if (residual <= options.tolerance * std::max(lambda, negligible)) {
                    settled = true;
                    break;
                }
                nv = vec::norm(w);
                if (nv <= negligible) {
                    lambda = 0.0;
                    settled = true;
                    break;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    v[j] = w[j] / nv;
                }
            }
            if (!settled) {
                fail(ErrorCode::NoConvergence,
                     "principal component " + std::to_string(c + 1) + " did not converge");
            }
        }
        for (auto& row : x) {
            const double s = vec::dot(row, v);
            for (std::size_t j = 0; j < d; ++j) {
                row[j] -= s * v[j];
            }
        }
        out.components.push_back(std::move(v));
        out.explained_variance.push_back(std::max(lambda, 0.0));
    }

    out.projected.reserve(n);
    for (const auto& p : points.vectors()) {
        out.projected.push_back(out.project(p.values()));
    }
    return out;
}

} // namespace lgrpo
