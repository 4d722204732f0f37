#include "lgrpo/report.hpp"

#include "lgrpo/advantage.hpp"
#include "lgrpo/error.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <limits>
#include <cmath>
#include <ostream>

namespace lgrpo {

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string format_real(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("NA");
}

std::vector<SyntheticGroup> simulate(const SimulationConfig& config, std::uint64_t seed) {
    if (config.groups < 1) {
        fail(ErrorCode::ConfigError, "simulate.groups must be >= 1");
    }
    if (config.kind == SimulationKind::suite && config.synthetic.dimension != config.graded.dimension) {
        fail(ErrorCode::ConfigError, "suite simulation needs synthetic.dimension == graded.dimension");
    }
    std::vector<SyntheticGroup> out;
    out.reserve(config.groups);
    for (std::size_t g = 0; g < config.groups; ++g) {
        const auto s = derive_seed(seed, g);
        const bool graded = config.kind == SimulationKind::graded ||
                            (config.kind == SimulationKind::suite && g % 2 == 0);
        if (graded) {
            auto spec = config.graded;
            spec.rng_seed = s;
            out.push_back(generate_graded_group(spec));
        } else {
            auto spec = config.synthetic;
            spec.rng_seed = s;
            out.push_back(generate_group(spec));
        }
    }
    return out;
}

void write_reward_csv(std::ostream& out, std::span<const TrajectoryGroup> groups, const RunConfig& config,
                      bool with_advantages) {
    std::vector<ScoreResult> scores;
    scores.reserve(groups.size());
    for (const auto& g : groups) {
        scores.push_back(score_group(g, config.method, config.scoring));
    }
    const bool labels = !groups.empty() && groups.front().has_labels();

    out << "# lgrpo-rewards v1 method=" << method_name(config.method) << '\n';
    for (std::size_t g = 0; g < scores.size(); ++g) {
        out << "# group " << g << ": " << scores[g].note
            << (scores[g].rewards.degenerate ? " degenerate=true" : "") << '\n';
    }
    out << "group_id,index,raw_distance,reward";
    if (with_advantages) {
        out << ",advantage";
    }
    if (labels) {
        out << ",label";
    }
    out << '\n';
    for (std::size_t g = 0; g < scores.size(); ++g) {
        const auto& r = scores[g].rewards;
        std::vector<double> adv;
        if (with_advantages) {
            adv = group_advantages(r, config.advantage_epsilon).advantages;
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << g << ',' << i << ',' << format_real(r.raw_distances[i]) << ',' << format_real(r.rewards[i]);
            if (with_advantages) {
                out << ',' << format_real(adv[i]);
            }
            if (labels) {
                out << ',' << format_real((*groups[g].labels())[i]);
            }
            out << '\n';
        }
    }
}

GeometrySummary summarize_geometry(std::span<const TrajectoryGroup> groups, const RunConfig& config) {
    if (groups.empty()) {
        fail(ErrorCode::EmptyInput, "no groups to analyze");
    }
    GeometrySummary s;
    std::vector<RewardVector> rewards;
    std::vector<std::vector<double>> labels;
    double sum_c = 0.0;
    double sum_i = 0.0;
    double sum_rho = 0.0;
    std::size_t n_rho = 0;
    for (const auto& g : groups) {
        auto score = score_group(g, config.method, config.scoring);
        auto rep = geometry_report(g, score, config.thresholds);
        s.overall.n_correct += rep.n_correct;
        s.overall.n_incorrect += rep.n_incorrect;
        if (rep.mean_dist_correct) {
            sum_c += *rep.mean_dist_correct * static_cast<double>(rep.n_correct);
        }
        if (rep.mean_dist_incorrect) {
            sum_i += *rep.mean_dist_incorrect * static_cast<double>(rep.n_incorrect);
        }
        if (rep.spearman_rho) {
            sum_rho += *rep.spearman_rho;
            ++n_rho;
        }
        rewards.push_back(std::move(score.rewards));
        labels.push_back(*g.labels());
        s.groups.push_back(std::move(rep));
    }
    auto& o = s.overall;
    if (o.n_correct > 0) {
        o.mean_dist_correct = sum_c / static_cast<double>(o.n_correct);
    }
    if (o.n_incorrect > 0) {
        o.mean_dist_incorrect = sum_i / static_cast<double>(o.n_incorrect);
    }
    if (o.mean_dist_correct && o.mean_dist_incorrect && *o.mean_dist_correct > 0.0) {
        o.distance_ratio = *o.mean_dist_incorrect / *o.mean_dist_correct;
    }
    if (n_rho > 0) {
        o.spearman_rho = sum_rho / static_cast<double>(n_rho);
    }
    o.top1_agreement = top1_agreement(rewards, labels, config.thresholds);
    return s;
}

namespace {

void geometry_row(std::ostream& out, const std::string& id, const GeometryReport& r) {
    out << id << ',' << r.n_correct << ',' << r.n_incorrect << ',' << format_real(r.mean_dist_correct) << ','
        << format_real(r.mean_dist_incorrect) << ',' << format_real(r.distance_ratio) << ','
        << format_real(r.spearman_rho) << ',' << format_real(r.top1_agreement) << '\n';
}

} // namespace

void write_geometry_csv(std::ostream& out, const GeometrySummary& summary, const RunConfig& config) {
    out << "# lgrpo-geometry v1 method=" << method_name(config.method)
        << " correct_above=" << format_real(config.thresholds.correct_above)
        << " incorrect_below=" << format_real(config.thresholds.incorrect_below) << '\n';
    out << "group_id,n_correct,n_incorrect,mean_dist_correct,mean_dist_incorrect,distance_ratio,spearman_rho,top1\n";
    for (std::size_t g = 0; g < summary.groups.size(); ++g) {
        geometry_row(out, std::to_string(g), summary.groups[g]);
    }
    geometry_row(out, "all", summary.overall);
}

void write_pca_csv(std::ostream& out, std::size_t group_id, const PcaProjection& pca,
                   const TrajectoryGroup& group, std::span<const double> centroid) {
    out << "# lgrpo-pca v1 group=" << group_id << " explained_variance=";
    for (std::size_t c = 0; c < pca.explained_variance.size(); ++c) {
        out << (c ? ";" : "") << format_real(pca.explained_variance[c]);
    }
    out << " total_variance=" << format_real(pca.total_variance) << '\n';
    out << "kind,index,label";
    for (std::size_t c = 0; c < pca.components.size(); ++c) {
        out << ",pc" << (c + 1);
    }
    out << '\n';
    for (std::size_t i = 0; i < pca.projected.size(); ++i) {
        out << "point," << i << ','
            << (group.has_labels() ? format_real((*group.labels())[i]) : std::string("NA"));
        for (double x : pca.projected[i]) {
            out << ',' << format_real(x);
        }
        out << '\n';
    }
    out << "centroid,NA,NA";
    for (double x : pca.project(centroid)) {
        out << ',' << format_real(x);
    }
    out << '\n';
}

void write_pca_svg(std::ostream& out, const PcaProjection& pca, const TrajectoryGroup& group,
                   std::span<const double> centroid, const LabelThresholds& thresholds) {
    if (pca.components.size() < 2) {
        fail(ErrorCode::InvalidArgument, "svg export needs a 2D projection");
    }
    const auto star = pca.project(centroid);
    double xmin = star[0], xmax = star[0], ymin = star[1], ymax = star[1];
    for (const auto& p : pca.projected) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    constexpr double size = 600.0;
    constexpr double pad = 30.0;
    const double sx = (size - 2 * pad) / std::max(xmax - xmin, 1e-12);
    const double sy = (size - 2 * pad) / std::max(ymax - ymin, 1e-12);
    auto px = [&](double x) { return pad + (x - xmin) * sx; };
    auto py = [&](double y) { return size - pad - (y - ymin) * sy; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    out << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < pca.projected.size(); ++i) {
        const char* color = "#999999";
        if (group.has_labels()) {
            const double l = (*group.labels())[i];
            if (thresholds.is_correct(l)) {
                color = "#2ca02c";
            } else if (thresholds.is_incorrect(l)) {
                color = "#d62728";
            }
        }
        out << "<circle cx=\"" << format_real(px(pca.projected[i][0])) << "\" cy=\""
            << format_real(py(pca.projected[i][1])) << "\" r=\"3\" fill=\"" << color
            << "\" fill-opacity=\"0.7\"/>\n";
    }
    const double cx = px(star[0]);
    const double cy = py(star[1]);
    out << "<polygon fill=\"gold\" stroke=\"black\" points=\"";
    for (int k = 0; k < 10; ++k) {
        const double r = (k % 2 == 0) ? 12.0 : 5.0;
        const double a = -1.5707963267948966 + k * 0.6283185307179586;
        out << (k ? " " : "") << format_real(cx + r * std::cos(a)) << ',' << format_real(cy + r * std::sin(a));
    }
    out << "\"/>\n</svg>\n";
}

namespace {
constexpr int kTimingPasses = 5;
// Keeps timed results observable so the scoring calls cannot be elided.
volatile double sink = 0.0;
} // namespace

std::vector<ComparisonRow> compare_methods(std::span<const TrajectoryGroup> groups, const RunConfig& config,
                                           bool with_timing) {
    if (groups.empty()) {
        fail(ErrorCode::EmptyInput, "no groups to compare");
    }
    std::vector<std::vector<double>> labels;
    for (const auto& g : groups) {
        if (!g.has_labels()) {
            fail(ErrorCode::MissingLabels, "compare requires labeled groups");
        }
        labels.push_back(*g.labels());
    }

    std::vector<ComparisonRow> rows;
    for (Method m : kAllMethods) {
        ComparisonRow row;
        row.method = m;
        std::vector<RewardVector> rewards;
        double rho_sum = 0.0;
        for (const auto& g : groups) {
            auto score = score_group(g, m, config.scoring);
            if (g.size() >= 2) {
                if (const auto rho = spearman(score.rewards.rewards, *g.labels())) {
                    rho_sum += *rho;
                    ++row.groups_scored;
                }
            }
            rewards.push_back(std::move(score.rewards));
        }
        if (row.groups_scored > 0) {
            row.mean_spearman = rho_sum / static_cast<double>(row.groups_scored);
        }
        row.top1 = top1_agreement(rewards, labels, config.thresholds);
        rows.push_back(row);
    }

    if (with_timing) {
        // Methods are timed in interleaved passes over all groups; the fastest
        // pass per method is kept, which discards warm-up and scheduler noise.
        std::vector<double> best(rows.size(), std::numeric_limits<double>::infinity());
        for (int pass = 0; pass < kTimingPasses; ++pass) {
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                for (const auto& g : groups) {
                    const auto score = score_group(g, rows[r].method, config.scoring);
                    sink = sink + score.rewards.rewards.front();
                }
                const auto t1 = std::chrono::steady_clock::now();
                best[r] = std::min(best[r], std::chrono::duration<double, std::micro>(t1 - t0).count());
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            rows[r].mean_microseconds = best[r] / static_cast<double>(groups.size());
        }
    }
    return rows;
}

void write_compare_table(std::ostream& out, std::span<const ComparisonRow> rows, std::size_t group_count) {
    const bool timing = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.mean_microseconds.has_value(); });
    out << "# lgrpo-compare v1 groups=" << group_count << '\n';
    out << "method,groups_scored,mean_spearman,top1_agreement";
    if (timing) {
        out << ",mean_us_per_group";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << method_name(r.method) << ',' << r.groups_scored << ',' << format_real(r.mean_spearman) << ','
            << format_real(r.top1);
        if (timing) {
            out << ',' << format_real(r.mean_microseconds);
        }
        out << '\n';
    }
}

} // namespace lgrpo
