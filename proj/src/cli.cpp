#include "lgrpo/cli.hpp"

#include "lgrpo/dump.hpp"
#include "lgrpo/error.hpp"
#include "lgrpo/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace lgrpo {

namespace {

constexpr const char* kSynopsis =
    "usage:\n"
    "  lgrpo reward   --method {irce|mean|kmeans|eigen} --in DUMP --out CSV [--advantages] [--eps E] [--config FILE]\n"
    "  lgrpo simulate --spec FILE --out DUMP\n"
    "  lgrpo analyze  --in DUMP --method M --out CSV [--pca-csv PATH] [--svg PATH] [--group N] [--config FILE]\n"
    "  lgrpo compare  --in DUMP --out CSV [--timing] [--config FILE]\n";

struct Options {
    std::string method;
    std::string in;
    std::string out;
    std::string config;
    std::string spec;
    std::string pca_csv;
    std::string svg;
    std::size_t group = 0;
    bool advantages = false;
    bool timing = false;
    std::optional<double> eps;
};

RunConfig resolve_config(const std::string& config_path, const std::string& method) {
    RunConfig config;
    if (!config_path.empty()) {
        config = load_config(config_path);
    }
    if (const auto seed = seed_from_environment()) {
        config.seed = *seed;
        config.apply_seed();
    }
    if (!method.empty()) {
        config.method = parse_method(method);
    }
    config.validate();
    return config;
}

// Writes to a file, or to `out` when path is "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
    if (path == "-") {
        write(out);
        return;
    }
    std::ostringstream buffer;
    write(buffer);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        fail(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
    }
    file << buffer.str();
    if (!file) {
        fail(ErrorCode::IoFailure, "failed writing '" + path + "'");
    }
}

void run_reward(const Options& o, std::ostream& out) {
    auto config = resolve_config(o.config, o.method);
    if (o.eps) {
        config.advantage_epsilon = *o.eps;
        config.validate();
    }
    const auto groups = read_group_dump(o.in);
    emit(o.out, out, [&](std::ostream& s) { write_reward_csv(s, groups, config, o.advantages); });
}

void run_simulate(const Options& o) {
    const auto config = resolve_config(o.spec, "");
    const auto generated = simulate(config.simulation, config.seed);
    std::vector<TrajectoryGroup> groups;
    groups.reserve(generated.size());
    for (const auto& g : generated) {
        groups.push_back(g.group);
    }
    write_group_dump(groups, o.out);
}

void run_analyze(const Options& o, std::ostream& out) {
    const auto config = resolve_config(o.config, o.method);
    const auto groups = read_group_dump(o.in);
    const auto summary = summarize_geometry(groups, config);
    emit(o.out, out, [&](std::ostream& s) { write_geometry_csv(s, summary, config); });

    if (o.pca_csv.empty() && o.svg.empty()) {
        return;
    }
    if (o.group >= groups.size()) {
        fail(ErrorCode::InvalidArgument, "--group " + std::to_string(o.group) + " out of range");
    }
    const auto& group = groups[o.group];
    std::vector<LatentVector> unit;
    for (const auto& h : project_group(group)) {
        unit.emplace_back(std::vector<double>(h.values().begin(), h.values().end()));
    }
    const TrajectoryGroup projected(std::move(unit), group.labels());
    const auto pca = pca_project(projected, 2);
    const auto& centroid = summary.groups[o.group].consensus;
    if (!o.pca_csv.empty()) {
        emit(o.pca_csv, out, [&](std::ostream& s) { write_pca_csv(s, o.group, pca, projected, centroid); });
    }
    if (!o.svg.empty()) {
        emit(o.svg, out, [&](std::ostream& s) { write_pca_svg(s, pca, projected, centroid, config.thresholds); });
    }
}

void run_compare(const Options& o, std::ostream& out) {
    const auto config = resolve_config(o.config, "");
    const auto groups = read_group_dump(o.in);
    const auto rows = compare_methods(groups, config, o.timing);
    emit(o.out, out, [&](std::ostream& s) { write_compare_table(s, rows, groups.size()); });
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Intrinsic latent-geometry rewards for trajectory groups", "lgrpo"};
    app.require_subcommand(1);
    Options o;

    auto* reward = app.add_subcommand("reward", "Per-trajectory rewards (and advantages) as CSV");
    reward->add_option("--method", o.method, "irce | mean | kmeans | eigen");
    reward->add_option("--in", o.in, "input group dump")->required();
    reward->add_option("--out", o.out, "output CSV ('-' for stdout)")->required();
    reward->add_flag("--advantages", o.advantages, "add GRPO advantages");
    reward->add_option("--eps", o.eps, "advantage epsilon");
    reward->add_option("--config", o.config, "key=value config file");

    auto* sim = app.add_subcommand("simulate", "Generate a synthetic group dump");
    sim->add_option("--spec", o.spec, "key=value config file")->required();
    sim->add_option("--out", o.out, "output group dump")->required();

    auto* analyze = app.add_subcommand("analyze", "Geometry report and optional 2D PCA export");
    analyze->add_option("--in", o.in, "input group dump")->required();
    analyze->add_option("--method", o.method, "irce | mean | kmeans | eigen");
    analyze->add_option("--out", o.out, "output CSV ('-' for stdout)")->required();
    analyze->add_option("--pca-csv", o.pca_csv, "PCA projection CSV");
    analyze->add_option("--svg", o.svg, "PCA scatter SVG");
    analyze->add_option("--group", o.group, "group used for the PCA export");
    analyze->add_option("--config", o.config, "key=value config file");

    auto* compare = app.add_subcommand("compare", "All four methods against the labels");
    compare->add_option("--in", o.in, "input group dump")->required();
    compare->add_option("--out", o.out, "output CSV ('-' for stdout)")->required();
    compare->add_flag("--timing", o.timing, "add mean wall time per group (non-deterministic)");
    compare->add_option("--config", o.config, "key=value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << kSynopsis;
        return 2;
    }

    try {
        if (reward->parsed()) {
            run_reward(o, out);
        } else if (sim->parsed()) {
            run_simulate(o);
        } else if (analyze->parsed()) {
            run_analyze(o, out);
        } else if (compare->parsed()) {
            run_compare(o, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace lgrpo
