#include "lgrpo/config.hpp"

#include "lgrpo/error.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lgrpo {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    fail(ErrorCode::ConfigError,
         "bad value '" + std::string(value) + "' for '" + std::string(key) + "' (expected " + expected + ")");
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        bad_value(key, value, "an unsigned integer");
    }
    return out;
}

int parse_int(std::string_view key, std::string_view value) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        bad_value(key, value, "an integer");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        bad_value(key, value, "a real number");
    }
    return out;
}

} // namespace

void RunConfig::apply_seed() {
    scoring.baseline.rng_seed = seed;
    simulation.synthetic.rng_seed = seed;
    simulation.graded.rng_seed = seed;
}

void RunConfig::validate() const {
    scoring.irce.validate();
    scoring.baseline.validate();
    thresholds.validate();
    simulation.synthetic.validate();
    simulation.graded.validate();
    if (simulation.groups < 1) {
        fail(ErrorCode::ConfigError, "simulate.groups must be >= 1");
    }
    if (!(advantage_epsilon > 0.0)) {
        fail(ErrorCode::ConfigError, "advantage.epsilon must be > 0");
    }
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
    auto& irce = c.scoring.irce;
    auto& base = c.scoring.baseline;
    auto& syn = c.simulation.synthetic;
    auto& graded = c.simulation.graded;

    if (key == "method") {
        c.method = parse_method(value);
    } else if (key == "seed") {
        c.seed = parse_unsigned<std::uint64_t>(key, value);
        c.apply_seed();
    } else if (key == "advantage.epsilon") {
        c.advantage_epsilon = parse_real(key, value);
    } else if (key == "irce.max_iterations") {
        irce.max_iterations = parse_int(key, value);
    } else if (key == "irce.temperature") {
        irce.temperature = parse_real(key, value);
    } else if (key == "irce.epsilon") {
        irce.epsilon = parse_real(key, value);
    } else if (key == "irce.convergence_threshold") {
        irce.convergence_threshold = parse_real(key, value);
    } else if (key == "kmeans.max_iters") {
        base.kmeans_max_iters = parse_int(key, value);
    } else if (key == "kmeans.restarts") {
        base.kmeans_restarts = parse_int(key, value);
    } else if (key == "eigen.power_iters") {
        base.power_iters = parse_int(key, value);
    } else if (key == "eigen.power_tol") {
        base.power_tol = parse_real(key, value);
    } else if (key == "analysis.correct_above") {
        c.thresholds.correct_above = parse_real(key, value);
    } else if (key == "analysis.incorrect_below") {
        c.thresholds.incorrect_below = parse_real(key, value);
    } else if (key == "simulate.kind") {
        if (value == "core_periphery") {
            c.simulation.kind = SimulationKind::core_periphery;
        } else if (value == "graded") {
            c.simulation.kind = SimulationKind::graded;
        } else if (value == "suite") {
            c.simulation.kind = SimulationKind::suite;
        } else {
            bad_value(key, value, "core_periphery, graded or suite");
        }
    } else if (key == "simulate.groups") {
        c.simulation.groups = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic.dimension") {
        syn.dimension = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic.n_correct") {
        syn.n_correct = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic.n_incorrect") {
        syn.n_incorrect = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic.correct_spread") {
        syn.correct_spread = parse_real(key, value);
    } else if (key == "synthetic.incorrect_spread") {
        syn.incorrect_spread = parse_real(key, value);
    } else if (key == "synthetic.incorrect_mode") {
        if (value == "gaussian") {
            syn.incorrect_mode = IncorrectMode::gaussian;
        } else if (value == "uniform") {
            syn.incorrect_mode = IncorrectMode::uniform;
        } else {
            bad_value(key, value, "gaussian or uniform");
        }
    } else if (key == "graded.dimension") {
        graded.dimension = parse_unsigned<std::size_t>(key, value);
    } else if (key == "graded.group_size") {
        graded.group_size = parse_unsigned<std::size_t>(key, value);
    } else if (key == "graded.max_angle") {
        graded.max_angle = parse_real(key, value);
    } else if (key == "graded.label_noise") {
        graded.label_noise = parse_real(key, value);
    } else {
        fail(ErrorCode::ConfigError, "unknown config key '" + std::string(key) + "'");
    }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const Error& e) {
            fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::IoFailure, "cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

RunConfig config_from_map(const std::map<std::string, std::string>& settings, RunConfig base) {
    for (const auto& [key, value] : settings) {
        apply_setting(base, key, value);
    }
    return base;
}

std::optional<std::uint64_t> seed_from_environment() {
    const char* raw = std::getenv("LGRPO_SEED");
    if (raw == nullptr) {
        return std::nullopt;
    }
    return parse_unsigned<std::uint64_t>("LGRPO_SEED", trim(raw));
}

} // namespace lgrpo
