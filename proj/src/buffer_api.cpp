#include "lgrpo/buffer_api.hpp"

#include "lgrpo/advantage.hpp"
#include "lgrpo/config.hpp"
#include "lgrpo/error.hpp"
#include "lgrpo/scoring.hpp"

namespace lgrpo {

namespace {

template <typename T>
TrajectoryGroup group_from_buffer(std::span<const T> buffer, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || rows * cols != buffer.size()) {
        fail(ErrorCode::ShapeMismatch, "buffer of " + std::to_string(buffer.size()) +
                                           " values does not match shape " + std::to_string(rows) + "x" +
                                           std::to_string(cols));
    }
    std::vector<LatentVector> vectors;
    vectors.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = buffer.subspan(r * cols, cols);
        vectors.emplace_back(std::vector<double>(row.begin(), row.end()));
    }
    return TrajectoryGroup(std::move(vectors));
}

template <typename T>
std::vector<double> rewards_impl(std::span<const T> buffer, std::size_t rows, std::size_t cols,
                                 std::string_view method, const std::map<std::string, std::string>& settings) {
    const auto group = group_from_buffer(buffer, rows, cols);
    const auto config = config_from_map(settings);
    return score_group(group, parse_method(method), config.scoring).rewards.rewards;
}

} // namespace

std::vector<double> compute_rewards_from_buffer(std::span<const float> buffer, std::size_t rows, std::size_t cols,
                                                std::string_view method,
                                                const std::map<std::string, std::string>& settings) {
    return rewards_impl(buffer, rows, cols, method, settings);
}

std::vector<double> compute_rewards_from_buffer(std::span<const double> buffer, std::size_t rows,
                                                std::size_t cols, std::string_view method,
                                                const std::map<std::string, std::string>& settings) {
    return rewards_impl(buffer, rows, cols, method, settings);
}

std::vector<double> group_advantages_from_buffer(std::span<const float> rewards, double epsilon) {
    const std::vector<double> wide(rewards.begin(), rewards.end());
    return group_advantages(std::span<const double>(wide), epsilon).advantages;
}

std::vector<double> group_advantages_from_buffer(std::span<const double> rewards, double epsilon) {
    return group_advantages(rewards, epsilon).advantages;
}

} // namespace lgrpo
