#ifndef LGRPO_BUFFER_API_HPP
#define LGRPO_BUFFER_API_HPP

// Entry points for host-language extensions: contiguous row-major buffers in,
// plain vectors out. All math is delegated to the library modules.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lgrpo {

/// Rewards for a (rows x cols) row-major float buffer holding one group.
/// `method` is irce | mean | kmeans | eigen; `settings` uses the config-file
/// keys. Throws ShapeMismatch when rows * cols != buffer.size() or either is 0.
std::vector<double> compute_rewards_from_buffer(std::span<const float> buffer, std::size_t rows,
                                                std::size_t cols, std::string_view method,
                                                const std::map<std::string, std::string>& settings = {});

std::vector<double> compute_rewards_from_buffer(std::span<const double> buffer, std::size_t rows,
                                                std::size_t cols, std::string_view method,
                                                const std::map<std::string, std::string>& settings = {});

std::vector<double> group_advantages_from_buffer(std::span<const float> rewards, double epsilon);
std::vector<double> group_advantages_from_buffer(std::span<const double> rewards, double epsilon);

} // namespace lgrpo

#endif
