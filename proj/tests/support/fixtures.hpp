#ifndef LGRPO_TESTS_FIXTURES_HPP
#define LGRPO_TESTS_FIXTURES_HPP

#include "lgrpo/error.hpp"
#include "lgrpo/geometry.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace testdata {

inline lgrpo::TrajectoryGroup to_group(const oracle::Matrix& m,
                                       std::optional<std::vector<double>> labels = std::nullopt) {
    std::vector<lgrpo::LatentVector> v;
    for (const auto& row : m) {
        v.emplace_back(row);
    }
    return lgrpo::TrajectoryGroup(std::move(v), std::move(labels));
}

inline oracle::Matrix to_matrix(const lgrpo::TrajectoryGroup& g) {
    oracle::Matrix m;
    for (const auto& v : g.vectors()) {
        m.emplace_back(v.values().begin(), v.values().end());
    }
    return m;
}

inline std::vector<double> rotate(const oracle::Matrix& q, std::span<const double> x) {
    std::vector<double> y(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            y[i] += q[i][k] * x[k];
        }
    }
    return y;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

// The error code thrown by f, or nullopt when it returns normally.
template <typename F>
std::optional<lgrpo::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const lgrpo::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace testdata

#endif
