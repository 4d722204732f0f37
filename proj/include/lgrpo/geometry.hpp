#ifndef LGRPO_GEOMETRY_HPP
#define LGRPO_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lgrpo {

/// Norms at or below this are rejected by spherical projection.
inline constexpr double kZeroNormTolerance = 1e-12;

/// Maximum allowed deviation of a UnitVector's norm from 1.
inline constexpr double kUnitNormTolerance = 1e-9;

/// A raw terminal hidden state. Non-empty and finite.
class LatentVector {
public:
    explicit LatentVector(std::vector<double> values);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const LatentVector&, const LatentVector&) = default;

private:
    std::vector<double> values_;
};

/// A point on the unit hypersphere. Only obtainable through spherical_project()
/// or from values that already have unit norm.
class UnitVector {
public:
    /// Accepts values whose norm is within kUnitNormTolerance of 1.
    static UnitVector from_unit_values(std::vector<double> values);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const UnitVector&, const UnitVector&) = default;

private:
    explicit UnitVector(std::vector<double> values) : values_(std::move(values)) {}
    friend UnitVector spherical_project(std::span<const double> v);

    std::vector<double> values_;
};

/// The G latent vectors sampled for one prompt. Labels, when present, are
/// validation ground truth in [0, 1] and never consumed by the reward methods.
class TrajectoryGroup {
public:
    explicit TrajectoryGroup(std::vector<LatentVector> vectors,
                             std::optional<std::vector<double>> labels = std::nullopt,
                             std::string prompt_id = {});

    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dim() const noexcept { return vectors_.front().dim(); }
    const std::vector<LatentVector>& vectors() const noexcept { return vectors_; }
    const LatentVector& operator[](std::size_t i) const { return vectors_[i]; }
    bool has_labels() const noexcept { return labels_.has_value(); }
    const std::optional<std::vector<double>>& labels() const noexcept { return labels_; }
    const std::string& prompt_id() const noexcept { return prompt_id_; }

    friend bool operator==(const TrajectoryGroup&, const TrajectoryGroup&) = default;

private:
    std::vector<LatentVector> vectors_;
    std::optional<std::vector<double>> labels_;
    std::string prompt_id_;
};

UnitVector spherical_project(std::span<const double> v);
UnitVector spherical_project(const LatentVector& v);

/// Projects every member of the group, preserving order.
std::vector<UnitVector> project_group(const TrajectoryGroup& group);

double euclidean_distance(const UnitVector& a, const UnitVector& b);

/// Clamped into [-1, 1].
double cosine_similarity(const LatentVector& a, const LatentVector& b);

// Raw span kernels shared by the numerical modules. Callers guarantee equal lengths.
namespace vec {

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm(std::span<const double> a) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

} // namespace vec

} // namespace lgrpo

#endif
