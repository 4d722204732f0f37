#include "lgrpo/geometry.hpp"

#include "lgrpo/error.hpp"

#include <algorithm>
#include <cmath>

namespace lgrpo {

namespace vec {

// Reductions keep four partial sums so consecutive adds do not wait on each
// other; the result differs from a sequential sum only by rounding.
double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t n = a.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        s0 += a[k] * b[k];
        s1 += a[k + 1] * b[k + 1];
        s2 += a[k + 2] * b[k + 2];
        s3 += a[k + 3] * b[k + 3];
    }
    for (; k < n; ++k) {
        s0 += a[k] * b[k];
    }
    return (s0 + s1) + (s2 + s3);
}

double norm(std::span<const double> a) noexcept {
    return std::sqrt(dot(a, a));
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t n = a.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const double e0 = a[k] - b[k];
        const double e1 = a[k + 1] - b[k + 1];
        const double e2 = a[k + 2] - b[k + 2];
        const double e3 = a[k + 3] - b[k + 3];
        s0 += e0 * e0;
        s1 += e1 * e1;
        s2 += e2 * e2;
        s3 += e3 * e3;
    }
    for (; k < n; ++k) {
        const double e = a[k] - b[k];
        s0 += e * e;
    }
    return (s0 + s1) + (s2 + s3);
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

} // namespace vec

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch,
             "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

} // namespace

LatentVector::LatentVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        fail(ErrorCode::InvalidArgument, "latent vector must have dimension >= 1");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            fail(ErrorCode::NonFiniteValue,
                 "latent vector entry " + std::to_string(k) + " is not finite");
        }
    }
}

UnitVector UnitVector::from_unit_values(std::vector<double> values) {
    if (values.empty()) {
        fail(ErrorCode::InvalidArgument, "unit vector must have dimension >= 1");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            fail(ErrorCode::NonFiniteValue, "unit vector entry is not finite");
        }
    }
    const double n = vec::norm(values);
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
        fail(ErrorCode::InvalidArgument, "values do not have unit norm");
    }
    return UnitVector(std::move(values));
}

TrajectoryGroup::TrajectoryGroup(std::vector<LatentVector> vectors,
                                 std::optional<std::vector<double>> labels,
                                 std::string prompt_id)
    : vectors_(std::move(vectors)), labels_(std::move(labels)), prompt_id_(std::move(prompt_id)) {
    if (vectors_.empty()) {
        fail(ErrorCode::EmptyInput, "trajectory group must contain at least one vector");
    }
    const std::size_t d = vectors_.front().dim();
    for (const auto& v : vectors_) {
        require_same_dim(d, v.dim());
    }
    if (labels_) {
        if (labels_->size() != vectors_.size()) {
            fail(ErrorCode::LengthMismatch, "label count " + std::to_string(labels_->size()) +
                                                " does not match group size " +
                                                std::to_string(vectors_.size()));
        }
        for (double l : *labels_) {
            if (!(l >= 0.0 && l <= 1.0)) {
                fail(ErrorCode::LabelOutOfRange, "label outside [0, 1]");
            }
        }
    }
}

UnitVector spherical_project(std::span<const double> v) {
    const double n = vec::norm(v);
    if (!(n > kZeroNormTolerance)) {
        fail(ErrorCode::ZeroNormVector, "cannot project a vector with norm <= 1e-12");
    }
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) {
        x /= n;
    }
    return UnitVector(std::move(out));
}

UnitVector spherical_project(const LatentVector& v) {
    return spherical_project(v.values());
}

std::vector<UnitVector> project_group(const TrajectoryGroup& group) {
    std::vector<UnitVector> out;
    out.reserve(group.size());
    for (const auto& v : group.vectors()) {
        out.push_back(spherical_project(v));
    }
    return out;
}

double euclidean_distance(const UnitVector& a, const UnitVector& b) {
    require_same_dim(a.dim(), b.dim());
    return vec::distance(a.values(), b.values());
}

double cosine_similarity(const LatentVector& a, const LatentVector& b) {
    require_same_dim(a.dim(), b.dim());
    const auto x = a.values();
    const auto y = b.values();
    double ab0 = 0.0, ab1 = 0.0, aa0 = 0.0, aa1 = 0.0, bb0 = 0.0, bb1 = 0.0;
    const std::size_t n = x.size();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        ab0 += x[k] * y[k];
        aa0 += x[k] * x[k];
        bb0 += y[k] * y[k];
        ab1 += x[k + 1] * y[k + 1];
        aa1 += x[k + 1] * x[k + 1];
        bb1 += y[k + 1] * y[k + 1];
    }
    for (; k < n; ++k) {
        ab0 += x[k] * y[k];
        aa0 += x[k] * x[k];
        bb0 += y[k] * y[k];
    }
    const double ab = ab0 + ab1;
    const double aa = aa0 + aa1;
    const double bb = bb0 + bb1;
    const double na = std::sqrt(aa);
    const double nb = std::sqrt(bb);
    if (!(na > kZeroNormTolerance) || !(nb > kZeroNormTolerance)) {
        fail(ErrorCode::ZeroNormVector, "cosine similarity of a zero-norm vector");
    }
    return std::clamp(ab / (na * nb), -1.0, 1.0);
}

} // namespace lgrpo
