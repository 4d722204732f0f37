#ifndef LGRPO_TESTS_ORACLE_HPP
#define LGRPO_TESTS_ORACLE_HPP

// Reference implementations written against plain nested vectors, sharing no
// code with the library. Each mirrors the algorithm statement line by line.

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

struct IrceOut {
    std::vector<double> centroid;
    std::vector<double> weights;
    std::vector<double> distances;
    std::vector<double> rewards;
    int iterations = 0;
    bool converged = false;
};

struct IrceParams {
    int iterations = 5;
    double tau = 0.5;
    double eps = 1e-8;
    double threshold = 1e-6;
};

IrceOut irce(const Matrix& raw, const IrceParams& p = {});

// Init-only variant, i.e. the plain normalized mean.
IrceOut mean_pool(const Matrix& raw, double eps = 1e-8);

std::vector<double> minmax_rewards(const std::vector<double>& d, double eps = 1e-8);

std::vector<double> advantages(const std::vector<double>& r, double eps);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

} // namespace oracle

namespace testdata {

// Gaussian entries, G rows of dimension d.
oracle::Matrix gaussian_group(std::mt19937_64& rng, std::size_t g, std::size_t d);

// Random orthogonal d x d matrix (Gram-Schmidt on a Gaussian matrix).
oracle::Matrix random_rotation(std::mt19937_64& rng, std::size_t d);

} // namespace testdata

#endif
