#include "lgrpo/baselines.hpp"
#include "lgrpo/scoring.hpp"
#include "lgrpo/synthetic.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using lgrpo::BaselineConfig;
using lgrpo::ErrorCode;
using lgrpo::LatentVector;
using lgrpo::TrajectoryGroup;
using testdata::error_of;
using testdata::max_abs_diff;

namespace {

TrajectoryGroup two_versus_one_group() {
    return TrajectoryGroup({LatentVector({1, 0, 0}), LatentVector({1, 0, 0}), LatentVector({0, 1, 0})});
}

// Cyclic Jacobi rotations on a small symmetric matrix; returns the unit
// eigenvector of the largest eigenvalue, oriented to a nonnegative sum.
std::pair<double, std::vector<double>> jacobi_principal(oracle::Matrix a) {
    const std::size_t n = a.size();
    oracle::Matrix v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        v[i][i] = 1.0;
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a[p][q] * a[p][q];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) {
                    continue;
                }
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::size_t top = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (a[i][i] > a[top][top]) {
            top = i;
        }
    }
    std::vector<double> e(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = v[k][top];
        sum += e[k];
    }
    if (sum < 0) {
        for (double& x : e) {
            x = -x;
        }
    }
    return {a[top][top], e};
}

oracle::Matrix similarity(const oracle::Matrix& m) {
    const std::size_t g = m.size();
    oracle::Matrix a(g, std::vector<double>(g, 1.0));
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            if (i == j) {
                continue;
            }
            double ab = 0, aa = 0, bb = 0;
            for (std::size_t k = 0; k < m[i].size(); ++k) {
                ab += m[i][k] * m[j][k];
                aa += m[i][k] * m[i][k];
                bb += m[j][k] * m[j][k];
            }
            a[i][j] = 0.5 * (1.0 + ab / std::sqrt(aa * bb));
        }
    }
    return a;
}

// Smallest within-cluster sum of squares over every split into two non-empty
// clusters, on the projected vectors.
double exhaustive_wcss(const oracle::Matrix& raw, std::vector<int>* best_split) {
    const std::size_t g = raw.size();
    oracle::Matrix h;
    for (const auto& r : raw) {
        const double n = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        std::vector<double> u;
        for (double x : r) {
            u.push_back(x / n);
        }
        h.push_back(u);
    }
    double best = 1e300;
    for (unsigned mask = 1; mask + 1 < (1u << g); ++mask) {
        double total = 0.0;
        for (int c = 0; c < 2; ++c) {
            std::vector<double> mean(h[0].size(), 0.0);
            int count = 0;
            for (std::size_t i = 0; i < g; ++i) {
                if (static_cast<int>((mask >> i) & 1u) == c) {
                    for (std::size_t k = 0; k < mean.size(); ++k) {
                        mean[k] += h[i][k];
                    }
                    ++count;
                }
            }
            for (double& x : mean) {
                x /= count;
            }
            for (std::size_t i = 0; i < g; ++i) {
                if (static_cast<int>((mask >> i) & 1u) == c) {
                    for (std::size_t k = 0; k < mean.size(); ++k) {
                        total += (h[i][k] - mean[k]) * (h[i][k] - mean[k]);
                    }
                }
            }
        }
        if (total < best) {
            best = total;
            if (best_split) {
                best_split->assign(g, 0);
                for (std::size_t i = 0; i < g; ++i) {
                    (*best_split)[i] = static_cast<int>((mask >> i) & 1u);
                }
            }
        }
    }
    return best;
}

} // namespace

TEST(MeanPool, MatchesInitOnlyOracle) {
    std::mt19937_64 rng(20);
    for (int t = 0; t < 100; ++t) {
        const auto m = testdata::gaussian_group(rng, 1 + t % 12, 2 + t % 20);
        const auto r = lgrpo::mean_pool_rewards(testdata::to_group(m));
        oracle::IrceParams zero;
        zero.iterations = 0;
        const auto o = oracle::irce(m, zero);
        EXPECT_LE(max_abs_diff(r.rewards, o.rewards), 1e-12);
        EXPECT_LE(max_abs_diff(r.raw_distances, o.distances), 1e-12);
        const auto direct = oracle::mean_pool(m);
        EXPECT_LE(max_abs_diff(r.rewards, direct.rewards), 1e-12);
    }
}

TEST(MeanPool, TwoVersusOne) {
    const auto r = lgrpo::mean_pool_rewards(two_versus_one_group());
    EXPECT_EQ(r.rewards, (std::vector<double>{1.0, 1.0, 0.0}));
    EXPECT_NEAR(r.raw_distances[0], std::sqrt(2.0 - 4.0 / std::sqrt(5.0)), 1e-15);
    EXPECT_NEAR(r.raw_distances[2], std::sqrt(2.0 - 2.0 / std::sqrt(5.0)), 1e-15);
}

TEST(MeanPool, IdenticalVectorsAreDegenerate) {
    const LatentVector v({1.0, 2.0});
    const auto r = lgrpo::mean_pool_rewards(TrajectoryGroup({v, v, v}));
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.rewards, (std::vector<double>{0.5, 0.5, 0.5}));
}

TEST(KMeans, SeparatedClustersMatchExhaustiveSearch) {
    lgrpo::SyntheticSpec spec;
    spec.dimension = 16;
    spec.correct_spread = 0.02;
    for (std::uint64_t s = 0; s < 30; ++s) {
        // Two tight clusters: six around mu*, two around a second direction.
        spec.rng_seed = s;
        auto core = lgrpo::generate_group(spec);
        lgrpo::SyntheticSpec other = spec;
        other.n_correct = 2;
        other.n_incorrect = 0;
        other.rng_seed = s + 1000;
        const auto far = lgrpo::generate_group(other);
        oracle::Matrix m;
        std::vector<bool> big;
        for (std::size_t i = 0; i < core.group.size(); ++i) {
            if ((*core.group.labels())[i] == 1.0) {
                m.emplace_back(core.group[i].values().begin(), core.group[i].values().end());
                big.push_back(true);
            }
        }
        for (const auto& v : far.group.vectors()) {
            m.emplace_back(v.values().begin(), v.values().end());
            big.push_back(false);
        }
        ASSERT_EQ(m.size(), 8u);

        std::vector<int> split;
        const double best = exhaustive_wcss(m, &split);
        BaselineConfig c;
        c.rng_seed = s;
        const auto k = lgrpo::kmeans_cluster(testdata::to_group(m), c);
        EXPECT_NEAR(k.wcss, best, 1e-12);
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                EXPECT_EQ(k.assignment[i] == k.assignment[j], split[i] == split[j]);
                if (big[i] && !big[j]) {
                    EXPECT_GT(k.rewards.rewards[i], k.rewards.rewards[j]);
                }
            }
        }
        EXPECT_EQ(k.cluster_sizes[static_cast<std::size_t>(k.quality_cluster)], 6u);
    }
}

TEST(KMeans, WcssNeverBeatsExhaustiveMinimum) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 40; ++t) {
        const auto m = testdata::gaussian_group(rng, 8, 5);
        const double best = exhaustive_wcss(m, nullptr);
        const auto k = lgrpo::kmeans_cluster(testdata::to_group(m), {});
        EXPECT_GE(k.wcss, best - 1e-12);
        EXPECT_NEAR(k.cluster_wcss[0] + k.cluster_wcss[1], k.wcss, 1e-12);
        EXPECT_EQ(k.cluster_sizes[0] + k.cluster_sizes[1], 8u);
    }
}

TEST(KMeans, TwoPointsEachFormACluster) {
    // Size and spread tie; the canonically first member ([0, 1] sorts before
    // [1, 0]) holds the quality cluster.
    const TrajectoryGroup g({LatentVector({0.0, 1.0}), LatentVector({1.0, 0.0})});
    for (std::uint64_t seed : {0u, 1u, 7u}) {
        BaselineConfig c;
        c.rng_seed = seed;
        const auto k = lgrpo::kmeans_cluster(g, c);
        EXPECT_NE(k.assignment[0], k.assignment[1]);
        EXPECT_EQ(k.rewards.rewards, (std::vector<double>{1.0, 0.0}));
    }
    const TrajectoryGroup swapped({LatentVector({1.0, 0.0}), LatentVector({0.0, 1.0})});
    EXPECT_EQ(lgrpo::kmeans_rewards(swapped, {}).rewards, (std::vector<double>{0.0, 1.0}));
}

TEST(KMeans, DeterministicAndPermutationEquivariant) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 50; ++t) {
        const std::size_t g = 2 + t % 14;
        const auto m = testdata::gaussian_group(rng, g, 6);
        BaselineConfig c;
        c.rng_seed = 1234 + t;
        const auto a = lgrpo::kmeans_cluster(testdata::to_group(m), c);
        const auto b = lgrpo::kmeans_cluster(testdata::to_group(m), c);
        EXPECT_EQ(a.rewards.rewards, b.rewards.rewards);
        EXPECT_EQ(a.assignment, b.assignment);

        std::vector<std::size_t> perm(g);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        oracle::Matrix p;
        for (std::size_t i : perm) {
            p.push_back(m[i]);
        }
        const auto r = lgrpo::kmeans_rewards(testdata::to_group(p), c);
        for (std::size_t i = 0; i < g; ++i) {
            EXPECT_EQ(r.rewards[i], a.rewards.rewards[perm[i]]);
        }
    }
}

TEST(KMeans, EdgeCases) {
    const LatentVector v({1.0, 1.0});
    const auto r = lgrpo::kmeans_rewards(TrajectoryGroup({v, v, v, v}), {});
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.rewards, (std::vector<double>(4, 0.5)));
    EXPECT_EQ(error_of([&] { lgrpo::kmeans_rewards(TrajectoryGroup({v}), {}); }), ErrorCode::GroupTooSmall);
    BaselineConfig three;
    three.kmeans_k = 3;
    EXPECT_EQ(error_of([&] { lgrpo::kmeans_rewards(TrajectoryGroup({v, v}), three); }),
              ErrorCode::InvalidArgument);
}

TEST(Eigen, TwoVersusOneClosedForm) {
    // A = [[1, 1, .5], [1, 1, .5], [.5, .5, 1]]; eigenvector (a, a, b) with
    // lambda^2 - 3 lambda + 1.5 = 0 and a = (lambda - 1) b.
    const auto e = lgrpo::eigen_centrality(two_versus_one_group(), {});
    const double lambda = (3.0 + std::sqrt(3.0)) / 2.0;
    EXPECT_NEAR(e.eigenvalue, lambda, 1e-9);
    const double b = 1.0 / std::sqrt(2.0 * (lambda - 1.0) * (lambda - 1.0) + 1.0);
    EXPECT_NEAR(e.eigenvector[0], (lambda - 1.0) * b, 1e-9);
    EXPECT_NEAR(e.eigenvector[1], (lambda - 1.0) * b, 1e-9);
    EXPECT_NEAR(e.eigenvector[2], b, 1e-9);
    EXPECT_GT(e.eigenvector[0], e.eigenvector[2]);
    EXPECT_EQ(e.rewards.rewards, (std::vector<double>{1.0, 1.0, 0.0}));
    EXPECT_LE(e.residual, 1e-8);
}

TEST(Eigen, MatchesJacobiOracle) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const auto m = testdata::gaussian_group(rng, 2 + t % 10, 3 + t % 30);
        const auto e = lgrpo::eigen_centrality(testdata::to_group(m), {});
        const auto [lambda, vec] = jacobi_principal(similarity(m));
        EXPECT_NEAR(e.eigenvalue, lambda, 1e-9);
        EXPECT_LE(max_abs_diff(e.eigenvector, vec), 1e-8);
        EXPECT_LE(e.residual, 1e-8);
        EXPECT_NEAR(lgrpo::vec::norm(e.eigenvector), 1.0, 1e-12);
    }
}

TEST(Eigen, SymmetricGroupsAreDegenerate) {
    const LatentVector v({0.5, -1.0, 2.0});
    EXPECT_TRUE(lgrpo::eigen_centrality_rewards(TrajectoryGroup({v, v, v}), {}).degenerate);
    const TrajectoryGroup basis({LatentVector({1, 0, 0, 0}), LatentVector({0, 1, 0, 0}), LatentVector({0, 0, 1, 0}),
                                 LatentVector({0, 0, 0, 1})});
    const auto r = lgrpo::eigen_centrality_rewards(basis, {});
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.rewards, (std::vector<double>(4, 0.5)));
}

TEST(Eigen, Errors) {
    std::mt19937_64 rng(24);
    const auto g = testdata::to_group(testdata::gaussian_group(rng, 8, 8));
    BaselineConfig once;
    once.power_iters = 1;
    EXPECT_EQ(error_of([&] { lgrpo::eigen_centrality(g, once); }), ErrorCode::NoConvergence);
    EXPECT_EQ(error_of([] { lgrpo::eigen_centrality(TrajectoryGroup({LatentVector({1.0})}), {}); }),
              ErrorCode::GroupTooSmall);
    EXPECT_EQ(error_of([] {
                  lgrpo::eigen_centrality(TrajectoryGroup({LatentVector({1.0, 0.0}), LatentVector({0.0, 0.0})}), {});
              }),
              ErrorCode::ZeroNormVector);
}

TEST(Scoring, EveryMethodHonoursTheRewardContract) {
    std::mt19937_64 rng(25);
    lgrpo::ScoringConfig c;
    for (int t = 0; t < 100; ++t) {
        const auto g = testdata::to_group(testdata::gaussian_group(rng, 3 + t % 10, 4 + t % 20));
        for (auto m : lgrpo::kAllMethods) {
            const auto s = lgrpo::score_group(g, m, c);
            ASSERT_FALSE(s.rewards.degenerate);
            EXPECT_EQ(*std::min_element(s.rewards.rewards.begin(), s.rewards.rewards.end()), 0.0);
            EXPECT_EQ(*std::max_element(s.rewards.rewards.begin(), s.rewards.rewards.end()), 1.0);
            if (m != lgrpo::Method::kmeans) { // the quality center is a plain mean
                EXPECT_NEAR(lgrpo::vec::norm(s.consensus), 1.0, 1e-9) << lgrpo::method_name(m);
            }
            EXPECT_FALSE(s.note.empty());
        }
    }
}

TEST(Scoring, MethodNames) {
    for (auto m : lgrpo::kAllMethods) {
        EXPECT_EQ(lgrpo::parse_method(lgrpo::method_name(m)), m);
    }
    EXPECT_EQ(lgrpo::parse_method("mean_pool"), lgrpo::Method::mean_pool);
    EXPECT_EQ(error_of([] { lgrpo::parse_method("median"); }), ErrorCode::ConfigError);
}
