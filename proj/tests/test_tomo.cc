// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.h"
#include "proctensor/catalog.h"
#include "proctensor/error.h"
#include "proctensor/linalg.h"
#include "proctensor/memory.h"
#include "proctensor/tomo.h"

namespace pt = proctensor;
namespace tg = proctensor::tomo;
using pt::Matrix;

TEST(Bases, OrthonormalAndMutuallyUnbiased) {
    for (int d : {2, 3}) {
        const auto labels = tg::basis_labels(d);
        EXPECT_EQ(labels.size(), d == 2 ? 3u : 4u);
        for (const auto& a : labels) {
            const Matrix u = tg::basis_vectors(d, a);
            EXPECT_LT((u.adjoint() * u - Matrix::Identity(d, d)).norm(), 1e-12);
            for (const auto& b : labels) {
                if (a == b) continue;
                const Matrix overlap = u.adjoint() * tg::basis_vectors(d, b);
                EXPECT_LT((overlap.cwiseAbs2().array() - 1.0 / d).abs().maxCoeff(), 1e-12) << a << b;
            }
        }
    }
    EXPECT_THROW(tg::basis_vectors(2, "W"), pt::ValidationError);
    EXPECT_THROW(tg::basis_labels(4), pt::DimensionError);
}

TEST(Settings, CountAndOrder) {
    const auto s = tg::all_settings({2, 3, 2});
    EXPECT_EQ(s.size(), 3u * 4u * 3u);
    EXPECT_EQ(s[0][2], tg::basis_labels(2)[0]);
    EXPECT_EQ(s[1][2], tg::basis_labels(2)[1]);
}

TEST(Simulate, PureZeroInZ) {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    const auto c = tg::simulate_counts(zero, {2}, 3000, 4);
    for (std::size_t s = 0; s < c.settings.size(); ++s) {
        if (c.settings[s][0] != "Z") continue;
        EXPECT_EQ(c.counts[s][0], c.shots[s]);
        EXPECT_EQ(c.counts[s][1], 0u);
    }
    EXPECT_EQ(c.total_shots(), 3000u);
}

TEST(Simulate, MaximallyMixedBinomial) {
    const auto c = tg::simulate_counts(Matrix::Identity(2, 2) / 2.0, {2}, 30000, 8);
    for (std::size_t s = 0; s < c.settings.size(); ++s) {
        EXPECT_EQ(c.shots[s], 10000u);
        EXPECT_LT(std::abs(static_cast<double>(c.counts[s][0]) - 5000.0), 3.0 * std::sqrt(2500.0));
    }
}

TEST(Simulate, LawOfLargeNumbers) {
    const Matrix g = pt::catalog::lambda_state();
    const auto c = tg::simulate_counts(g, {2, 2, 2}, 1000000, 21);
    const auto born = tg::born_probabilities(g, {2, 2, 2});
    // Born oracle: direct overlaps of product basis vectors. The 3 sigma band
    // covers 99.73% of cells, so a handful of the 216 may sit outside it.
    int outside = 0, cells = 0;
    for (std::size_t s = 0; s < c.settings.size(); ++s) {
        Matrix b = Matrix::Identity(1, 1);
        for (const auto& label : c.settings[s]) b = oracle::kron(b, tg::basis_vectors(2, label));
        const double n = static_cast<double>(c.shots[s]);
        for (int o = 0; o < 8; ++o) {
            const double p = (b.col(o).adjoint() * g * b.col(o))(0, 0).real();
            EXPECT_NEAR(born[s][o], p, 1e-12);
            const double sigma = std::sqrt(p * (1 - p) / n);
            const double dev = std::abs(static_cast<double>(c.counts[s][o]) / n - p);
            outside += dev > 3.0 * sigma + 1e-12;
            ++cells;
            EXPECT_LT(dev, 5.0 * sigma + 1e-12);
        }
    }
    EXPECT_LE(outside, cells / 100);
}

TEST(Simulate, Deterministic) {
    const Matrix g = pt::catalog::omega_state();
    const auto a = tg::simulate_counts(g, {2, 3, 2}, 5000, 3), b = tg::simulate_counts(g, {2, 3, 2}, 5000, 3);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.total_shots(), 5000u);
}

TEST(Reconstruct, ExactFrequenciesInvert) {
    for (const auto& [g, dims] : {std::pair{pt::catalog::lambda_state(), std::vector<int>{2, 2, 2}},
                                  std::pair{pt::catalog::omega_state(), std::vector<int>{2, 3, 2}},
                                  std::pair{Matrix(oracle::random_state(6, 2)), std::vector<int>{2, 3}}}) {
        const tg::Reconstructor rec(dims);
        const auto born = tg::born_probabilities(g, dims);
        EXPECT_LT((rec.from_frequencies(born) - g).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((rec.linear_inversion(born) - g).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Reconstruct, OutputIsState) {
    const Matrix g = pt::catalog::omega_state();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix r = tg::reconstruct(tg::simulate_counts(g, {2, 3, 2}, 2000, seed));
        EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
        EXPECT_GE(oracle::eigenvalues(r).front(), -1e-12);
        EXPECT_LT((r - r.adjoint()).norm(), 1e-14);
    }
}

TEST(Reconstruct, FidelityAtMillionShots) {
    for (const auto& [g, dims] : {std::pair{pt::catalog::lambda_state(), std::vector<int>{2, 2, 2}},
                                  std::pair{pt::catalog::omega_state(), std::vector<int>{2, 3, 2}}}) {
        const Matrix r = tg::reconstruct(tg::simulate_counts(g, dims, 1000000, 1234));
        EXPECT_GT(pt::linalg::fidelity(g, r), 0.99);
    }
}

TEST(Reconstruct, FidelityGrowsWithShots) {
    const Matrix g = pt::catalog::lambda_state();
    double previous = 0.0;
    for (std::uint64_t shots : {1000u, 10000u, 100000u, 1000000u}) {
        double mean = 0.0;
        for (std::uint64_t seed = 0; seed < 8; ++seed)
            mean += pt::linalg::fidelity(g, tg::reconstruct(tg::simulate_counts(g, {2, 2, 2}, shots, 100 + seed))) / 8.0;
        EXPECT_GE(mean, previous) << shots;
        previous = mean;
    }
}

TEST(Reconstruct, IncompleteSettingsRejected) {
    auto c = tg::simulate_counts(pt::catalog::lambda_state(), {2, 2, 2}, 2700, 1);
    c.settings.pop_back();
    c.counts.pop_back();
    c.shots.pop_back();
    EXPECT_THROW(tg::reconstruct(c), pt::DimensionError);
    EXPECT_THROW(tg::Reconstructor({4}), pt::DimensionError);
}

TEST(Counts, CsvRoundTrip) {
    const auto c = tg::simulate_counts(pt::catalog::omega_state(), {2, 3, 2}, 4800, 6);
    std::stringstream ss;
    c.write_csv(ss);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "setting,outcome,count");
    const auto back = tg::CountsTable::read_csv(ss, {2, 3, 2});
    EXPECT_EQ(back.counts, c.counts);
    EXPECT_EQ(back.settings, c.settings);
    EXPECT_EQ(back.shots, c.shots);
    std::stringstream bad("setting,outcome,count\nX.M0.X,090,4\n");
    EXPECT_THROW(tg::CountsTable::read_csv(bad, {2, 3, 2}), pt::ValidationError);
    std::stringstream noheader("X.M0.X,000,4\n");
    EXPECT_THROW(tg::CountsTable::read_csv(noheader, {2, 3, 2}), pt::ValidationError);
}

TEST(Simplex, Projection) {
    pt::RealVector v(4);
    v << 0.5, 0.6, -0.2, 0.1;
    const auto p = tg::project_to_simplex(v);
    EXPECT_NEAR(p.sum(), 1.0, 1e-15);
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_NEAR(p(0), 0.5 - 1.0 / 15.0, 1e-15);
    EXPECT_NEAR(p(1), 0.6 - 1.0 / 15.0, 1e-15);
    EXPECT_EQ(p(2), 0.0);
    pt::RealVector q(3);
    q << 0.2, 0.3, 0.5;
    EXPECT_LT((tg::project_to_simplex(q) - q).norm(), 1e-15);
}

TEST(Bootstrap, TraceHasZeroSpread) {
    const auto c = tg::simulate_counts(pt::catalog::lambda_state(), {2, 2, 2}, 5400, 2);
    const auto r = tg::bootstrap(c, 20, tg::statistic_by_name("trace", {2, 2, 2}), 9);
    EXPECT_NEAR(r.mean, 1.0, 1e-12);
    EXPECT_NEAR(r.standard_error, 0.0, 1e-12);
    EXPECT_EQ(r.values.size(), 20u);
    EXPECT_THROW(tg::bootstrap(c, 1, tg::statistic_by_name("trace", {2, 2, 2}), 9), pt::ValidationError);
}

TEST(Bootstrap, TotalCorrelationStatisticAndThreads) {
    const auto c = tg::simulate_counts(pt::catalog::lambda_state(), {2, 2, 2}, 27000, 5);
    const auto stat = tg::statistic_by_name("total_correlation", {2, 2, 2});
    const Matrix r = tg::reconstruct(c);
    EXPECT_NEAR(stat(r), pt::memory::total_correlation(r, {2, 2, 2}), 1e-14);
    const auto a = tg::bootstrap(c, 16, stat, 3, 1), b = tg::bootstrap(c, 16, stat, 3, 4);
    EXPECT_EQ(a.values, b.values);
    EXPECT_GT(a.standard_error, 0.0);
}
