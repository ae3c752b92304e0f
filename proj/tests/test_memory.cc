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
#include <vector>

#include <gtest/gtest.h>

#include "oracle.h"
#include "proctensor/catalog.h"
#include "proctensor/error.h"
#include "proctensor/instruments.h"
#include "proctensor/linalg.h"
#include "proctensor/memory.h"
#include "proctensor/process.h"

namespace pt = proctensor;
namespace mem = proctensor::memory;
using pt::Matrix;

namespace {

pt::ProcessTensor random_product_process(std::uint64_t seed) {
    const Matrix g = oracle::kron(oracle::kron(oracle::random_state(2, seed), oracle::random_state(2, seed + 1)),
                                  oracle::random_state(2, seed + 2));
    return pt::build_common_cause(g, {2, 2, 2}, {2, 2});
}

}  // namespace

TEST(NonMarkovianity, FrozenFromOracle) {
    EXPECT_NEAR(mem::non_markovianity(pt::catalog::lambda_process()), 2.836518149970e-01, 1e-9);
    EXPECT_NEAR(mem::non_markovianity(pt::catalog::omega_process()), 1.122556248918e+00, 1e-9);
}

TEST(NonMarkovianity, LambdaMatchesTheory) {
    EXPECT_NEAR(mem::non_markovianity(pt::catalog::lambda_process()), 0.329, 1e-3);
}

TEST(NonMarkovianity, OmegaMatchesTheory) {
    EXPECT_NEAR(mem::non_markovianity(pt::catalog::omega_process()), 0.5, 1e-3);
}

TEST(NonMarkovianity, ProductIsZero) {
    for (std::uint64_t s = 1; s < 6; ++s) EXPECT_NEAR(mem::non_markovianity(random_product_process(10 * s)), 0.0, 1e-10);
}

TEST(NonMarkovianity, MarkovProductIsZero) {
    for (const auto& p : {pt::catalog::lambda_process(), pt::catalog::omega_process()})
        EXPECT_NEAR(mem::non_markovianity(pt::markov_product(p)), 0.0, 1e-10);
}

TEST(NonMarkovianity, EqualsStateTotalCorrelation) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Matrix g = oracle::random_state(8, 500 + s);
        const auto p = pt::build_common_cause(g, {2, 2, 2}, {2, 2});
        const auto a = oracle::partial_trace(g, {2, 2, 2}, {0});
        const auto b = oracle::partial_trace(g, {2, 2, 2}, {1});
        const auto c = oracle::partial_trace(g, {2, 2, 2}, {2});
        const double want = oracle::relative_entropy_bits(g, oracle::kron(oracle::kron(a, b), c));
        EXPECT_NEAR(mem::non_markovianity(p), want, 1e-9);
        EXPECT_NEAR(mem::total_correlation(g, {2, 2, 2}), want, 1e-9);
    }
}

TEST(MutualInformation, Examples) {
    const Matrix bell = pt::linalg::projector(pt::catalog::bell(0));
    EXPECT_NEAR(mem::mutual_information(bell, 2, 2), 2.0, 1e-10);
    EXPECT_NEAR(mem::mutual_information(Matrix::Identity(4, 4) / 4.0, 2, 2), 0.0, 1e-12);
    EXPECT_NEAR(mem::mutual_information(pt::catalog::werner(0, 1.0 / 3.0), 2, 2), 0.2075, 1e-4);
}

TEST(MutualInformation, MatchesOracleAndCapacity) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Matrix r = oracle::random_state(6, 900 + s);
        const double mi = mem::mutual_information(r, 2, 3);
        EXPECT_NEAR(mi, oracle::mutual_information_bits(r, 2, 3), 1e-9);
        EXPECT_GE(mi, -1e-10);
        EXPECT_LE(mi, 2.0 * std::log2(2.0) + 1e-10);
    }
}

TEST(MemoryStrength, LambdaThetaFrozen) {
    const auto rep = mem::memory_strength(pt::catalog::lambda_process(), pt::instruments::theta_povm());
    const double mi[] = {1.144835160050e-05, 4.543204657526e-05, 7.593255286494e-03};
    ASSERT_EQ(rep.events.size(), 3u);
    for (int x = 0; x < 3; ++x) {
        EXPECT_NEAR(rep.events[x].mutual_information, mi[x], 1e-10) << x;
        EXPECT_LT(rep.events[x].mutual_information, 0.02);
    }
    EXPECT_NEAR(rep.aggregate_uniform, 2.550045228223e-03, 1e-10);
    EXPECT_NEAR(rep.aggregate_weighted, 2.654932962554e-03, 1e-10);
    EXPECT_NEAR(rep.max_event, mi[2], 1e-10);
}

TEST(MemoryStrength, LambdaZEventZero) {
    const auto rep = mem::memory_strength(pt::catalog::lambda_process(), pt::instruments::computational_basis(2));
    EXPECT_NEAR(rep.events[0].mutual_information, 0.0514, 1e-3);
    EXPECT_NEAR(rep.events[0].mutual_information, 5.143487434841e-02, 1e-10);
    EXPECT_NEAR(rep.events[0].probability, 0.4424, 1e-12);
}

TEST(MemoryStrength, OmegaSharpWerner) {
    const auto rep = mem::memory_strength(pt::catalog::omega_process(), pt::instruments::qutrit_sharp());
    ASSERT_EQ(rep.events.size(), 5u);
    for (int x = 0; x < 4; ++x) {
        EXPECT_NEAR(rep.events[x].mutual_information, 0.2075, 1e-3);
        EXPECT_NEAR(rep.events[x].mutual_information, 2.075187496394e-01, 1e-10);
        EXPECT_GT(rep.events[x].mutual_information, 0.16);
    }
    EXPECT_NEAR(rep.events[4].mutual_information, 0.0, 1e-10);
}

TEST(MemoryStrength, OmegaXiBlocks) {
    const auto rep = mem::memory_strength(pt::catalog::omega_process(), pt::instruments::xi_noisy());
    for (const auto& e : rep.events) EXPECT_NEAR(e.mutual_information, 0.0, 1e-10);
}

TEST(MemoryStrength, AggregatesAreConsistent) {
    const auto rep = mem::memory_strength(pt::catalog::omega_process(), pt::instruments::qutrit_sharp());
    double u = 0.0, w = 0.0, m = 0.0;
    for (const auto& e : rep.events) {
        EXPECT_GE(e.mutual_information, -1e-10);
        u += e.mutual_information / rep.events.size();
        w += e.probability * e.mutual_information;
        m = std::max(m, e.mutual_information);
    }
    EXPECT_NEAR(rep.aggregate_uniform, u, 1e-14);
    EXPECT_NEAR(rep.aggregate_weighted, w, 1e-14);
    EXPECT_NEAR(rep.max_event, m, 1e-14);
}

TEST(MemoryStrength, ZeroProbabilityFlagged) {
    // |1><1| at B never fires on a process whose B input is |0><0|.
    const Matrix g = oracle::kron(oracle::kron(oracle::random_state(2, 3), pt::linalg::projector(pt::Vector::Unit(2, 0))),
                                  oracle::random_state(2, 4));
    const auto p = pt::build_common_cause(g, {2, 2, 2}, {2, 2});
    const auto rep = mem::memory_strength(p, pt::instruments::computational_basis(2));
    EXPECT_TRUE(rep.events[1].zero_probability);
    EXPECT_EQ(rep.events[1].mutual_information, 0.0);
    EXPECT_FALSE(rep.events[0].zero_probability);
}

TEST(MarkovOrder, Examples) {
    const auto om = pt::catalog::omega_process();
    EXPECT_TRUE(mem::markov_order_test(om, pt::instruments::xi_noisy(), 1e-8).blocked);
    EXPECT_FALSE(mem::markov_order_test(om, pt::instruments::qutrit_sharp(), 1e-3).blocked);
    const auto lt = mem::markov_order_test(pt::catalog::lambda_process(), pt::instruments::theta_povm(), 0.02,
                                           mem::MarkovMetric::kMutualInformation);
    EXPECT_TRUE(lt.blocked);
    EXPECT_EQ(lt.residuals.size(), 3u);
}

TEST(MarkovOrder, TraceResidualMatchesDefinition) {
    const auto p = pt::catalog::lambda_process();
    const auto inst = pt::instruments::computational_basis(2);
    const auto rep = mem::markov_order_test(p, inst, 1.0);
    for (std::size_t x = 0; x < inst.size(); ++x) {
        const Matrix s = pt::condition(p, "B", inst[x]).input_state();
        const Matrix prod = oracle::kron(oracle::partial_trace(s, {2, 2}, {0}), oracle::partial_trace(s, {2, 2}, {1}));
        double tn = 0.0;
        for (double v : oracle::eigenvalues(s - prod)) tn += std::abs(v);
        EXPECT_NEAR(rep.residuals[x], tn, 1e-10);
    }
}

TEST(Cmi, Examples) {
    EXPECT_NEAR(mem::quantum_cmi(pt::catalog::omega_state(), {2, 3, 2}), 0.5, 1e-10);
    EXPECT_NEAR(mem::quantum_cmi(pt::catalog::lambda_state(), {2, 2, 2}), 1.899866985941e-02, 1e-10);
    const Matrix prod = oracle::kron(oracle::kron(oracle::random_state(2, 1), oracle::random_state(2, 2)), oracle::random_state(2, 3));
    EXPECT_NEAR(mem::quantum_cmi(prod, {2, 2, 2}), 0.0, 1e-10);
    EXPECT_THROW(mem::quantum_cmi(prod, {2, 4}), pt::DimensionError);
}

TEST(Cmi, ProcessLevelEqualsStateLevel) {
    EXPECT_NEAR(mem::process_cmi(pt::catalog::lambda_process()), 1.899866985941e-02, 1e-9);
    EXPECT_NEAR(mem::process_cmi(pt::catalog::omega_process()), 0.5, 1e-9);
}

TEST(Cmi, StrongSubadditivity) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Matrix r = oracle::random_state(8, 20000 + s);
        EXPECT_GE(mem::quantum_cmi(r, {2, 2, 2}), -1e-10) << s;
    }
}

TEST(Confusion, Examples) {
    EXPECT_DOUBLE_EQ(mem::confusion_probability(1, 0.0), 1.0);
    EXPECT_NEAR(mem::confusion_probability(1, 0.329), std::exp(-0.329 * std::log(2.0)), 1e-15);
    EXPECT_NEAR(mem::confusion_probability(1, 0.329), 0.796, 1e-3);
    EXPECT_LT(mem::confusion_probability(10000, 0.329), 1e-300);
    EXPECT_THROW(mem::confusion_probability(0, 0.1), pt::ValidationError);
    EXPECT_THROW(mem::confusion_probability(1, -0.1), pt::ValidationError);
}

TEST(Survey, Trivial) {
    const auto lam = pt::catalog::lambda_process();
    EXPECT_DOUBLE_EQ(mem::projective_survey(lam, 1e9, 200, 5).fraction, 1.0);
    EXPECT_DOUBLE_EQ(mem::projective_survey(random_product_process(3), 1e-6, 200, 5).fraction, 1.0);
    EXPECT_THROW(mem::projective_survey(lam, 0.01, 99, 5), pt::ValidationError);
    EXPECT_THROW(mem::projective_survey(lam, 0.0, 200, 5), pt::ValidationError);
}

TEST(Survey, DeterministicAcrossThreads) {
    const auto lam = pt::catalog::lambda_process();
    const auto a = mem::projective_survey(lam, 0.0125, 2000, 77, pt::instruments::SamplingMeasure::kHaar, 1);
    const auto b = mem::projective_survey(lam, 0.0125, 2000, 77, pt::instruments::SamplingMeasure::kHaar, 4);
    EXPECT_EQ(a.below_cutoff, b.below_cutoff);
    EXPECT_EQ(a.samples, 2000u);
    EXPECT_NEAR(a.standard_error, std::sqrt(a.fraction * (1 - a.fraction) / 2000.0), 1e-12);
}
