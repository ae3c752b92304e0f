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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.h"
#include "proctensor/catalog.h"
#include "proctensor/error.h"
#include "proctensor/instruments.h"
#include "proctensor/linalg.h"

namespace pt = proctensor;
using pt::Matrix;
using pt::linalg::kron;

namespace {

Matrix pauli_z() {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return x;
}

Matrix lambda2() {
    Matrix m(2, 2);
    m << 0.5, 0.1976, 0.1976, 0.5;
    return m;
}

pt::LegLayout three_legs(int a, int b, int c) {
    return pt::LegLayout({{"A", a}, {"B", b}, {"C", c}});
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_TRUE(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)).isApprox(Matrix::Identity(4, 4)));
}

TEST(Kron, PauliZ) {
    const Matrix zz = kron(pauli_z(), pauli_z());
    Eigen::VectorXcd d(4);
    d << 1.0, -1.0, -1.0, 1.0;
    EXPECT_TRUE(zz.isApprox(Matrix(d.asDiagonal())));
}

TEST(Kron, MarginalProductCorner) {
    const Matrix m = kron(lambda2(), lambda2());
    EXPECT_NEAR(m(0, 3).real(), 0.1976 * 0.1976, 1e-15);
    EXPECT_NEAR(m(0, 3).real(), 0.03904, 1e-5);
}

TEST(Kron, MatchesLoopOracle) {
    const Matrix a = oracle::random_hermitian(3, 1);
    const Matrix b = oracle::random_hermitian(2, 2);
    EXPECT_LT((kron(a, b) - oracle::kron(a, b)).norm(), 1e-14);
}

TEST(PartialTrace, ProductStateFactorizes) {
    const Matrix rho = oracle::random_state(2, 3);
    const Matrix sigma = 2.5 * oracle::random_state(3, 4);
    const std::vector<int> dims{2, 3};
    const std::vector<std::size_t> keep{0};
    EXPECT_LT((pt::linalg::partial_trace(kron(rho, sigma), dims, keep) - 2.5 * rho).norm(), 1e-13);
}

TEST(PartialTrace, LambdaMarginalMatchesOracle) {
    const Matrix lam = pt::catalog::lambda_state();
    const auto r = pt::linalg::partial_trace(lam, three_legs(2, 2, 2), {"A"});
    EXPECT_LT((r.matrix - oracle::partial_trace(lam, {2, 2, 2}, {0})).norm(), 1e-15);
    EXPECT_NEAR(r.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_EQ(r.layout.labels(), std::vector<std::string>{"A"});
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const Matrix bell = pt::linalg::projector(pt::catalog::bell(0));
    for (std::size_t k : {0u, 1u}) {
        const std::vector<int> dims{2, 2};
        const std::vector<std::size_t> keep{k};
        EXPECT_LT((pt::linalg::partial_trace(bell, dims, keep) - Matrix::Identity(2, 2) / 2.0).norm(), 1e-15);
    }
}

TEST(PartialTrace, RandomMatchesOracleAndPreservesTrace) {
    const std::vector<int> dims{2, 3, 2};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix m = oracle::random_hermitian(12, seed);
        for (const std::vector<int>& keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}}) {
            const std::vector<std::size_t> k(keep.begin(), keep.end());
            const Matrix got = pt::linalg::partial_trace(m, dims, k);
            EXPECT_LT((got - oracle::partial_trace(m, dims, keep)).norm(), 1e-12);
            EXPECT_NEAR(got.trace().real(), m.trace().real(), 1e-12);
        }
    }
}

TEST(PartialTrace, Composes) {
    const Matrix m = oracle::random_state(12, 9);
    const pt::LegLayout layout = three_legs(2, 3, 2);
    const auto once = pt::linalg::partial_trace(m, layout, {"A"});
    const auto step = pt::linalg::partial_trace(m, layout, {"A", "B"});
    const auto twice = pt::linalg::partial_trace(step.matrix, step.layout, {"A"});
    EXPECT_LT((once.matrix - twice.matrix).norm(), 1e-12);
}

TEST(PartialTrace, KeptLegsStayInLayoutOrder) {
    const Matrix a = oracle::random_state(2, 1), c = oracle::random_state(3, 2);
    const Matrix m = kron(kron(a, oracle::random_state(2, 3)), c);
    const auto r = pt::linalg::partial_trace(m, three_legs(2, 2, 3), {"C", "A"});
    EXPECT_EQ(r.layout.labels(), (std::vector<std::string>{"A", "C"}));
    EXPECT_LT((r.matrix - kron(a, c)).norm(), 1e-13);
}

TEST(PartialTrace, Errors) {
    const Matrix m = Matrix::Identity(8, 8);
    EXPECT_THROW(pt::linalg::partial_trace(m, three_legs(2, 2, 2), {"D"}), pt::DimensionError);
    EXPECT_THROW(pt::linalg::partial_trace(m, three_legs(2, 3, 2), {"A"}), pt::DimensionError);
}

TEST(LegLayout, RejectsDuplicatesAndBadDims) {
    EXPECT_THROW(pt::LegLayout({{"A", 2}, {"A", 2}}), pt::DimensionError);
    EXPECT_THROW(pt::LegLayout({{"A", 0}}), pt::DimensionError);
    const pt::LegLayout l = three_legs(2, 3, 4);
    EXPECT_EQ(l.total_dim(), 24);
    EXPECT_EQ(l.index_of("C"), 2u);
    EXPECT_THROW(l.index_of("Z"), pt::DimensionError);
}

TEST(PermuteLegs, SwapsKroneckerFactors) {
    const Matrix a = oracle::random_state(2, 5), b = oracle::random_state(3, 6);
    const std::vector<int> dims{2, 3};
    const std::vector<std::size_t> order{1, 0};
    EXPECT_LT((pt::linalg::permute_legs(kron(a, b), dims, order) - kron(b, a)).norm(), 1e-14);
}

TEST(HermitianEig, PauliX) {
    const auto es = pt::linalg::hermitian_eig(pauli_x());
    EXPECT_NEAR(es.values[0], 1.0, 1e-14);
    EXPECT_NEAR(es.values[1], -1.0, 1e-14);
}

TEST(HermitianEig, MarginalSpectrum) {
    const auto es = pt::linalg::hermitian_eig(lambda2());
    EXPECT_NEAR(es.values[0], 0.6976, 1e-14);
    EXPECT_NEAR(es.values[1], 0.3024, 1e-14);
}

TEST(HermitianEig, DegenerateSpectrum) {
    const auto es = pt::linalg::hermitian_eig(Matrix::Identity(3, 3) / 3.0);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(es.values[k], 1.0 / 3.0, 1e-15);
}

TEST(HermitianEig, RejectsNonHermitian) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(pt::linalg::hermitian_eig(m), pt::ValidationError);
}

TEST(HermitianEig, RandomReconstructionAgainstJacobi) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int d = 2 + static_cast<int>(seed % 11);
        const Matrix h = oracle::random_hermitian(d, seed);
        const auto es = pt::linalg::hermitian_eig(h);
        const Matrix back = es.vectors * es.values.cast<pt::Complex>().asDiagonal() * es.vectors.adjoint();
        EXPECT_LT((back - h).norm(), 1e-10);
        EXPECT_LT((es.vectors.adjoint() * es.vectors - Matrix::Identity(d, d)).norm(), 1e-10);
        const auto ref = oracle::eigenvalues(h);
        for (int k = 0; k < d; ++k) EXPECT_NEAR(es.values[k], ref[d - 1 - k], 1e-9);
        for (int k = 1; k < d; ++k) EXPECT_GE(es.values[k - 1], es.values[k]);
    }
}

TEST(HermitianEig, PhaseFixIsDeterministic) {
    const Matrix h = oracle::random_hermitian(6, 77);
    const auto a = pt::linalg::hermitian_eig(h);
    const auto b = pt::linalg::hermitian_eig(h);
    EXPECT_EQ((a.vectors - b.vectors).norm(), 0.0);
    for (int k = 0; k < 6; ++k) {
        for (int i = 0; i < 6; ++i) {
            if (std::abs(a.vectors(i, k)) > 1e-8) {
                EXPECT_NEAR(a.vectors(i, k).imag(), 0.0, 1e-12);
                EXPECT_GT(a.vectors(i, k).real(), 0.0);
                break;
            }
        }
    }
}

TEST(Entropy, Examples) {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    EXPECT_NEAR(pt::linalg::von_neumann_entropy(zero), 0.0, 1e-14);
    EXPECT_NEAR(pt::linalg::von_neumann_entropy(Matrix::Identity(2, 2) / 2.0), 1.0, 1e-14);
    const double w = -0.5 * std::log2(0.5) - 0.5 * std::log2(1.0 / 6.0);
    EXPECT_NEAR(pt::linalg::von_neumann_entropy(pt::catalog::werner(0, 1.0 / 3.0)), w, 1e-12);
    EXPECT_NEAR(pt::linalg::von_neumann_entropy(pt::catalog::werner(0, 1.0 / 3.0)), 1.7925, 1e-4);
}

TEST(Entropy, RejectsNonStates) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(pt::linalg::von_neumann_entropy(m), pt::ValidationError);
    m(1, 1) = -0.1;
    m(0, 0) = 1.1;
    EXPECT_THROW(pt::linalg::von_neumann_entropy(m), pt::ValidationError);
}

TEST(Entropy, UnitarilyInvariantAndMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Matrix rho = oracle::random_state(4, seed);
        const Matrix u = pt::instruments::haar_unitary(4, seed + 1000);
        const double s = pt::linalg::von_neumann_entropy(rho);
        EXPECT_NEAR(pt::linalg::von_neumann_entropy(u * rho * u.adjoint()), s, 1e-10);
        EXPECT_NEAR(s, oracle::entropy_bits(rho), 1e-10);
    }
}

TEST(RelativeEntropy, Examples) {
    const Matrix rho = oracle::random_state(3, 4);
    EXPECT_NEAR(pt::linalg::relative_entropy(rho, rho), 0.0, 1e-12);
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    EXPECT_NEAR(pt::linalg::relative_entropy(zero, Matrix::Identity(2, 2) / 2.0), 1.0, 1e-12);
}

TEST(RelativeEntropy, SupportViolation) {
    Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    one(1, 1) = 1.0;
    EXPECT_THROW(pt::linalg::relative_entropy(zero, one), pt::SupportError);
    EXPECT_THROW(pt::linalg::relative_entropy(Matrix::Identity(2, 2) / 2.0, zero), pt::SupportError);
}

TEST(RelativeEntropy, KleinInequalityOnRandomPairs) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int d = 2 + static_cast<int>(seed % 5);
        const Matrix x = oracle::random_state(d, 2 * seed), y = oracle::random_state(d, 2 * seed + 1);
        const double s = pt::linalg::relative_entropy(x, y);
        EXPECT_GT(s, 0.0);
        EXPECT_NEAR(s, oracle::relative_entropy_bits(x, y), 1e-9);
    }
}

TEST(Fidelity, Examples) {
    const Matrix rho = oracle::random_state(3, 8);
    EXPECT_NEAR(pt::linalg::fidelity(rho, rho), 1.0, 1e-10);
    Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    one(1, 1) = 1.0;
    EXPECT_NEAR(pt::linalg::fidelity(zero, one), 0.0, 1e-12);
    EXPECT_NEAR(pt::linalg::fidelity(Matrix::Identity(2, 2) / 2.0, zero), 0.5, 1e-12);
}

TEST(Fidelity, SymmetricAndPureOverlap) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Matrix a = oracle::random_state(4, seed), b = oracle::random_state(4, seed + 500);
        EXPECT_NEAR(pt::linalg::fidelity(a, b), pt::linalg::fidelity(b, a), 1e-10);
        const auto u = oracle::random_unit_vector(3, seed), v = oracle::random_unit_vector(3, seed + 900);
        const double overlap = std::norm(u.dot(v));
        EXPECT_NEAR(pt::linalg::fidelity(pt::linalg::projector(u), pt::linalg::projector(v)), overlap, 1e-8);
    }
}

TEST(Fidelity, RejectsNonPositive) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(pt::linalg::fidelity(m, Matrix::Identity(2, 2) / 2.0), pt::ValidationError);
}

TEST(TraceNorm, SumOfAbsoluteEigenvalues) {
    EXPECT_NEAR(pt::linalg::trace_norm(pauli_z()), 2.0, 1e-14);
    EXPECT_NEAR(pt::linalg::trace_norm(oracle::random_state(5, 1)), 1.0, 1e-12);
}
