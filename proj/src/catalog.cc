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

#include "proctensor/catalog.h"

#include <cmath>
#include <numbers>

#include "proctensor/error.h"
#include "proctensor/instruments.h"
#include "proctensor/recovery.h"

namespace proctensor::catalog {

Matrix lambda_state() {
    static constexpr int kNumerators[8][8] = {
        {1106, 25, -142, -525, 25, 294, -525, -58},   {25, 1106, -525, -142, 294, 25, -58, -525},
        {-142, -525, 1394, 25, -525, -58, 25, 6},     {-525, -142, 25, 1394, -58, -525, 6, 25},
        {25, 294, -525, -58, 1106, 25, -142, -525},   {294, 25, -58, -525, 25, 1106, -525, -142},
        {-525, -58, 25, 6, -142, -525, 1394, 25},     {-58, -525, 6, 25, -525, -142, 25, 1394},
    };
    Matrix m(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m(r, c) = kNumerators[r][c] / 10000.0;
    return m;
}

Matrix omega_state() {
    // Entry = (a + b sqrt3 + i c sqrt3) / 48, stored as (row, col, a, b, c).
    struct Entry {
        int row, col, a, b, c;
    };
    static constexpr Entry kEntries[] = {
        {0, 0, 3, 0, 0},   {0, 1, 0, 1, 0},   {0, 8, 0, 1, 0},   {0, 9, 0, 0, -1},
        {1, 0, 0, 1, 0},   {1, 1, 3, 0, 0},   {1, 8, 0, 0, 1},   {1, 9, 0, -1, 0},
        {2, 2, 3, 0, 0},   {2, 3, 0, -1, 0},  {2, 6, 0, -1, 0},  {2, 7, 0, 0, -1},
        {3, 2, 0, -1, 0},  {3, 3, 3, 0, 0},   {3, 6, 0, 0, 1},   {3, 7, 0, 1, 0},
        {4, 4, 24, 0, 0},
        {6, 2, 0, -1, 0},  {6, 3, 0, 0, -1},  {6, 6, 3, 0, 0},   {6, 7, 0, -1, 0},
        {7, 2, 0, 0, 1},   {7, 3, 0, 1, 0},   {7, 6, 0, -1, 0},  {7, 7, 3, 0, 0},
        {8, 0, 0, 1, 0},   {8, 1, 0, 0, -1},  {8, 8, 3, 0, 0},   {8, 9, 0, 1, 0},
        {9, 0, 0, 0, 1},   {9, 1, 0, -1, 0},  {9, 8, 0, 1, 0},   {9, 9, 3, 0, 0},
    };
    const double s3 = std::numbers::sqrt3;
    Matrix m = Matrix::Zero(12, 12);
    for (const auto& e : kEntries) m(e.row, e.col) = Complex(e.a + e.b * s3, e.c * s3) / 48.0;
    return m;
}

ProcessTensor lambda_process() { return build_common_cause(lambda_state(), kLambdaDims, {2, 2}); }
ProcessTensor omega_process() { return build_common_cause(omega_state(), kOmegaDims, {2, 3}); }

StateEnsemble lambda_ensemble() {
    static constexpr double kVectors[8][8] = {
        {1, 1, -1, -1, 1, 1, -1, -1},
        {1, -1, 1, -1, -1, 1, -1, 1},
        {1, -1, -1, 1, -1, 1, 1, -1},
        {1, 1, 1, 1, 1, 1, 1, 1},
        {0, 0.1, 0, -0.7, -0.1, 0, 0.7, 0},
        {0.1, 0, -0.7, 0, 0, -0.1, 0, 0.7},
        {-0.7, 0, -0.1, 0, 0, 0.7, 0, 0.1},
        {0, -0.7, 0, -0.1, 0.7, 0, 0.1, 0},
    };
    static constexpr int kWeights[8] = {27, 22, 5, 2, 14, 14, 8, 8};
    StateEnsemble e{{}, kLambdaDims};
    for (int k = 0; k < 8; ++k) {
        Vector v(8);
        for (int j = 0; j < 8; ++j) v[j] = kVectors[k][j];
        e.members.push_back({v, kWeights[k] / 100.0});
    }
    return e;
}

StateEnsemble omega_ensemble() {
    const double pi = std::numbers::pi;
    const Complex i(0.0, 1.0);
    const double s3 = std::numbers::sqrt3;
    StateEnsemble e{{}, kOmegaDims};
    Vector v = Vector::Zero(12);
    v[0] = std::polar(1.0, -2.0 * pi / 3.0);
    v[1] = std::polar(1.0, -5.0 * pi / 6.0);
    v[9] = 1.0;
    e.members.push_back({v / s3, 1.0 / 8.0});
    v.setZero();
    v[2] = std::polar(1.0, -2.0 * pi / 3.0);
    v[3] = std::polar(1.0, pi / 6.0);
    v[7] = 1.0;
    e.members.push_back({v / s3, 1.0 / 8.0});
    v.setZero();
    v[0] = 1.0;
    v[1] = i;
    v[8] = s3;
    v[9] = 1.0;
    e.members.push_back({v / std::sqrt(6.0), 1.0 / 8.0});
    v.setZero();
    v[2] = -1.0;
    v[3] = i;
    v[6] = s3;
    v[7] = -1.0;
    e.members.push_back({v / std::sqrt(6.0), 1.0 / 8.0});
    v.setZero();
    v[4] = 1.0;
    e.members.push_back({v, 4.0 / 8.0});
    return e;
}

Matrix ensemble_to_state(const StateEnsemble& e) {
    if (e.members.empty()) throw ValidationError("empty ensemble");
    const auto d = e.members.front().amplitudes.size();
    double total = 0.0;
    Matrix rho = Matrix::Zero(d, d);
    for (const auto& m : e.members) {
        if (m.amplitudes.size() != d) throw DimensionError("ensemble members differ in dimension");
        const double norm = m.amplitudes.norm();
        if (norm == 0.0) throw ValidationError("ensemble member is the zero vector");
        if (m.weight < 0.0) throw ValidationError("negative ensemble weight");
        rho += m.weight * linalg::projector(m.amplitudes / norm);
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("ensemble weights do not sum to one");
    return rho;
}

const std::vector<std::string>& bell_names() {
    static const std::vector<std::string> names{"psi+", "psi-", "phi+", "phi-"};
    return names;
}

Vector bell(int x) {
    Vector v = Vector::Zero(4);
    switch (x) {
        case 0: v[0] = 1; v[3] = 1; break;
        case 1: v[0] = 1; v[3] = -1; break;
        case 2: v[1] = 1; v[2] = 1; break;
        case 3: v[1] = 1; v[2] = -1; break;
        default: throw ValidationError("Bell index must be 0..3");
    }
    return v / std::numbers::sqrt2;
}

Matrix werner(int x, double r) {
    return r * linalg::projector(bell(x)) + (1.0 - r) * Matrix::Identity(4, 4) / 4.0;
}

std::vector<Matrix> lambda_blocking_marginals() {
    std::vector<Matrix> out;
    for (double a : {0.008967, 0.1976, -0.1652}) {
        Matrix m(2, 2);
        m << 0.5, a, a, 0.5;
        out.push_back(m);
    }
    return out;
}

std::vector<double> theta_ideal_probabilities() {
    const double r2 = std::numbers::sqrt2;
    return {2.0 * (3.0 - 2.0 * r2), 2.0 * (3.0 - 2.0 * r2), 8.0 * r2 - 11.0};
}

Matrix lambda_recovered_reference() {
    const auto m = lambda_blocking_marginals();
    std::vector<std::vector<Matrix>> marginals;
    for (const Matrix& x : m) marginals.push_back({x, x});
    return recovery::assemble_recovered_state(theta_ideal_probabilities(), marginals, dual_frame(instruments::theta_povm()), 1);
}

Matrix omega_recovered_reference() {
    Matrix one01 = Matrix::Zero(3, 3);
    one01(0, 0) = one01(1, 1) = 0.5;
    Matrix p2 = Matrix::Zero(3, 3);
    p2(2, 2) = 1.0;
    const Matrix half = linalg::identity(2) / 2.0;
    const Matrix zero = linalg::projector(Vector::Unit(2, 0));
    const Matrix a[] = {half, one01, half};
    const Matrix b[] = {zero, p2, zero};
    return 0.5 * (linalg::kron_all(a) + linalg::kron_all(b));
}

Matrix state_by_name(const std::string& name) {
    if (name == "lambda") return lambda_state();
    if (name == "omega") return omega_state();
    throw ValidationError("unknown state '" + name + "' (expected lambda or omega)");
}

ProcessTensor process_by_name(const std::string& name) {
    if (name == "lambda") return lambda_process();
    if (name == "omega") return omega_process();
    throw ValidationError("unknown process '" + name + "' (expected lambda or omega)");
}

}  // namespace proctensor::catalog
