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

#include "proctensor/instruments.h"

#include <cmath>
#include <numbers>
#include <random>

#include "proctensor/error.h"

namespace proctensor {

Instrument::Instrument(std::string name, std::vector<PovmElement> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
    if (elements_.empty()) throw DimensionError("instrument has no elements");
    const auto d = elements_.front().effect.rows();
    for (const auto& e : elements_) {
        if (e.effect.rows() != d || e.effect.cols() != d) {
            throw DimensionError("instrument elements must be square and share one dimension");
        }
    }
}

Matrix Instrument::total() const {
    Matrix sum = Matrix::Zero(dim(), dim());
    for (const auto& e : elements_) sum += e.effect;
    return sum;
}

Matrix embed_top_left(const Matrix& m, int d) {
    if (m.rows() > d) throw DimensionError("cannot embed into a smaller space");
    Matrix out = Matrix::Zero(d, d);
    out.topLeftCorner(m.rows(), m.cols()) = m;
    return out;
}

namespace instruments {

namespace {

Matrix pauli(int k) {
    Matrix m = Matrix::Zero(2, 2);
    const Complex i(0.0, 1.0);
    switch (k) {
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: m = Matrix::Identity(2, 2);
    }
    return m;
}

}  // namespace

Instrument theta_povm() {
    const double r2 = std::numbers::sqrt2;
    Matrix t1 = Matrix::Zero(2, 2);
    t1(1, 1) = r2 / (1.0 + r2);
    Vector minus(2);
    minus << 1.0, -1.0;
    const Matrix t2 = r2 / (2.0 * (1.0 + r2)) * linalg::projector(minus);
    const Matrix t3 = Matrix::Identity(2, 2) - t1 - t2;
    return Instrument("theta", {{t1, "theta1"}, {t2, "theta2"}, {t3, "theta3"}});
}

Instrument tetra_povm() {
    static constexpr int kSigns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<PovmElement> out;
    for (int x = 0; x < 4; ++x) {
        Matrix m = Matrix::Identity(2, 2);
        for (int j = 0; j < 3; ++j) m += kSigns[x][j] / std::sqrt(3.0) * pauli(j + 1);
        out.push_back({m / 4.0, "pi" + std::to_string(x + 1)});
    }
    return Instrument("tetra", std::move(out));
}

Instrument xi_noisy() {
    Matrix low = Matrix::Zero(3, 3), high = Matrix::Zero(3, 3);
    low(0, 0) = low(1, 1) = 1.0;
    high(2, 2) = 1.0;
    return Instrument("xi", {{low, "xi1"}, {high, "xi2"}});
}

Instrument qutrit_sharp() {
    std::vector<PovmElement> out;
    const Instrument tetra = tetra_povm();
    for (const auto& e : tetra.elements()) out.push_back({embed_top_left(e.effect, 3), e.label});
    Matrix high = Matrix::Zero(3, 3);
    high(2, 2) = 1.0;
    out.push_back({high, "level2"});
    return Instrument("sharp", std::move(out));
}

Instrument computational_basis(int d) {
    std::vector<PovmElement> out;
    for (int k = 0; k < d; ++k) {
        Matrix m = Matrix::Zero(d, d);
        m(k, k) = 1.0;
        out.push_back({m, "z" + std::to_string(k)});
    }
    return Instrument(d == 2 ? "z" : "z" + std::to_string(d), std::move(out));
}

Instrument by_name(const std::string& name) {
    if (name == "theta") return theta_povm();
    if (name == "tetra") return tetra_povm();
    if (name == "xi") return xi_noisy();
    if (name == "sharp") return qutrit_sharp();
    if (name == "z") return computational_basis(2);
    if (name == "z3") return computational_basis(3);
    throw ValidationError("unknown instrument '" + name + "'");
}

Matrix haar_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

Instrument random_projective(std::uint64_t seed, SamplingMeasure measure) {
    Vector v(2), w(2);
    if (measure == SamplingMeasure::kHaar) {
        const Matrix u = haar_unitary(2, seed);
        v = u.col(0);
        w = u.col(1);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        const double t = theta(rng), p = phase(rng);
        const Complex e = std::polar(1.0, p);
        v << std::cos(t), e * std::sin(t);
        w << std::sin(t), -e * std::cos(t);
    }
    return Instrument("projective", {{linalg::projector(v), "p0"}, {linalg::projector(w), "p1"}});
}

}  // namespace instruments

InstrumentValidation validate(const Instrument& inst, double tolerance) {
    InstrumentValidation v;
    v.positive = v.bounded = true;
    for (const auto& e : inst.elements()) {
        if (!linalg::is_hermitian(e.effect)) {
            v.min_eigenvalues.push_back(NAN);
            v.max_eigenvalues.push_back(NAN);
            v.positive = v.bounded = false;
            continue;
        }
        const RealVector ev = linalg::hermitian_eig(e.effect).values;
        v.min_eigenvalues.push_back(ev.minCoeff());
        v.max_eigenvalues.push_back(ev.maxCoeff());
        v.positive = v.positive && ev.minCoeff() >= -tol::kPositivity;
        v.bounded = v.bounded && ev.maxCoeff() <= 1.0 + tol::kPositivity;
    }
    v.completeness_residual = (Matrix::Identity(inst.dim(), inst.dim()) - inst.total()).norm();
    v.complete = v.completeness_residual <= tolerance;
    v.ok = v.positive && v.bounded && v.complete;
    return v;
}

double DualFrame::biorthogonality_error(const Instrument& inst) const {
    double err = 0.0;
    for (std::size_t x = 0; x < duals_.size(); ++x)
        for (std::size_t y = 0; y < inst.size(); ++y) {
            const Complex t = (duals_[x] * inst[y]).trace();
            err = std::max(err, std::abs(t - Complex(x == y ? 1.0 : 0.0, 0.0)));
        }
    return err;
}

Matrix DualFrame::reconstruct(const Matrix& m, const Instrument& inst) const {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t x = 0; x < duals_.size(); ++x) out += duals_[x] * (m * inst[x]).trace();
    return out;
}

DualFrame dual_frame(const Instrument& inst) {
    const auto n = static_cast<Eigen::Index>(inst.size());
    Matrix gram(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) gram(x, y) = (inst[x] * inst[y]).trace();
    Eigen::JacobiSVD<Matrix> svd(gram);
    const auto& s = svd.singularValues();
    DualFrame frame;
    frame.gram_ = gram;
    frame.condition_ = s(n - 1) > 0.0 ? s(0) / s(n - 1) : INFINITY;
    if (!(frame.condition_ < tol::kGramCondition)) {
        throw LinearDependenceError("instrument elements are not linearly independent (Gram condition number " +
                                    std::to_string(frame.condition_) + ")");
    }
    const Matrix inv = gram.inverse();
    for (Eigen::Index x = 0; x < n; ++x) {
        Matrix d = Matrix::Zero(inst.dim(), inst.dim());
        for (Eigen::Index y = 0; y < n; ++y) d += inv(y, x) * inst[y];
        frame.duals_.push_back(d);
    }
    return frame;
}

namespace {

Matrix vectorized(const Instrument& inst) {
    const int d = inst.dim();
    Matrix cols(d * d, inst.size());
    for (std::size_t x = 0; x < inst.size(); ++x) cols.col(x) = inst[x].reshaped();
    return cols;
}

}  // namespace

double span_residual(const Matrix& m, const Instrument& inst) {
    if (m.rows() != inst.dim() || m.cols() != inst.dim()) throw DimensionError("span_residual: dimension mismatch");
    const Matrix basis = vectorized(inst);
    const Vector target = m.reshaped();
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis);
    const Vector coeffs = cod.solve(target);
    return (basis * coeffs - target).norm();
}

int span_rank(const Instrument& inst) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(vectorized(inst));
    cod.setThreshold(1e-10);
    return static_cast<int>(cod.rank());
}

}  // namespace proctensor
