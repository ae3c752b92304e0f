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

#include "oracle.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

namespace {

std::vector<int> digits(int index, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        d[k] = index % dims[k];
        index /= dims[k];
    }
    return d;
}

int flatten(const std::vector<int>& d, const std::vector<int>& dims) {
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + d[k];
    return index;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& keep) {
    std::vector<int> kept_dims;
    for (int k : keep) kept_dims.push_back(dims[k]);
    int dk = 1;
    for (int d : kept_dims) dk *= d;
    Matrix out = Matrix::Zero(dk, dk);
    const int n = static_cast<int>(m.rows());
    for (int i = 0; i < n; ++i) {
        const auto di = digits(i, dims);
        for (int j = 0; j < n; ++j) {
            const auto dj = digits(j, dims);
            bool diagonal = true;
            for (std::size_t k = 0; k < dims.size() && diagonal; ++k) {
                bool kept = false;
                for (int q : keep) kept = kept || q == static_cast<int>(k);
                if (!kept && di[k] != dj[k]) diagonal = false;
            }
            if (!diagonal) continue;
            std::vector<int> ri, rj;
            for (int q : keep) {
                ri.push_back(di[q]);
                rj.push_back(dj[q]);
            }
            out(flatten(ri, kept_dims), flatten(rj, kept_dims)) += m(i, j);
        }
    }
    return out;
}

void jacobi(const Real& input, Eigen::VectorXd& values, Real& vectors) {
    Real a = input;
    const Eigen::Index n = a.rows();
    vectors = Real::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = vectors(k, p), vkq = vectors(k, q);
                    vectors(k, p) = c * vkp - s * vkq;
                    vectors(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    values = a.diagonal();
}

namespace {

Real embed(const Matrix& h) {
    const Eigen::Index n = h.rows();
    Real r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = h.real();
    r.topRightCorner(n, n) = -h.imag();
    r.bottomLeftCorner(n, n) = h.imag();
    r.bottomRightCorner(n, n) = h.real();
    return r;
}

}  // namespace

Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
    Eigen::VectorXd values;
    Real vectors;
    jacobi(embed(h), values, vectors);
    Eigen::VectorXd mapped(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) mapped[k] = f(values[k]);
    const Real fm = vectors * mapped.asDiagonal() * vectors.transpose();
    const Eigen::Index n = h.rows();
    Matrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = Complex(fm(i, j), fm(i + n, j));
    return out;
}

std::vector<double> eigenvalues(const Matrix& h) {
    Eigen::VectorXd values;
    Real vectors;
    jacobi(embed(h), values, vectors);
    std::vector<double> v(values.data(), values.data() + values.size());
    std::sort(v.begin(), v.end());
    std::vector<double> once;
    for (std::size_t k = 0; k < v.size(); k += 2) once.push_back(0.5 * (v[k] + v[k + 1]));
    return once;
}

double entropy_bits(const Matrix& rho) {
    double s = 0.0;
    for (double l : eigenvalues(rho))
        if (l > 1e-14) s -= l * std::log2(l);
    return s;
}

double relative_entropy_bits(const Matrix& x, const Matrix& y) {
    auto safe_log = [](double l) { return l > 1e-14 ? std::log2(l) : 0.0; };
    const Matrix lx = hermitian_function(x, safe_log);
    const Matrix ly = hermitian_function(y, safe_log);
    return (x * (lx - ly)).trace().real();
}

double mutual_information_bits(const Matrix& rho, int da, int dc) {
    const std::vector<int> dims{da, dc};
    return entropy_bits(partial_trace(rho, dims, {0})) + entropy_bits(partial_trace(rho, dims, {1})) - entropy_bits(rho);
}

double born_sum(const Matrix& gamma, const std::vector<int>& dims, const std::vector<Matrix>& effects) {
    Complex total = 0.0;
    const int n = static_cast<int>(gamma.rows());
    for (int i = 0; i < n; ++i) {
        const auto di = digits(i, dims);
        for (int j = 0; j < n; ++j) {
            const auto dj = digits(j, dims);
            Complex w = gamma(i, j);
            for (std::size_t k = 0; k < dims.size(); ++k) w *= effects[k](dj[k], di[k]);
            total += w;
        }
    }
    return total.real();
}

Matrix random_state(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Matrix random_hermitian(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
    return 0.5 * (g + g.adjoint());
}

Eigen::VectorXcd random_unit_vector(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(n(rng), n(rng));
    return v / v.norm();
}

Eigen::VectorXcd dense_walk(const Eigen::Vector2cd& initial,
                            const std::vector<std::vector<std::pair<int, Eigen::Matrix2cd>>>& steps, int span) {
    const int sites = 2 * span + 1;
    const int n = 2 * sites;
    auto idx = [span](int x, int c) { return 2 * (x + span) + c; };
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
    psi(idx(0, 0)) = initial(0);
    psi(idx(0, 1)) = initial(1);
    for (const auto& step : steps) {
        Matrix coin = Matrix::Identity(n, n);
        for (const auto& [x, c] : step) coin.block(idx(x, 0), idx(x, 0), 2, 2) = c;
        Matrix shift = Matrix::Zero(n, n);
        for (int x = -span; x <= span; ++x) {
            if (x - 1 >= -span) shift(idx(x - 1, 0), idx(x, 0)) = 1.0;
            if (x + 1 <= span) shift(idx(x + 1, 1), idx(x, 1)) = 1.0;
        }
        psi = shift * (coin * psi);
    }
    return psi;
}

}  // namespace oracle
