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

#include "proctensor/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "proctensor/error.h"

namespace proctensor {

LegLayout::LegLayout(std::vector<Leg> legs) : legs_(std::move(legs)) {
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        if (legs_[i].dim <= 0) {
            throw DimensionError("leg '" + legs_[i].label + "' has non-positive dimension");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (legs_[i].label == legs_[j].label) {
                throw DimensionError("duplicate leg label '" + legs_[i].label + "'");
            }
        }
    }
}

int LegLayout::total_dim() const {
    int d = 1;
    for (const auto& leg : legs_) d *= leg.dim;
    return d;
}

std::vector<int> LegLayout::dims() const {
    std::vector<int> out;
    out.reserve(legs_.size());
    for (const auto& leg : legs_) out.push_back(leg.dim);
    return out;
}

std::vector<std::string> LegLayout::labels() const {
    std::vector<std::string> out;
    out.reserve(legs_.size());
    for (const auto& leg : legs_) out.push_back(leg.label);
    return out;
}

std::optional<std::size_t> LegLayout::find(std::string_view label) const {
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        if (legs_[i].label == label) return i;
    }
    return std::nullopt;
}

std::size_t LegLayout::index_of(std::string_view label) const {
    auto idx = find(label);
    if (!idx) throw DimensionError("unknown leg label '" + std::string(label) + "'");
    return *idx;
}

LegLayout LegLayout::subset(std::span<const std::size_t> indices) const {
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Leg> out;
    for (auto i : sorted) {
        if (i >= legs_.size()) throw DimensionError("leg index out of range");
        out.push_back(legs_[i]);
    }
    return LegLayout(std::move(out));
}

int LegLayout::output_dim_product() const {
    int d = 1;
    for (const auto& leg : legs_) {
        if (leg.direction == LegDirection::kOutput) d *= leg.dim;
    }
    return d;
}

namespace linalg {

namespace {

// Row-major strides of a multi-index with the given dims (last leg fastest).
std::vector<int> strides_of(std::span<const int> dims) {
    std::vector<int> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
    return s;
}

int product(std::span<const int> dims) {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Offsets into the full index of every multi-index over the listed legs.
std::vector<int> offsets_over(std::span<const int> dims, const std::vector<int>& strides,
                              const std::vector<std::size_t>& legs) {
    std::vector<int> offs{0};
    for (auto leg : legs) {
        std::vector<int> next;
        next.reserve(offs.size() * dims[leg]);
        for (int base : offs) {
            for (int v = 0; v < dims[leg]; ++v) next.push_back(base + v * strides[leg]);
        }
        offs = std::move(next);
    }
    return offs;
}

}  // namespace

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
    Matrix out = Matrix::Ones(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

double hermiticity_error(const Matrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tolerance) { return hermiticity_error(m) <= tolerance; }

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const std::size_t> keep) {
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total) {
        throw DimensionError("matrix side does not match product of leg dimensions");
    }
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
    }
    for (auto k : kept) {
        if (k >= dims.size()) throw DimensionError("kept leg index out of range");
    }
    const auto strides = strides_of(dims);
    const auto keep_off = offsets_over(dims, strides, kept);
    const auto trace_off = offsets_over(dims, strides, traced);
    const auto n = static_cast<Eigen::Index>(keep_off.size());
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (int t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
            out(r, c) = acc;
        }
    }
    return out;
}

Reduced partial_trace(const Matrix& m, const LegLayout& layout, const std::set<std::string>& keep) {
    if (m.rows() != layout.total_dim() || m.cols() != layout.total_dim()) {
        throw DimensionError("layout dimension does not match matrix");
    }
    std::vector<std::size_t> idx;
    for (const auto& label : keep) idx.push_back(layout.index_of(label));
    const auto dims = layout.dims();
    return {partial_trace(m, dims, idx), layout.subset(idx)};
}

Matrix permute_legs(const Matrix& m, std::span<const int> dims, std::span<const std::size_t> order) {
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total || order.size() != dims.size()) {
        throw DimensionError("permute_legs: shape mismatch");
    }
    std::vector<int> new_dims(dims.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
    const auto old_strides = strides_of(dims);
    const auto new_strides = strides_of(new_dims);
    // map[i] = position of old basis index i in the permuted basis
    std::vector<int> map(total);
    for (int i = 0; i < total; ++i) {
        int j = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const int digit = (i / old_strides[order[k]]) % dims[order[k]];
            j += digit * new_strides[k];
        }
        map[i] = j;
    }
    Matrix out(total, total);
    for (int i = 0; i < total; ++i) {
        for (int j = 0; j < total; ++j) out(map[i], map[j]) = m(i, j);
    }
    return out;
}

EigenSystem hermitian_eig(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eig: matrix is not square");
    const double herr = hermiticity_error(m);
    if (herr > tol::kHermitian) {
        std::ostringstream os;
        os << "hermitian_eig: matrix is not Hermitian (max deviation " << herr << ")";
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success) throw ValidationError("hermitian_eig: solver did not converge");
    const Eigen::Index n = m.rows();
    EigenSystem out{RealVector(n), Matrix(n, n)};
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()[n - 1 - k];
        Vector v = solver.eigenvectors().col(n - 1 - k);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v[i]) > 1e-8) {
                v *= std::conj(v[i]) / std::abs(v[i]);
                v[i] = std::abs(v[i]);
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

Matrix sqrt_psd(const Matrix& m) {
    return spectral_map(m, [](double e) { return e > 0.0 ? std::sqrt(e) : 0.0; });
}

double trace_norm(const Matrix& m) { return hermitian_eig(m).values.cwiseAbs().sum(); }

namespace {

void check_state_spectrum(const RealVector& values, std::string_view what) {
    if (values.size() == 0) throw DimensionError(std::string(what) + ": empty matrix");
    if (values.minCoeff() < -tol::kPositivity) {
        std::ostringstream os;
        os << what << ": negative eigenvalue " << values.minCoeff();
        throw ValidationError(os.str());
    }
    if (std::abs(values.sum() - 1.0) > tol::kTrace) {
        std::ostringstream os;
        os << what << ": trace " << values.sum() << " deviates from 1";
        throw ValidationError(os.str());
    }
}

}  // namespace

void require_state(const Matrix& rho, std::string_view what) {
    check_state_spectrum(hermitian_eig(rho).values, what);
}

double von_neumann_entropy(const Matrix& rho) {
    const RealVector e = hermitian_eig(rho).values;
    check_state_spectrum(e, "von_neumann_entropy");
    double s = 0.0;
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        if (e[k] > tol::kEigenClip) s -= e[k] * std::log2(e[k]);
    }
    return s;
}

double relative_entropy(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionError("relative_entropy: shape mismatch");
    const EigenSystem ex = hermitian_eig(x);
    const EigenSystem ey = hermitian_eig(y);
    check_state_spectrum(ex.values, "relative_entropy(x)");
    check_state_spectrum(ey.values, "relative_entropy(y)");

    double x_log_x = 0.0;
    for (Eigen::Index k = 0; k < ex.values.size(); ++k) {
        if (ex.values[k] > tol::kEigenClip) x_log_x += ex.values[k] * std::log2(ex.values[k]);
    }
    double x_log_y = 0.0;
    for (Eigen::Index k = 0; k < ey.values.size(); ++k) {
        const Vector v = ey.vectors.col(k);
        const double weight = (v.adjoint() * x * v)(0, 0).real();
        if (ey.values[k] > tol::kEigenClip) {
            x_log_y += weight * std::log2(ey.values[k]);
        } else if (weight > tol::kEigenClip) {
            throw SupportError("relative_entropy: support of x is not contained in support of y");
        }
    }
    return std::max(0.0, x_log_x - x_log_y);
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw DimensionError("fidelity: shape mismatch");
    require_state(rho, "fidelity(rho)");
    require_state(sigma, "fidelity(sigma)");
    const Matrix root = sqrt_psd(rho);
    const RealVector e = hermitian_eig(hermitian_part(root * sigma * root)).values;
    double s = 0.0;
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        if (e[k] > tol::kEigenClip) s += std::sqrt(e[k]);
    }
    return std::clamp(s * s, 0.0, 1.0);
}

}  // namespace linalg
}  // namespace proctensor
