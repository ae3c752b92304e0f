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

#ifndef PROCTENSOR_LINALG_H
#define PROCTENSOR_LINALG_H

// Dense complex linear algebra on small labelled tensor legs. Everything here
// is pure; matrices are value types (Eigen::MatrixXcd).

#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "proctensor/tolerances.h"

namespace proctensor {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class LegDirection { kInput, kOutput };

struct Leg {
    std::string label;
    int dim = 1;
    LegDirection direction = LegDirection::kInput;

    bool operator==(const Leg&) const = default;
};

/// Ordered list of labelled tensor legs. The order of the legs is the order
/// of the Kronecker factors of any operator carrying this layout; for process
/// tensors it is chronological (A^i, A^o, B^i, B^o, C^i).
class LegLayout {
  public:
    LegLayout() = default;
    explicit LegLayout(std::vector<Leg> legs);

    const std::vector<Leg>& legs() const { return legs_; }
    const Leg& operator[](std::size_t i) const { return legs_[i]; }
    std::size_t size() const { return legs_.size(); }
    bool empty() const { return legs_.empty(); }

    /// Product of all leg dimensions (side length of a carried operator).
    int total_dim() const;
    std::vector<int> dims() const;
    std::vector<std::string> labels() const;

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws DimensionError for unknown labels.
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }

    /// Legs at the given positions, kept in layout order.
    LegLayout subset(std::span<const std::size_t> indices) const;

    /// Product of the dimensions of the output legs.
    int output_dim_product() const;

    bool operator==(const LegLayout&) const = default;

  private:
    std::vector<Leg> legs_;
};

namespace linalg {

Matrix identity(int d);
/// |v><v|.
Matrix projector(const Vector& v);
/// Standard Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);
/// Kronecker product of a list, left to right. Empty list gives the 1x1 one.
Matrix kron_all(std::span<const Matrix> factors);

/// max |m - m^dagger|.
double hermiticity_error(const Matrix& m);
bool is_hermitian(const Matrix& m, double tolerance = tol::kHermitian);
Matrix hermitian_part(const Matrix& m);

/// Trace over every leg not listed in `keep`; kept legs stay in their layout
/// order. `keep` holds leg positions.
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const std::size_t> keep);

struct Reduced {
    Matrix matrix;
    LegLayout layout;
};

/// Label-based partial trace. Throws DimensionError on unknown labels or when
/// the layout does not match the matrix.
Reduced partial_trace(const Matrix& m, const LegLayout& layout, const std::set<std::string>& keep);

/// Reorders tensor legs: leg k of the result is leg order[k] of `m`.
Matrix permute_legs(const Matrix& m, std::span<const int> dims, std::span<const std::size_t> order);

/// Eigenvalues sorted descending; eigenvectors in matching columns with the
/// first non-negligible component made real and positive.
struct EigenSystem {
    RealVector values;
    Matrix vectors;
};

/// Throws ValidationError if m is not Hermitian within tol::kHermitian.
EigenSystem hermitian_eig(const Matrix& m);

/// f applied to the spectrum of a Hermitian matrix.
template <typename F>
Matrix spectral_map(const Matrix& m, F&& f) {
    const EigenSystem es = hermitian_eig(m);
    RealVector mapped(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) mapped[k] = f(es.values[k]);
    return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

/// Square root of a positive semidefinite matrix (negative noise clipped).
Matrix sqrt_psd(const Matrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& m);

/// Throws ValidationError unless rho is Hermitian, positive within
/// tol::kPositivity and has unit trace within tol::kTrace.
void require_state(const Matrix& rho, std::string_view what = "state");

/// Von Neumann entropy in bits.
double von_neumann_entropy(const Matrix& rho);

/// Quantum relative entropy S(x||y) = tr[x (log x - log y)] in bits.
/// Throws SupportError when supp(x) is not inside supp(y).
double relative_entropy(const Matrix& x, const Matrix& y);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace linalg
}  // namespace proctensor

#endif  // PROCTENSOR_LINALG_H
