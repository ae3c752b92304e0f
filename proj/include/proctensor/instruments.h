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

#ifndef PROCTENSOR_INSTRUMENTS_H
#define PROCTENSOR_INSTRUMENTS_H

#include <cstdint>
#include <string>
#include <vector>

#include "proctensor/linalg.h"

namespace proctensor {

struct PovmElement {
    Matrix effect;
    std::string label;
};

/// Measure-and-discard instrument on a single input leg, stored as effects.
class Instrument {
  public:
    Instrument() = default;
    /// Checks square shapes of equal dimension; does not require validity.
    Instrument(std::string name, std::vector<PovmElement> elements);

    const std::string& name() const { return name_; }
    const std::vector<PovmElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    int dim() const { return elements_.empty() ? 0 : static_cast<int>(elements_.front().effect.rows()); }
    const Matrix& operator[](std::size_t x) const { return elements_[x].effect; }

    /// Sum of all effects.
    Matrix total() const;

  private:
    std::string name_;
    std::vector<PovmElement> elements_;
};

namespace instruments {

/// Three-outcome non-orthogonal qubit POVM that blocks the history of the
/// first common-cause process.
Instrument theta_povm();
/// Symmetric informationally complete qubit POVM (regular tetrahedron).
Instrument tetra_povm();
/// Coarse qutrit measurement {1 - |2><2|, |2><2|}.
Instrument xi_noisy();
/// Tetrahedral POVM on the {0,1} qutrit subspace plus |2><2|.
Instrument qutrit_sharp();
/// {|k><k|} on dimension d.
Instrument computational_basis(int d = 2);
/// Named lookup: theta, tetra, xi, sharp, z (qubit basis), z3 (qutrit basis).
Instrument by_name(const std::string& name);

enum class SamplingMeasure { kHaar, kUniformAngles };

/// Two orthogonal rank-1 qubit projectors. kHaar rotates the computational
/// basis by a Haar unitary; kUniformAngles draws |v> = cos t|0> + e^{ip} sin t|1>
/// with t uniform on [0, pi/2] and p uniform on [0, 2 pi).
Instrument random_projective(std::uint64_t seed, SamplingMeasure measure = SamplingMeasure::kHaar);

/// Haar-distributed d x d unitary (Gaussian QR with phase fix).
Matrix haar_unitary(int d, std::uint64_t seed);

}  // namespace instruments

struct InstrumentValidation {
    std::vector<double> min_eigenvalues;
    std::vector<double> max_eigenvalues;
    double completeness_residual = 0.0;
    bool positive = false;
    bool bounded = false;
    bool complete = false;
    bool ok = false;
};

InstrumentValidation validate(const Instrument& inst, double tolerance = tol::kCompleteness);

/// Operators dual to an instrument: tr[Delta_x E_y] = delta_xy with the
/// Delta in the span of the effects.
class DualFrame {
  public:
    const std::vector<Matrix>& duals() const { return duals_; }
    const Matrix& operator[](std::size_t x) const { return duals_[x]; }
    std::size_t size() const { return duals_.size(); }
    const Matrix& gram() const { return gram_; }
    double condition_number() const { return condition_; }

    /// Largest |tr[Delta_x E_y] - delta_xy|.
    double biorthogonality_error(const Instrument& inst) const;
    /// Sum_x Delta_x tr[m E_x]; the identity on span{E_x}.
    Matrix reconstruct(const Matrix& m, const Instrument& inst) const;

  private:
    friend DualFrame dual_frame(const Instrument&);
    std::vector<Matrix> duals_;
    Matrix gram_;
    double condition_ = 0.0;
};

/// Gram inversion with G_xy = tr[E_x E_y]. Throws LinearDependenceError when
/// the Gram condition number exceeds tol::kGramCondition.
DualFrame dual_frame(const Instrument& inst);

/// Frobenius residual of m after orthogonal projection onto span{E_x}.
double span_residual(const Matrix& m, const Instrument& inst);

/// Rank of span{E_x} as real vectors (numerical, 1e-10).
int span_rank(const Instrument& inst);

/// Effect embedded in a larger dimension on the leading block.
Matrix embed_top_left(const Matrix& m, int d);

}  // namespace proctensor

#endif  // PROCTENSOR_INSTRUMENTS_H
