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

#ifndef PROCTENSOR_PROCESS_H
#define PROCTENSOR_PROCESS_H

#include <optional>
#include <string>
#include <vector>

#include "proctensor/linalg.h"

namespace proctensor {

/// Initial state and leg dimensions of a process built as gamma (x) 1_outputs.
struct CommonCauseSource {
    Matrix gamma;
    std::vector<int> input_dims;
    std::vector<int> output_dims;
};

/// Choi operator of a multi-time process on alternating input/output legs.
///
/// Construction only checks shape and hermiticity; positivity, trace and
/// causality are reported by validate() so that deliberately broken tensors
/// can still be built and diagnosed.
class ProcessTensor {
  public:
    ProcessTensor(Matrix matrix, LegLayout layout);

    const Matrix& matrix() const { return matrix_; }
    const LegLayout& layout() const { return layout_; }
    const std::optional<CommonCauseSource>& source() const { return source_; }

    /// Expected trace of a normalized process: product of output dimensions.
    double trace_norm() const { return layout_.output_dim_product(); }
    double trace() const { return matrix_.trace().real(); }
    /// Unit-trace copy of the Choi matrix.
    Matrix normalized() const { return matrix_ / trace(); }

    /// Label of party k: "A", "B", ...
    static std::string party_label(std::size_t k);
    std::size_t party_count() const;

  private:
    friend ProcessTensor build_common_cause(const Matrix&, const std::vector<int>&, const std::vector<int>&, bool);

    Matrix matrix_;
    LegLayout layout_;
    std::optional<CommonCauseSource> source_;
};

/// Canonical chronological layout A^i, A^o, B^i, B^o, ..., last party input only.
LegLayout canonical_layout(const std::vector<int>& input_dims, const std::vector<int>& output_dims);

/// gamma on the input legs tensored with identities on the output legs.
/// output_dims has one fewer entry than input_dims. With check_state false the
/// initial operator only has to be Hermitian (used for recovered processes,
/// which need not be positive).
ProcessTensor build_common_cause(const Matrix& gamma, const std::vector<int>& input_dims,
                                 const std::vector<int>& output_dims, bool check_state = true);

struct ProcessValidation {
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;
    double trace_error = 0.0;
    bool ok = false;
};

ProcessValidation validate(const ProcessTensor& p);

struct CausalityLevel {
    std::string traced_input;
    std::string freed_output;  // empty for the last level
    double residual = 0.0;
};

struct CausalityReport {
    std::vector<CausalityLevel> levels;
    bool ok = false;
};

/// Residual of each level of the trace hierarchy, latest party first.
CausalityReport check_causality(const ProcessTensor& p, double tolerance = tol::kCausality);

/// Choi matrix of the measure-and-discard operation with effect E on a party
/// whose output leg has dimension d_out (d_out = 0 for the last party).
/// Choi(E) = E^T (x) 1/d_out; contracting it with the transposed Born rule
/// gives tr[E rho] on the input leg.
Matrix measure_and_discard_choi(const Matrix& effect, int d_out);

/// tr[(ops_A (x) ops_B (x) ...)^T P]. ops[k] acts on party k's legs (input then output).
double born_rule(const ProcessTensor& p, const std::vector<Matrix>& ops);

struct ConditionalProcess {
    Matrix matrix;
    LegLayout layout;
    double probability = 0.0;
    int event_index = -1;

    /// Conditional state on the remaining input legs, unit trace.
    Matrix input_state() const;
};

enum class ContractionPath { kAuto, kFullProcess, kCommonCause };

/// Conditions on the event of a measure-and-discard effect at one party.
/// The result lives on the remaining legs; probability divides out the
/// dimensions of the remaining output legs.
ConditionalProcess condition(const ProcessTensor& p, const std::string& party, const Matrix& effect,
                             int event_index = -1, ContractionPath path = ContractionPath::kAuto);

/// Single-input-leg marginals of the normalized process.
std::vector<Matrix> input_marginals(const ProcessTensor& p);

/// gamma_A (x) 1 (x) gamma_B (x) 1 (x) gamma_C built from the input marginals.
ProcessTensor markov_product(const ProcessTensor& p);

struct TwoPointMap {
    std::string from_output;
    std::string to_input;
    Matrix choi;
    double residual = 0.0;  // against 1 (x) gamma_to
};

struct CpDivisibilityReport {
    std::vector<TwoPointMap> maps;
    double composition_residual = 0.0;
    bool ok = false;
};

/// Two-point Choi operators between every output leg and every later input
/// leg, checked against the replace-by-marginal form, plus composition of the
/// consecutive maps.
CpDivisibilityReport cp_divisibility_check(const ProcessTensor& p, double tolerance = 1e-10);

}  // namespace proctensor

#endif  // PROCTENSOR_PROCESS_H
