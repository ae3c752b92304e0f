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

#ifndef PROCTENSOR_RECOVERY_H
#define PROCTENSOR_RECOVERY_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "proctensor/instruments.h"
#include "proctensor/process.h"

namespace proctensor::recovery {

/// Process rebuilt from per-event products of marginals and the dual frame of
/// the blocking instrument. Only meaningful on the span of that instrument.
struct RecoveredProcess {
    Matrix state;  // on the input legs, canonical order
    std::vector<int> input_dims;
    std::vector<int> output_dims;
    std::size_t party_index = 1;
    std::vector<double> probabilities;
    /// marginals[x][k]: normalized marginal of the k-th remaining input leg for event x.
    std::vector<std::vector<Matrix>> marginals;
    Instrument instrument;
    DualFrame dual;

    /// state (x) 1 on the output legs; not necessarily positive.
    ProcessTensor as_process() const;
};

RecoveredProcess recover(const ProcessTensor& p, const Instrument& inst, const std::string& party = "B");

/// sum_x w_x (x)_k m_{x,k} with the dual inserted at party_index; the same
/// assembly recover() uses, exposed for closed-form comparisons.
Matrix assemble_recovered_state(const std::vector<double>& weights,
                                const std::vector<std::vector<Matrix>>& marginals, const DualFrame& dual,
                                std::size_t party_index);

struct ObservableTerm {
    double coefficient = 1.0;
    Matrix alice;
    Matrix bob;
    Matrix charlie;
};

struct Observable {
    std::vector<ObservableTerm> terms;
};

struct ObservableValidation {
    std::vector<double> residuals;
    bool ok = false;
};

/// Span residual of each term's Bob operator against the instrument.
ObservableValidation validate_observable(const Observable& obs, const Instrument& inst,
                                         double tolerance = tol::kSpan);

/// sum_y c_y tr[(A (x) B (x) C) gamma] evaluated through the Choi contraction
/// of the three-party process (output legs contracted with 1/d).
double expectation(const ProcessTensor& p, const Observable& obs);
/// Same on a recovered process; throws SpanError when an operator of Bob lies
/// outside the span of the blocking instrument.
double expectation(const RecoveredProcess& r, const Observable& obs);

enum class ScanConvention { kProjector, kCorrelator };

struct AngleRange {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;  // 1 keeps the angle fixed at start; otherwise inclusive linspace

    double at(int k) const { return steps <= 1 ? start : start + (stop - start) * k / (steps - 1); }
};

struct ScanGrid {
    AngleRange theta1, phi, theta2, psi;
    std::size_t size() const;
};

struct ScanPoint {
    double theta1, phi, theta2, psi;
    double true_value, recovered_value, abs_diff;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    std::size_t argmax = 0;
    double max_abs_diff = 0.0;

    /// theta1,phi,theta2,psi,true,recovered,abs_diff
    void write_csv(std::ostream& os) const;
};

/// |<C>_true - <C>_rec| over the grid with Bob non-selective. Alice measures
/// |phi> = cos t1 |0> + e^{i phi} sin t1 |1>, Charlie the analogous |psi>.
ScanResult deviation_scan(const ProcessTensor& true_process, const RecoveredProcess& recovered,
                          const ScanGrid& grid, ScanConvention convention = ScanConvention::kProjector,
                          unsigned threads = 0);
/// Same on two bare two-leg A^i C^i states.
ScanResult deviation_scan(const Matrix& true_ac, const Matrix& recovered_ac, const ScanGrid& grid,
                          ScanConvention convention = ScanConvention::kProjector, unsigned threads = 0);

struct NoiseModel {
    double depolarizing = 0.0;   // per-leg strength in [0, 1]
    double misalignment = 0.0;   // rotation angle scale of random local unitaries
};

/// Applies a random local unitary exp(i a H_k) (H_k a unit-norm random
/// Hermitian, a = misalignment) and then depolarizing of the given strength
/// to every leg. Deterministic in the seed.
Matrix noisy_replay(const Matrix& gamma, const std::vector<int>& dims, const NoiseModel& noise, std::uint64_t seed);

}  // namespace proctensor::recovery

#endif  // PROCTENSOR_RECOVERY_H
