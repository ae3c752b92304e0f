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

#ifndef PROCTENSOR_MEMORY_H
#define PROCTENSOR_MEMORY_H

#include <cstdint>
#include <string>
#include <vector>

#include "proctensor/instruments.h"
#include "proctensor/process.h"

namespace proctensor::memory {

/// S(P_hat || P_hat^Markov) in bits on trace-normalized Choi matrices.
double non_markovianity(const ProcessTensor& p);

/// S(rho || rho_1 (x) ... (x) rho_n) in bits.
double total_correlation(const Matrix& rho, const std::vector<int>& dims);

/// S_A + S_C - S_AC in bits for a bipartite state.
double mutual_information(const Matrix& rho, int d_a, int d_c);

/// I(A:C|B) = S_AB + S_BC - S_ABC - S_B in bits for a tripartite state.
double quantum_cmi(const Matrix& rho, const std::vector<int>& dims);

/// CMI of the normalized process with parties grouped as A = (A^i, A^o),
/// B = (B^i, B^o), C = C^i.
double process_cmi(const ProcessTensor& p);

struct EventMemory {
    double probability = 0.0;
    double mutual_information = 0.0;
    bool zero_probability = false;
};

struct MemoryReport {
    std::vector<EventMemory> events;
    double aggregate_uniform = 0.0;
    double aggregate_weighted = 0.0;
    double max_event = 0.0;
};

/// Mutual information between the first and last input legs of the
/// conditional state for each event of inst applied at `party`.
MemoryReport memory_strength(const ProcessTensor& p, const Instrument& inst, const std::string& party = "B");

enum class MarkovMetric { kTraceDistance, kMutualInformation };

struct MarkovOrderReport {
    std::vector<double> residuals;
    MarkovMetric metric = MarkovMetric::kTraceDistance;
    bool blocked = false;
};

/// Per event: || rho_AC - rho_A (x) rho_C ||_1 (or the mutual information)
/// of the conditional state; blocked iff every residual is below tol.
MarkovOrderReport markov_order_test(const ProcessTensor& p, const Instrument& inst, double tolerance,
                                    MarkovMetric metric = MarkovMetric::kTraceDistance,
                                    const std::string& party = "B");

/// exp(-n N) with N given in bits and converted to nats.
double confusion_probability(int n, double non_markovianity_bits);

struct SurveyResult {
    std::size_t samples = 0;
    std::size_t below_cutoff = 0;
    double fraction = 0.0;
    double standard_error = 0.0;
};

/// Fraction of random projective instruments at B whose largest per-event
/// mutual information is below cutoff. Each sample uses derive_seed(seed, k).
SurveyResult projective_survey(const ProcessTensor& p, double cutoff, std::size_t samples, std::uint64_t seed,
                               instruments::SamplingMeasure measure = instruments::SamplingMeasure::kHaar,
                               unsigned threads = 0);

}  // namespace proctensor::memory

#endif  // PROCTENSOR_MEMORY_H
