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

#include "proctensor/memory.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "proctensor/error.h"
#include "proctensor/parallel.h"

namespace proctensor::memory {

namespace {

constexpr double kZeroProbability = 1e-14;

double entropy_of(const Matrix& rho, const std::vector<int>& dims, std::vector<std::size_t> keep) {
    if (keep.size() == dims.size()) return linalg::von_neumann_entropy(rho);
    return linalg::von_neumann_entropy(linalg::partial_trace(rho, dims, keep));
}

/// Split of a conditional input state into its first leg and the rest.
std::pair<int, int> first_rest_split(const ConditionalProcess& c) {
    int first = 0, rest = 1;
    for (const auto& leg : c.layout.legs()) {
        if (leg.direction != LegDirection::kInput) continue;
        if (first == 0) {
            first = leg.dim;
        } else {
            rest *= leg.dim;
        }
    }
    return {first, rest};
}

}  // namespace

double total_correlation(const Matrix& rho, const std::vector<int>& dims) {
    std::vector<Matrix> marginals;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const std::size_t keep[] = {k};
        marginals.push_back(linalg::partial_trace(rho, dims, keep));
    }
    return linalg::relative_entropy(rho, linalg::kron_all(marginals));
}

double non_markovianity(const ProcessTensor& p) {
    return linalg::relative_entropy(p.normalized(), markov_product(p).normalized());
}

double mutual_information(const Matrix& rho, int d_a, int d_c) {
    const std::vector<int> dims{d_a, d_c};
    return entropy_of(rho, dims, {0}) + entropy_of(rho, dims, {1}) - linalg::von_neumann_entropy(rho);
}

double quantum_cmi(const Matrix& rho, const std::vector<int>& dims) {
    if (dims.size() != 3) throw DimensionError("quantum_cmi expects three subsystems");
    return entropy_of(rho, dims, {0, 1}) + entropy_of(rho, dims, {1, 2}) - linalg::von_neumann_entropy(rho) -
           entropy_of(rho, dims, {1});
}

double process_cmi(const ProcessTensor& p) {
    const auto& layout = p.layout();
    if (layout.size() != 5 || p.party_count() != 3) throw DimensionError("process_cmi expects three parties");
    // Group legs into parties: A = {Ai, Ao}, B = {Bi, Bo}, C = {Ci}.
    const std::vector<int> dims{layout[0].dim * layout[1].dim, layout[2].dim * layout[3].dim, layout[4].dim};
    return quantum_cmi(p.normalized(), dims);
}

MemoryReport memory_strength(const ProcessTensor& p, const Instrument& inst, const std::string& party) {
    MemoryReport report;
    for (std::size_t x = 0; x < inst.size(); ++x) {
        const ConditionalProcess c = condition(p, party, inst[x], static_cast<int>(x));
        EventMemory e;
        e.probability = c.probability;
        if (c.probability < kZeroProbability) {
            e.zero_probability = true;
        } else {
            const auto [d_a, d_c] = first_rest_split(c);
            e.mutual_information = mutual_information(c.input_state(), d_a, d_c);
        }
        report.events.push_back(e);
    }
    for (const auto& e : report.events) {
        report.aggregate_uniform += e.mutual_information / static_cast<double>(report.events.size());
        report.aggregate_weighted += e.probability * e.mutual_information;
        report.max_event = std::max(report.max_event, e.mutual_information);
    }
    return report;
}

MarkovOrderReport markov_order_test(const ProcessTensor& p, const Instrument& inst, double tolerance,
                                    MarkovMetric metric, const std::string& party) {
    MarkovOrderReport report;
    report.metric = metric;
    for (std::size_t x = 0; x < inst.size(); ++x) {
        const ConditionalProcess c = condition(p, party, inst[x], static_cast<int>(x));
        if (c.probability < kZeroProbability) {
            report.residuals.push_back(0.0);
            continue;
        }
        const auto [d_a, d_c] = first_rest_split(c);
        const Matrix rho = c.input_state();
        if (metric == MarkovMetric::kMutualInformation) {
            report.residuals.push_back(mutual_information(rho, d_a, d_c));
        } else {
            const std::vector<int> dims{d_a, d_c};
            const std::size_t a[] = {0}, cc[] = {1};
            const Matrix product = linalg::kron(linalg::partial_trace(rho, dims, a), linalg::partial_trace(rho, dims, cc));
            report.residuals.push_back(linalg::trace_norm(rho - product));
        }
    }
    report.blocked = std::all_of(report.residuals.begin(), report.residuals.end(),
                                 [&](double r) { return r < tolerance; });
    return report;
}

double confusion_probability(int n, double non_markovianity_bits) {
    if (n <= 0) throw ValidationError("confusion_probability needs n >= 1");
    if (non_markovianity_bits < 0.0) throw ValidationError("non-Markovianity must be nonnegative");
    return std::exp(-static_cast<double>(n) * non_markovianity_bits * std::numbers::ln2);
}

SurveyResult projective_survey(const ProcessTensor& p, double cutoff, std::size_t samples, std::uint64_t seed,
                               instruments::SamplingMeasure measure, unsigned threads) {
    if (!(cutoff > 0.0)) throw ValidationError("survey cutoff must be positive");
    if (samples < 100) throw ValidationError("survey needs at least 100 samples");
    std::vector<unsigned char> below(samples, 0);
    parallel_for(
        samples,
        [&](std::size_t k) {
            const Instrument inst = instruments::random_projective(derive_seed(seed, k), measure);
            below[k] = memory_strength(p, inst).max_event < cutoff ? 1 : 0;
        },
        threads);
    SurveyResult r;
    r.samples = samples;
    r.below_cutoff = std::accumulate(below.begin(), below.end(), std::size_t{0});
    r.fraction = static_cast<double>(r.below_cutoff) / static_cast<double>(samples);
    r.standard_error = std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(samples));
    return r;
}

}  // namespace proctensor::memory
