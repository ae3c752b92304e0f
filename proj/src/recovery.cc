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

#include "proctensor/recovery.h"

#include <cmath>
#include <ostream>
#include <random>

#include "proctensor/error.h"
#include "proctensor/parallel.h"

namespace proctensor::recovery {

ProcessTensor RecoveredProcess::as_process() const {
    return build_common_cause(state, input_dims, output_dims, /*check_state=*/false);
}

Matrix assemble_recovered_state(const std::vector<double>& weights,
                                const std::vector<std::vector<Matrix>>& marginals, const DualFrame& dual,
                                std::size_t party_index) {
    if (weights.size() != marginals.size() || weights.size() != dual.size()) {
        throw DimensionError("recovered state: weights, marginals and duals differ in count");
    }
    Matrix state;
    for (std::size_t x = 0; x < weights.size(); ++x) {
        std::vector<Matrix> factors = marginals[x];
        factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(party_index), dual[x]);
        const Matrix term = weights[x] * linalg::kron_all(factors);
        state = x == 0 ? term : Matrix(state + term);
    }
    return state;
}

RecoveredProcess recover(const ProcessTensor& p, const Instrument& inst, const std::string& party) {
    const auto split_layout = p.layout();
    RecoveredProcess r;
    for (const auto& leg : split_layout.legs()) {
        (leg.direction == LegDirection::kInput ? r.input_dims : r.output_dims).push_back(leg.dim);
    }
    if (r.output_dims.size() + 1 != r.input_dims.size()) throw DimensionError("recover needs a canonical process");
    const std::size_t in_leg = split_layout.index_of(party + "i");
    r.party_index = in_leg / 2;
    r.instrument = inst;
    r.dual = dual_frame(inst);

    for (std::size_t x = 0; x < inst.size(); ++x) {
        const ConditionalProcess c = condition(p, party, inst[x], static_cast<int>(x));
        r.probabilities.push_back(c.probability);
        std::vector<Matrix> margs;
        std::vector<int> dims;
        for (const auto& leg : c.layout.legs()) {
            if (leg.direction == LegDirection::kInput) dims.push_back(leg.dim);
        }
        if (c.probability > 1e-14) {
            const Matrix rho = c.input_state();
            for (std::size_t k = 0; k < dims.size(); ++k) {
                const std::size_t keep[] = {k};
                margs.push_back(linalg::partial_trace(rho, dims, keep));
            }
        } else {
            for (int d : dims) margs.push_back(Matrix::Identity(d, d) / static_cast<double>(d));
        }
        r.marginals.push_back(std::move(margs));
    }
    r.state = assemble_recovered_state(r.probabilities, r.marginals, r.dual, r.party_index);
    return r;
}

ObservableValidation validate_observable(const Observable& obs, const Instrument& inst, double tolerance) {
    ObservableValidation v;
    v.ok = true;
    for (const auto& t : obs.terms) {
        const double res = span_residual(t.bob, inst);
        v.residuals.push_back(res);
        v.ok = v.ok && res < tolerance;
    }
    return v;
}

double expectation(const ProcessTensor& p, const Observable& obs) {
    if (p.party_count() != 3) throw DimensionError("expectation expects a three-party process");
    const auto& layout = p.layout();
    double value = 0.0;
    for (const auto& t : obs.terms) {
        const std::vector<Matrix> chois{measure_and_discard_choi(t.alice, layout[1].dim),
                                        measure_and_discard_choi(t.bob, layout[3].dim),
                                        measure_and_discard_choi(t.charlie, 0)};
        const Matrix joint = linalg::kron_all(chois);
        if (joint.rows() != p.matrix().rows()) throw DimensionError("observable does not match the process legs");
        value += t.coefficient * (joint.array() * p.matrix().array()).sum().real();
    }
    return value;
}

double expectation(const RecoveredProcess& r, const Observable& obs) {
    const auto v = validate_observable(obs, r.instrument);
    if (!v.ok) throw SpanError("observable lies outside the span of the blocking instrument");
    return expectation(r.as_process(), obs);
}

std::size_t ScanGrid::size() const {
    auto n = [](const AngleRange& a) { return static_cast<std::size_t>(std::max(1, a.steps)); };
    return n(theta1) * n(phi) * n(theta2) * n(psi);
}

void ScanResult::write_csv(std::ostream& os) const {
    os << "theta1,phi,theta2,psi,true,recovered,abs_diff\n";
    const auto old = os.precision(17);
    for (const auto& p : points) {
        os << p.theta1 << ',' << p.phi << ',' << p.theta2 << ',' << p.psi << ',' << p.true_value << ','
           << p.recovered_value << ',' << p.abs_diff << '\n';
    }
    os.precision(old);
}

namespace {

Vector qubit_ket(double theta, double phase) {
    Vector v(2);
    v << std::cos(theta), std::polar(1.0, phase) * std::sin(theta);
    return v;
}

Vector qubit_ket_perp(double theta, double phase) {
    Vector v(2);
    v << std::sin(theta), -std::polar(1.0, -phase) * std::cos(theta);
    return v;
}

Matrix local_operator(double theta, double phase, ScanConvention convention) {
    const Matrix p = linalg::projector(qubit_ket(theta, phase));
    if (convention == ScanConvention::kProjector) return p;
    return p - linalg::projector(qubit_ket_perp(theta, phase));
}

Matrix ac_state_of(const ProcessTensor& p) {
    const auto& layout = p.layout();
    const Matrix reduced = linalg::partial_trace(p.matrix(), layout, {layout[0].label, layout.legs().back().label}).matrix;
    return reduced / p.trace_norm();
}

}  // namespace

ScanResult deviation_scan(const Matrix& true_ac, const Matrix& recovered_ac, const ScanGrid& grid,
                          ScanConvention convention, unsigned threads) {
    if (true_ac.rows() != 4 || recovered_ac.rows() != 4) throw DimensionError("deviation scan needs two-qubit A^i C^i states");
    const std::size_t n = grid.size();
    if (n == 0) throw ValidationError("empty scan grid");
    const int s2 = std::max(1, grid.phi.steps);
    const int s3 = std::max(1, grid.theta2.steps), s4 = std::max(1, grid.psi.steps);
    ScanResult result;
    result.points.resize(n);
    parallel_for(
        n,
        [&](std::size_t idx) {
            std::size_t rem = idx;
            const int i4 = static_cast<int>(rem % s4);
            rem /= s4;
            const int i3 = static_cast<int>(rem % s3);
            rem /= s3;
            const int i2 = static_cast<int>(rem % s2);
            const int i1 = static_cast<int>(rem / s2);
            ScanPoint pt{grid.theta1.at(i1), grid.phi.at(i2), grid.theta2.at(i3), grid.psi.at(i4), 0, 0, 0};
            const Matrix op = linalg::kron(local_operator(pt.theta1, pt.phi, convention),
                                           local_operator(pt.theta2, pt.psi, convention));
            pt.true_value = (op * true_ac).trace().real();
            pt.recovered_value = (op * recovered_ac).trace().real();
            pt.abs_diff = std::abs(pt.true_value - pt.recovered_value);
            result.points[idx] = pt;
        },
        threads);
    for (std::size_t k = 0; k < n; ++k) {
        if (result.points[k].abs_diff > result.max_abs_diff) {
            result.max_abs_diff = result.points[k].abs_diff;
            result.argmax = k;
        }
    }
    return result;
}

ScanResult deviation_scan(const ProcessTensor& true_process, const RecoveredProcess& recovered, const ScanGrid& grid,
                          ScanConvention convention, unsigned threads) {
    // Bob's non-selective operation must be reproducible by the recovered process.
    const double res = span_residual(Matrix::Identity(recovered.instrument.dim(), recovered.instrument.dim()),
                                     recovered.instrument);
    if (res > tol::kSpan) throw SpanError("identity is not in the span of the blocking instrument");
    return deviation_scan(ac_state_of(true_process), ac_state_of(recovered.as_process()), grid, convention, threads);
}

namespace {

/// Applies f to leg k: rho -> (1 (x) U) rho (1 (x) U)^dagger with U on leg k.
Matrix apply_local_unitary(const Matrix& rho, const std::vector<int>& dims, std::size_t k, const Matrix& u) {
    std::vector<Matrix> factors;
    for (std::size_t j = 0; j < dims.size(); ++j) factors.push_back(j == k ? u : linalg::identity(dims[j]));
    const Matrix full = linalg::kron_all(factors);
    return full * rho * full.adjoint();
}

Matrix depolarize_leg(const Matrix& rho, const std::vector<int>& dims, std::size_t k, double strength) {
    if (strength == 0.0) return rho;
    std::vector<std::size_t> keep;
    std::vector<std::size_t> order;
    std::vector<int> moved_dims;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (j != k) {
            keep.push_back(j);
            moved_dims.push_back(dims[j]);
        }
    }
    moved_dims.push_back(dims[k]);
    const Matrix rest = linalg::partial_trace(rho, dims, keep);
    const Matrix moved = linalg::kron(rest, linalg::identity(dims[k]) / static_cast<double>(dims[k]));
    // moved has leg k last; put it back at position k.
    order.resize(dims.size());
    for (std::size_t j = 0, m = 0; j < dims.size(); ++j) order[j] = (j == k) ? dims.size() - 1 : m++;
    const Matrix replaced = linalg::permute_legs(moved, moved_dims, order);
    return (1.0 - strength) * rho + strength * replaced;
}

Matrix random_unit_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(normal(rng), normal(rng));
    Matrix h = linalg::hermitian_part(g);
    return h / h.norm();
}

}  // namespace

Matrix noisy_replay(const Matrix& gamma, const std::vector<int>& dims, const NoiseModel& noise, std::uint64_t seed) {
    if (noise.depolarizing < 0.0 || noise.depolarizing > 1.0) throw ValidationError("depolarizing strength outside [0, 1]");
    linalg::require_state(gamma, "noisy_replay input");
    std::mt19937_64 rng(seed);
    Matrix rho = gamma;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (noise.misalignment != 0.0) {
            const Matrix h = random_unit_hermitian(dims[k], rng);
            const auto es = linalg::hermitian_eig(h);
            Vector phases(es.values.size());
            for (Eigen::Index j = 0; j < phases.size(); ++j) phases[j] = std::polar(1.0, noise.misalignment * es.values[j]);
            const Matrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
            rho = apply_local_unitary(rho, dims, k, u);
        }
        rho = depolarize_leg(rho, dims, k, noise.depolarizing);
    }
    return linalg::hermitian_part(rho);
}

}  // namespace proctensor::recovery
