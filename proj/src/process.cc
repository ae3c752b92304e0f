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

#include "proctensor/process.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "proctensor/error.h"

namespace proctensor {

namespace {

std::string party_of(const Leg& leg) { return leg.label.substr(0, leg.label.size() - 1); }

/// Contracts operator x (acting on the legs in `legs`, layout order) against
/// m: result = tr_legs[(1 (x) x) m] on the remaining legs.
Matrix contract_legs(const Matrix& m, const LegLayout& layout, const std::vector<std::size_t>& legs,
                     const Matrix& x) {
    const auto dims = layout.dims();
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (std::find(legs.begin(), legs.end(), k) == legs.end()) order.push_back(k);
    }
    int d_rest = 1;
    for (auto k : order) d_rest *= dims[k];
    int d_party = 1;
    for (auto k : legs) {
        order.push_back(k);
        d_party *= dims[k];
    }
    if (x.rows() != d_party || x.cols() != d_party) {
        throw DimensionError("operator dimension does not match the contracted legs");
    }
    const Matrix moved = linalg::permute_legs(m, dims, order);
    Matrix out = Matrix::Zero(d_rest, d_rest);
    for (int r = 0; r < d_rest; ++r) {
        for (int c = 0; c < d_rest; ++c) {
            // tr[x * block(r,c)] where block(r,c)_{b,a} = moved(r*dp + b, c*dp + a)
            const auto block = moved.block(r * d_party, c * d_party, d_party, d_party);
            out(r, c) = (x.transpose().array() * block.array()).sum();
        }
    }
    return out;
}

/// state on the input legs of `layout` (layout order) tensored with identity
/// on its output legs, returned in layout order.
Matrix embed_with_identities(const Matrix& state, const LegLayout& layout) {
    std::vector<std::size_t> inputs, outputs;
    for (std::size_t k = 0; k < layout.size(); ++k) {
        (layout[k].direction == LegDirection::kInput ? inputs : outputs).push_back(k);
    }
    int d_out = 1;
    for (auto k : outputs) d_out *= layout[k].dim;
    const Matrix full = linalg::kron(state, linalg::identity(d_out));
    // full is ordered inputs..., outputs...; find where each layout leg sits.
    std::vector<std::size_t> source_order = inputs;
    source_order.insert(source_order.end(), outputs.begin(), outputs.end());
    std::vector<int> src_dims;
    for (auto k : source_order) src_dims.push_back(layout[k].dim);
    std::vector<std::size_t> order(layout.size());
    for (std::size_t pos = 0; pos < source_order.size(); ++pos) order[source_order[pos]] = pos;
    return linalg::permute_legs(full, src_dims, order);
}

struct PartySplit {
    std::vector<int> inputs;
    std::vector<int> outputs;
};

std::optional<PartySplit> canonical_split(const LegLayout& layout) {
    PartySplit split;
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const auto expected = (k % 2 == 0) ? LegDirection::kInput : LegDirection::kOutput;
        const std::string label = ProcessTensor::party_label(k / 2) + (k % 2 == 0 ? "i" : "o");
        if (layout[k].direction != expected || layout[k].label != label) return std::nullopt;
        (k % 2 == 0 ? split.inputs : split.outputs).push_back(layout[k].dim);
    }
    if (layout.size() % 2 == 0) return std::nullopt;
    return split;
}

}  // namespace

ProcessTensor::ProcessTensor(Matrix matrix, LegLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (matrix_.rows() != layout_.total_dim() || matrix_.cols() != layout_.total_dim()) {
        throw DimensionError("process matrix side does not match the leg layout");
    }
    if (!linalg::is_hermitian(matrix_)) throw ValidationError("process matrix is not Hermitian");
    for (const auto& leg : layout_.legs()) {
        const char tail = leg.label.empty() ? '\0' : leg.label.back();
        if (leg.label.size() < 2 || tail != (leg.direction == LegDirection::kInput ? 'i' : 'o')) {
            throw DimensionError("leg label '" + leg.label + "' must end in 'i' or 'o' matching its direction");
        }
    }
}

std::string ProcessTensor::party_label(std::size_t k) {
    if (k < 26) return std::string(1, static_cast<char>('A' + k));
    return "P" + std::to_string(k);
}

std::size_t ProcessTensor::party_count() const {
    std::vector<std::string> seen;
    for (const auto& leg : layout_.legs()) {
        const auto p = party_of(leg);
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
    }
    return seen.size();
}

LegLayout canonical_layout(const std::vector<int>& input_dims, const std::vector<int>& output_dims) {
    if (input_dims.empty() || output_dims.size() + 1 != input_dims.size()) {
        throw DimensionError("need one more input leg than output legs");
    }
    std::vector<Leg> legs;
    for (std::size_t k = 0; k < input_dims.size(); ++k) {
        legs.push_back({ProcessTensor::party_label(k) + "i", input_dims[k], LegDirection::kInput});
        if (k < output_dims.size()) {
            legs.push_back({ProcessTensor::party_label(k) + "o", output_dims[k], LegDirection::kOutput});
        }
    }
    return LegLayout(std::move(legs));
}

ProcessTensor build_common_cause(const Matrix& gamma, const std::vector<int>& input_dims,
                                 const std::vector<int>& output_dims, bool check_state) {
    LegLayout layout = canonical_layout(input_dims, output_dims);
    int d_in = 1;
    for (int d : input_dims) d_in *= d;
    if (gamma.rows() != d_in || gamma.cols() != d_in) {
        throw DimensionError("initial state does not match the input leg dimensions");
    }
    if (check_state) linalg::require_state(gamma, "common-cause state");
    Matrix full = embed_with_identities(gamma, layout);
    ProcessTensor p(std::move(full), std::move(layout));
    p.source_ = CommonCauseSource{gamma, input_dims, output_dims};
    return p;
}

ProcessValidation validate(const ProcessTensor& p) {
    ProcessValidation v;
    v.hermiticity = linalg::hermiticity_error(p.matrix());
    v.min_eigenvalue = linalg::hermitian_eig(p.matrix()).values.minCoeff();
    v.trace_error = std::abs(p.trace() - p.trace_norm());
    v.ok = v.hermiticity <= tol::kHermitian && v.min_eigenvalue >= -tol::kPositivity && v.trace_error <= tol::kTrace;
    return v;
}

CausalityReport check_causality(const ProcessTensor& p, double tolerance) {
    const auto split = canonical_split(p.layout());
    if (!split) throw DimensionError("causality check needs the canonical alternating layout");
    CausalityReport report;
    Matrix upsilon = p.matrix();
    std::vector<int> dims = p.layout().dims();
    std::vector<std::string> labels = p.layout().labels();
    while (!dims.empty()) {
        // Last leg is an input: trace it out.
        std::vector<std::size_t> keep(dims.size() - 1);
        std::iota(keep.begin(), keep.end(), 0);
        CausalityLevel level;
        level.traced_input = labels.back();
        Matrix reduced = linalg::partial_trace(upsilon, dims, keep);
        dims.pop_back();
        labels.pop_back();
        if (dims.empty()) {
            level.residual = std::abs(reduced(0, 0) - Complex(1.0, 0.0));
            report.levels.push_back(level);
            break;
        }
        // Now the last leg is the preceding output; the reduced operator must be
        // the identity on it times the earlier process.
        const int d_o = dims.back();
        level.freed_output = labels.back();
        std::vector<std::size_t> keep_earlier(dims.size() - 1);
        std::iota(keep_earlier.begin(), keep_earlier.end(), 0);
        Matrix earlier = linalg::partial_trace(reduced, dims, keep_earlier) / static_cast<double>(d_o);
        level.residual = (reduced - linalg::kron(earlier, linalg::identity(d_o))).norm();
        report.levels.push_back(level);
        upsilon = std::move(earlier);
        dims.pop_back();
        labels.pop_back();
    }
    report.ok = std::all_of(report.levels.begin(), report.levels.end(),
                            [&](const CausalityLevel& l) { return l.residual < tolerance; });
    return report;
}

Matrix measure_and_discard_choi(const Matrix& effect, int d_out) {
    if (d_out <= 0) return effect.transpose();
    return linalg::kron(effect.transpose(), linalg::identity(d_out) / static_cast<double>(d_out));
}

double born_rule(const ProcessTensor& p, const std::vector<Matrix>& ops) {
    if (ops.size() != p.party_count()) throw DimensionError("born_rule needs one operator per party");
    const Matrix joint = linalg::kron_all(ops);
    if (joint.rows() != p.matrix().rows()) throw DimensionError("born_rule: operator dimensions do not match");
    const Complex value = (joint.array() * p.matrix().array()).sum();
    if (std::abs(value.imag()) > tol::kHermitian) {
        std::ostringstream os;
        os << "born_rule: probability has imaginary part " << value.imag();
        throw ValidationError(os.str());
    }
    if (value.real() < -tol::kPositivity || value.real() > 1.0 + tol::kPositivity) {
        std::ostringstream os;
        os << "born_rule: probability " << value.real() << " outside [0, 1]";
        throw ValidationError(os.str());
    }
    return value.real();
}

Matrix ConditionalProcess::input_state() const {
    std::set<std::string> inputs;
    for (const auto& leg : layout.legs()) {
        if (leg.direction == LegDirection::kInput) inputs.insert(leg.label);
    }
    const Matrix reduced = linalg::partial_trace(matrix, layout, inputs).matrix;
    return reduced / reduced.trace().real();
}

ConditionalProcess condition(const ProcessTensor& p, const std::string& party, const Matrix& effect,
                             int event_index, ContractionPath path) {
    const auto in_idx = p.layout().index_of(party + "i");
    const auto out_idx = p.layout().find(party + "o");
    const int d_in = p.layout()[in_idx].dim;
    if (effect.rows() != d_in || effect.cols() != d_in) throw DimensionError("effect does not act on " + party + "i");
    if (!linalg::is_hermitian(effect)) throw ValidationError("effect is not Hermitian");
    const RealVector ev = linalg::hermitian_eig(effect).values;
    if (ev.minCoeff() < -tol::kPositivity || ev.maxCoeff() > 1.0 + tol::kPositivity) {
        throw ValidationError("effect eigenvalues outside [0, 1]");
    }

    std::vector<std::size_t> party_legs{in_idx};
    if (out_idx) party_legs.push_back(*out_idx);
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < p.layout().size(); ++k) {
        if (std::find(party_legs.begin(), party_legs.end(), k) == party_legs.end()) rest.push_back(k);
    }
    ConditionalProcess out;
    out.layout = p.layout().subset(rest);
    out.event_index = event_index;

    const bool fast = path == ContractionPath::kCommonCause ||
                      (path == ContractionPath::kAuto && p.source().has_value());
    if (fast) {
        if (!p.source()) throw Error("common-cause contraction requested for a general process");
        const auto& src = *p.source();
        std::vector<Leg> in_legs;
        std::size_t party_pos = 0;
        for (std::size_t k = 0; k < src.input_dims.size(); ++k) {
            const std::string label = ProcessTensor::party_label(k) + "i";
            if (label == party + "i") party_pos = k;
            in_legs.push_back({label, src.input_dims[k], LegDirection::kInput});
        }
        const Matrix state = contract_legs(src.gamma, LegLayout(in_legs), {party_pos}, effect);
        out.matrix = embed_with_identities(state, out.layout);
    } else {
        Matrix x = effect;
        if (out_idx) {
            const int d_out = p.layout()[*out_idx].dim;
            x = linalg::kron(effect, linalg::identity(d_out) / static_cast<double>(d_out));
        }
        out.matrix = contract_legs(p.matrix(), p.layout(), party_legs, x);
    }
    out.probability = out.matrix.trace().real() / out.layout.output_dim_product();
    return out;
}

std::vector<Matrix> input_marginals(const ProcessTensor& p) {
    std::vector<Matrix> out;
    const auto dims = p.layout().dims();
    for (std::size_t k = 0; k < p.layout().size(); ++k) {
        if (p.layout()[k].direction != LegDirection::kInput) continue;
        const std::size_t keep[] = {k};
        Matrix m = linalg::partial_trace(p.matrix(), dims, keep);
        out.push_back(m / m.trace().real());
    }
    return out;
}

ProcessTensor markov_product(const ProcessTensor& p) {
    const auto marginals = input_marginals(p);
    const Matrix gamma = linalg::kron_all(marginals);
    if (const auto split = canonical_split(p.layout())) {
        return build_common_cause(gamma, split->inputs, split->outputs);
    }
    return ProcessTensor(embed_with_identities(gamma, p.layout()) * (p.trace() / p.trace_norm()), p.layout());
}

CpDivisibilityReport cp_divisibility_check(const ProcessTensor& p, double tolerance) {
    const auto& layout = p.layout();
    const auto dims = layout.dims();
    const double norm = p.trace() / p.trace_norm();
    std::vector<Matrix> marginal_of(layout.size());
    {
        const auto marg = input_marginals(p);
        std::size_t m = 0;
        for (std::size_t k = 0; k < layout.size(); ++k) {
            if (layout[k].direction == LegDirection::kInput) marginal_of[k] = marg[m++];
        }
    }
    auto two_point = [&](std::size_t o, std::size_t i) {
        const std::size_t keep[] = {o, i};
        const double other_outputs = layout.output_dim_product() / static_cast<double>(layout[o].dim);
        return Matrix(linalg::partial_trace(p.matrix(), dims, keep) / (other_outputs * norm));
    };

    CpDivisibilityReport report;
    for (std::size_t o = 0; o < layout.size(); ++o) {
        if (layout[o].direction != LegDirection::kOutput) continue;
        for (std::size_t i = o + 1; i < layout.size(); ++i) {
            if (layout[i].direction != LegDirection::kInput) continue;
            TwoPointMap map{layout[o].label, layout[i].label, two_point(o, i), 0.0};
            const Matrix expected = linalg::kron(linalg::identity(layout[o].dim), marginal_of[i]);
            map.residual = (map.choi - expected).cwiseAbs().maxCoeff();
            report.maps.push_back(std::move(map));
        }
    }

    // Compose consecutive maps X^o -> Y^i, Y^o -> Z^i (Bob's input fed to his
    // output unchanged) and compare with the direct X^o -> Z^i map.
    for (std::size_t k = 1; k + 2 < layout.size(); k += 2) {
        const std::size_t xo = k, yi = k + 1, yo = k + 2;
        if (yo + 1 >= layout.size()) break;
        const std::size_t zi = yo + 1;
        if (layout[xo].direction != LegDirection::kOutput || layout[yi].direction != LegDirection::kInput ||
            layout[yo].direction != LegDirection::kOutput || layout[zi].direction != LegDirection::kInput ||
            dims[yi] != dims[yo]) {
            continue;
        }
        const Matrix j1 = two_point(xo, yi);
        const Matrix j2 = two_point(yo, zi);
        const int dx = dims[xo], dy = dims[yi], dz = dims[zi];
        Matrix composed = Matrix::Zero(dx * dz, dx * dz);
        for (int i = 0; i < dx; ++i)
            for (int j = 0; j < dx; ++j)
                for (int c = 0; c < dz; ++c)
                    for (int d = 0; d < dz; ++d) {
                        Complex acc = 0.0;
                        for (int a = 0; a < dy; ++a)
                            for (int b = 0; b < dy; ++b) acc += j1(i * dy + a, j * dy + b) * j2(a * dz + c, b * dz + d);
                        composed(i * dz + c, j * dz + d) = acc;
                    }
        const Matrix direct = two_point(xo, zi);
        report.composition_residual =
            std::max(report.composition_residual, (composed - direct).cwiseAbs().maxCoeff());
    }
    report.ok = report.composition_residual < tolerance &&
                std::all_of(report.maps.begin(), report.maps.end(),
                            [&](const TwoPointMap& m) { return m.residual < tolerance; });
    return report;
}

}  // namespace proctensor
