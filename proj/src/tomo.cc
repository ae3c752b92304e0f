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

#include "proctensor/tomo.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "proctensor/error.h"
#include "proctensor/memory.h"
#include "proctensor/parallel.h"

namespace proctensor::tomo {

std::vector<std::string> basis_labels(int dim) {
    if (dim == 2) return {"X", "Y", "Z"};
    if (dim == 3) return {"M0", "M1", "M2", "M3"};
    throw DimensionError("tomography supports qubit and qutrit legs only");
}

Matrix basis_vectors(int dim, const std::string& label) {
    const double s2 = std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    Matrix b(dim, dim);
    if (dim == 2) {
        if (label == "X") {
            b << 1 / s2, 1 / s2, 1 / s2, -1 / s2;
        } else if (label == "Y") {
            b << 1 / s2, 1 / s2, i / s2, -i / s2;
        } else if (label == "Z") {
            b << 1, 0, 0, 1;
        } else {
            throw ValidationError("unknown qubit basis '" + label + "'");
        }
        return b;
    }
    if (dim == 3) {
        if (label == "M0") return Matrix::Identity(3, 3);
        int m = 0;
        if (label == "M1") m = 0;
        else if (label == "M2") m = 1;
        else if (label == "M3") m = 2;
        else throw ValidationError("unknown qutrit basis '" + label + "'");
        // |e_k> = sum_j w^{m j^2 + k j} |j> / sqrt3, w = exp(2 pi i / 3)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                b(j, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi * ((m * j * j + k * j) % 3) / 3.0);
        return b;
    }
    throw DimensionError("tomography supports qubit and qutrit legs only");
}

std::vector<std::vector<std::string>> all_settings(const std::vector<int>& dims) {
    std::vector<std::vector<std::string>> out{{}};
    for (int d : dims) {
        std::vector<std::vector<std::string>> next;
        for (const auto& prefix : out)
            for (const auto& label : basis_labels(d)) {
                auto s = prefix;
                s.push_back(label);
                next.push_back(std::move(s));
            }
        out = std::move(next);
    }
    return out;
}

namespace {

/// Columns are the product basis vectors of one setting.
Matrix setting_vectors(const std::vector<int>& dims, const std::vector<std::string>& setting) {
    std::vector<Matrix> factors;
    for (std::size_t k = 0; k < dims.size(); ++k) factors.push_back(basis_vectors(dims[k], setting[k]));
    return linalg::kron_all(factors);
}

int total_dim(const std::vector<int>& dims) {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
}

std::vector<std::uint64_t> multinomial(std::uint64_t n, const std::vector<double>& p, std::mt19937_64& rng) {
    std::vector<std::uint64_t> out(p.size(), 0);
    double mass = 1.0;
    for (std::size_t k = 0; k + 1 < p.size() && n > 0; ++k) {
        const double q = mass > 0.0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(n, q);
        out[k] = draw(rng);
        n -= out[k];
        mass -= p[k];
    }
    if (!p.empty()) out.back() += n;
    return out;
}

std::vector<double> clean_probabilities(const RealVector& raw) {
    std::vector<double> p(raw.size());
    double sum = 0.0;
    for (Eigen::Index k = 0; k < raw.size(); ++k) sum += (p[k] = std::max(0.0, raw[k]));
    for (auto& x : p) x /= sum;
    return p;
}

}  // namespace

std::uint64_t CountsTable::total_shots() const {
    std::uint64_t n = 0;
    for (auto s : shots) n += s;
    return n;
}

void CountsTable::write_csv(std::ostream& os) const {
    os << "setting,outcome,count\n";
    for (std::size_t s = 0; s < settings.size(); ++s) {
        std::string label;
        for (std::size_t k = 0; k < settings[s].size(); ++k) label += (k ? "." : "") + settings[s][k];
        for (std::size_t o = 0; o < counts[s].size(); ++o) {
            std::string digits(dims.size(), '0');
            std::size_t rem = o;
            for (std::size_t k = dims.size(); k-- > 0;) {
                digits[k] = static_cast<char>('0' + rem % dims[k]);
                rem /= dims[k];
            }
            os << label << ',' << digits << ',' << counts[s][o] << '\n';
        }
    }
}

CountsTable CountsTable::read_csv(std::istream& is, const std::vector<int>& dims) {
    CountsTable t;
    t.dims = dims;
    const int d = total_dim(dims);
    std::map<std::string, std::size_t> index;
    std::string line;
    if (!std::getline(is, line) || line.rfind("setting,outcome,count", 0) != 0) {
        throw ValidationError("counts CSV must start with the header setting,outcome,count");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string setting, outcome, count;
        if (!std::getline(ss, setting, ',') || !std::getline(ss, outcome, ',') || !std::getline(ss, count)) {
            throw ValidationError("malformed counts line '" + line + "'");
        }
        if (!index.count(setting)) {
            index[setting] = t.settings.size();
            std::vector<std::string> labels;
            std::stringstream ls(setting);
            std::string part;
            while (std::getline(ls, part, '.')) labels.push_back(part);
            if (labels.size() != dims.size()) throw ValidationError("setting '" + setting + "' does not match the legs");
            t.settings.push_back(labels);
            t.counts.emplace_back(d, 0);
            t.shots.push_back(0);
        }
        if (outcome.size() != dims.size()) throw ValidationError("outcome '" + outcome + "' does not match the legs");
        std::size_t o = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const int digit = outcome[k] - '0';
            if (digit < 0 || digit >= dims[k]) throw ValidationError("outcome digit out of range in '" + outcome + "'");
            o = o * dims[k] + digit;
        }
        const auto s = index[setting];
        const std::uint64_t c = std::stoull(count);
        t.counts[s][o] += c;
        t.shots[s] += c;
    }
    return t;
}

std::vector<std::vector<double>> born_probabilities(const Matrix& rho, const std::vector<int>& dims) {
    std::vector<std::vector<double>> out;
    for (const auto& setting : all_settings(dims)) {
        const Matrix b = setting_vectors(dims, setting);
        const RealVector diag = (b.adjoint() * rho * b).diagonal().real();
        out.push_back(clean_probabilities(diag));
    }
    return out;
}

CountsTable simulate_counts(const Matrix& rho, const std::vector<int>& dims, std::uint64_t total_shots,
                            std::uint64_t seed) {
    if (rho.rows() != total_dim(dims)) throw DimensionError("state does not match the leg dimensions");
    linalg::require_state(rho, "simulate_counts");
    CountsTable t;
    t.dims = dims;
    t.settings = all_settings(dims);
    const auto probs = born_probabilities(rho, dims);
    const std::uint64_t n = t.settings.size();
    for (std::uint64_t s = 0; s < n; ++s) {
        const std::uint64_t shots = total_shots / n + (s < total_shots % n ? 1 : 0);
        std::mt19937_64 rng(derive_seed(seed, s));
        t.counts.push_back(multinomial(shots, probs[s], rng));
        t.shots.push_back(shots);
    }
    return t;
}

RealVector project_to_simplex(const RealVector& v) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, shift = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) shift = t;
    }
    return (v.array() - shift).max(0.0).matrix();
}

Reconstructor::Reconstructor(std::vector<int> dims) : dims_(std::move(dims)), settings_(all_settings(dims_)) {
    const int d = total_dim(dims_);
    design_.resize(static_cast<Eigen::Index>(settings_.size()) * d, d * d);
    Eigen::Index row = 0;
    for (const auto& setting : settings_) {
        const Matrix b = setting_vectors(dims_, setting);
        for (int o = 0; o < d; ++o, ++row) {
            // <b|rho|b> = sum_ij conj(b_i) b_j rho_ij, vec index i + j d
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) design_(row, i + j * d) = std::conj(b(i, o)) * b(j, o);
        }
    }
    solver_.setThreshold(1e-10);
    solver_.compute(design_);
    if (solver_.rank() != d * d) {
        throw DimensionError("measurement settings are not informationally complete (rank " +
                             std::to_string(solver_.rank()) + " of " + std::to_string(d * d) + ")");
    }
}

Matrix Reconstructor::linear_inversion(const std::vector<std::vector<double>>& freqs) const {
    const int d = total_dim(dims_);
    if (freqs.size() != settings_.size()) throw DimensionError("frequency table does not match the settings");
    Vector f(design_.rows());
    Eigen::Index row = 0;
    for (const auto& s : freqs) {
        if (static_cast<int>(s.size()) != d) throw DimensionError("frequency row has the wrong outcome count");
        for (double x : s) f[row++] = x;
    }
    const Vector x = solver_.solve(f);
    return linalg::hermitian_part(x.reshaped(d, d));
}

Matrix Reconstructor::from_frequencies(const std::vector<std::vector<double>>& freqs) const {
    const Matrix raw = linear_inversion(freqs);
    const auto es = linalg::hermitian_eig(raw);
    const RealVector spectrum = project_to_simplex(es.values);
    return linalg::hermitian_part(es.vectors * spectrum.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

Matrix Reconstructor::from_counts(const CountsTable& counts) const {
    if (counts.dims != dims_) throw DimensionError("counts table has different legs");
    // Match the table's settings to ours by label.
    std::map<std::vector<std::string>, std::size_t> where;
    for (std::size_t s = 0; s < counts.settings.size(); ++s) where[counts.settings[s]] = s;
    std::vector<std::vector<double>> freqs;
    for (const auto& setting : settings_) {
        const auto it = where.find(setting);
        if (it == where.end()) throw DimensionError("counts table lacks a setting; not informationally complete");
        const auto& c = counts.counts[it->second];
        const double n = static_cast<double>(counts.shots[it->second]);
        if (n <= 0) throw DimensionError("setting without shots; not informationally complete");
        std::vector<double> f;
        for (auto x : c) f.push_back(static_cast<double>(x) / n);
        freqs.push_back(std::move(f));
    }
    return from_frequencies(freqs);
}

Matrix reconstruct(const CountsTable& counts) { return Reconstructor(counts.dims).from_counts(counts); }

BootstrapResult bootstrap(const CountsTable& counts, std::size_t resamples, const Statistic& statistic,
                          std::uint64_t seed, unsigned threads) {
    if (resamples < 2) throw ValidationError("bootstrap needs at least two resamples");
    const Reconstructor rec(counts.dims);
    std::vector<std::vector<double>> observed;
    for (std::size_t s = 0; s < counts.settings.size(); ++s) {
        std::vector<double> f;
        for (auto x : counts.counts[s]) f.push_back(static_cast<double>(x) / static_cast<double>(counts.shots[s]));
        observed.push_back(std::move(f));
    }
    BootstrapResult out;
    out.values.resize(resamples);
    parallel_for(
        resamples,
        [&](std::size_t r) {
            std::mt19937_64 rng(derive_seed(seed, r));
            CountsTable sample = counts;
            for (std::size_t s = 0; s < counts.settings.size(); ++s) {
                sample.counts[s] = multinomial(counts.shots[s], observed[s], rng);
            }
            out.values[r] = statistic(rec.from_counts(sample));
        },
        threads);
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / static_cast<double>(resamples);
    double var = 0.0;
    for (double v : out.values) var += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(var / static_cast<double>(resamples - 1));
    return out;
}

Statistic statistic_by_name(const std::string& name, const std::vector<int>& dims) {
    if (name == "trace") return [](const Matrix& rho) { return rho.trace().real(); };
    if (name == "purity") return [](const Matrix& rho) { return (rho * rho).trace().real(); };
    if (name == "total_correlation" || name == "non_markovianity") {
        return [dims](const Matrix& rho) { return memory::total_correlation(rho, dims); };
    }
    throw ValidationError("unknown statistic '" + name + "' (trace, purity, total_correlation)");
}

}  // namespace proctensor::tomo
