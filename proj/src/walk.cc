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

#include "proctensor/walk.h"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "proctensor/error.h"
#include "proctensor/io.h"

namespace proctensor::walk {

namespace {

constexpr double kNegligible = 1e-14;

bool is_identity(const CoinMatrix& c) { return (c - CoinMatrix::Identity()).cwiseAbs().maxCoeff() < kNegligible; }

}  // namespace

WalkState WalkState::at_origin(const Coin& coin) {
    const double n = coin.norm();
    if (n == 0.0) throw ValidationError("initial coin state is zero");
    WalkState s;
    s.amps_[0] = coin / n;
    return s;
}

Coin WalkState::at(int x) const {
    const auto it = amps_.find(x);
    return it == amps_.end() ? Coin::Zero() : it->second;
}

double WalkState::norm_squared() const {
    double n = 0.0;
    for (const auto& [x, c] : amps_) n += c.squaredNorm();
    return n;
}

bool WalkState::occupied(int x) const {
    const auto it = amps_.find(x);
    return it != amps_.end() && it->second.cwiseAbs().maxCoeff() > kNegligible;
}

WalkState translate(const WalkState& s) {
    WalkState out;
    for (const auto& [x, c] : s.amplitudes()) {
        Coin left = out.at(x - 1), right = out.at(x + 1);
        left[0] += c[0];
        right[1] += c[1];
        out.set(x - 1, left);
        out.set(x + 1, right);
    }
    return out;
}

CoinMatrix bit_flip() {
    CoinMatrix x;
    x << 0, 1, 1, 0;
    return x;
}

double unitarity_error(const CoinMatrix& c) {
    return (c.adjoint() * c - CoinMatrix::Identity()).cwiseAbs().maxCoeff();
}

WalkState apply_coins(const WalkState& s, const std::map<int, CoinMatrix>& coins) {
    for (const auto& [x, c] : coins) {
        if (unitarity_error(c) > tol::kUnitary) {
            std::ostringstream os;
            os << "coin at x=" << x << " is not unitary (max |C^dagger C - 1| = " << unitarity_error(c) << ")";
            throw ValidationError(os.str());
        }
    }
    WalkState out = s;
    for (const auto& [x, c] : coins) {
        if (s.amplitudes().count(x)) out.set(x, c * s.at(x));
    }
    return out;
}

double WalkCircuit::max_unitarity_error() const {
    double err = 0.0;
    for (const auto& step : steps)
        for (const auto& [x, c] : step.coins) err = std::max(err, unitarity_error(c));
    return err;
}

void WalkCircuit::require_unitary() const {
    for (std::size_t k = 0; k < steps.size(); ++k)
        for (const auto& [x, c] : steps[k].coins) {
            const double err = unitarity_error(c);
            if (err > tol::kUnitary) {
                std::ostringstream os;
                os << "circuit '" << name << "': coin at step " << k + 1 << ", x=" << x
                   << " is not unitary (max |C^dagger C - 1| = " << err << ")";
                throw ValidationError(os.str());
            }
        }
}

WalkCircuit protocol_circuit(const std::string& name, const std::vector<std::pair<CoinMatrix, CoinMatrix>>& rounds,
                             std::vector<int> ports) {
    WalkCircuit c{name, {}, std::move(ports)};
    for (const auto& [c1, c2] : rounds) {
        WalkStep a, b;
        a.coins[0] = c1;
        b.coins[1] = c2;
        b.coins[-1] = bit_flip();
        b.labels[-1] = "bitflip";
        c.steps.push_back(std::move(a));
        c.steps.push_back(std::move(b));
    }
    return c;
}

WalkCircuit theta_circuit() {
    const double r2 = std::numbers::sqrt2;
    const CoinMatrix id = CoinMatrix::Identity();
    CoinMatrix c12, c21;
    c12 << r2, 1, 1, -r2;
    c12 /= 1.0 + r2;
    const double q = std::pow(2.0, 0.25);
    const double off = std::sqrt((r2 - 1.0) / r2);
    c21 << -q, off, off, q;
    return protocol_circuit("theta", {{id, c12}, {c21, id}, {id, id}});
}

WalkCircuit tetra_circuit() {
    const double r2 = std::numbers::sqrt2, r3 = std::numbers::sqrt3, pi = std::numbers::pi;
    const Complex e4 = std::polar(1.0, pi / 4.0);
    CoinMatrix c11, c12, c21, c22, c31;
    c11 << 1.0 + r3, r2, r2 * e4, -(1.0 + r3) * e4;
    c11 /= std::sqrt(6.0 + 2.0 * r3);
    c12 << -1, 1, 1, 1;
    c12 /= r2;
    c21 << 1, 1, 1, -1;
    c21 /= r2;
    c22 << r2, 1, 1, -r2;
    c22 /= r3;
    c31 << std::polar(1.0, -pi / 3.0), std::polar(1.0, pi / 6.0), std::polar(1.0, pi / 3.0), std::polar(1.0, -pi / 6.0);
    c31 /= r2;
    return protocol_circuit("tetra", {{c11, c12}, {c21, c22}, {c31, CoinMatrix::Identity()}}, {2, 1, 0, 3});
}

WalkCircuit identity_circuit() {
    WalkCircuit c{"identity", {WalkStep{{{0, CoinMatrix::Identity()}}, {}}}, {1, 0}};
    return c;
}

WalkCircuit circuit_by_name(const std::string& name) {
    if (name == "theta") return theta_circuit();
    if (name == "tetra") return tetra_circuit();
    if (name == "identity") return identity_circuit();
    throw ValidationError("unknown circuit '" + name + "'");
}

WalkRun run_protocol(const Coin& initial, const WalkCircuit& circuit) {
    circuit.require_unitary();
    WalkRun run;
    WalkState s = WalkState::at_origin(initial);
    for (std::size_t k = 0; k < circuit.steps.size(); ++k) {
        for (const auto& [x, c] : circuit.steps[k].coins) {
            if (!is_identity(c) && !s.occupied(x)) {
                std::ostringstream os;
                os << "step " << k + 1 << ": coin at x=" << x << " acts on an unreachable position";
                run.warnings.push_back(os.str());
            }
        }
        s = translate(apply_coins(s, circuit.steps[k].coins));
        run.max_norm_drift = std::max(run.max_norm_drift, std::abs(s.norm_squared() - 1.0));
    }
    for (auto it = s.amplitudes().rbegin(); it != s.amplitudes().rend(); ++it) {
        run.ports.push_back({it->first, it->second});
    }
    return run;
}

std::vector<double> port_probabilities(const WalkRun& run) {
    std::vector<double> p;
    for (const auto& port : run.ports) p.push_back(port.amplitude.squaredNorm());
    return p;
}

namespace {

// Kraus operators K = [out(H) out(V)] of the live ports, descending position.
std::vector<std::pair<int, Eigen::Matrix2cd>> port_kraus(const WalkCircuit& circuit) {
    const WalkRun h = run_protocol(Coin(1.0, 0.0), circuit);
    const WalkRun v = run_protocol(Coin(0.0, 1.0), circuit);
    std::map<int, Eigen::Matrix2cd, std::greater<>> kraus;
    auto slot = [&](int x) -> Eigen::Matrix2cd& {
        return kraus.try_emplace(x, Eigen::Matrix2cd::Zero()).first->second;
    };
    for (const auto& p : h.ports) slot(p.position).col(0) = p.amplitude;
    for (const auto& p : v.ports) slot(p.position).col(1) = p.amplitude;
    std::vector<std::pair<int, Eigen::Matrix2cd>> out;
    for (const auto& [x, k] : kraus)
        if (k.cwiseAbs().maxCoeff() >= kNegligible) out.emplace_back(x, k);
    return out;
}

}  // namespace

std::vector<int> port_positions(const WalkCircuit& circuit) {
    std::vector<int> out;
    for (const auto& [x, k] : port_kraus(circuit)) out.push_back(x);
    return out;
}

Instrument extract_povm(const WalkCircuit& circuit) {
    std::vector<Matrix> effects;
    for (const auto& [x, k] : port_kraus(circuit)) effects.push_back(k.adjoint() * k);
    std::vector<PovmElement> elements(effects.size());
    if (!circuit.ports.empty()) {
        if (effects.size() > circuit.ports.size()) {
            throw ValidationError("walk has " + std::to_string(effects.size()) + " ports but the circuit maps " +
                                  std::to_string(circuit.ports.size()));
        }
        elements.resize(circuit.ports.size(), PovmElement{Matrix::Zero(2, 2), ""});
        for (std::size_t k = 0; k < effects.size(); ++k) {
            const int target = circuit.ports[k];
            if (target < 0 || static_cast<std::size_t>(target) >= elements.size()) {
                throw ValidationError("port map entry out of range");
            }
            elements[target].effect = effects[k];
        }
    } else {
        for (std::size_t k = 0; k < effects.size(); ++k) elements[k].effect = effects[k];
    }
    for (std::size_t k = 0; k < elements.size(); ++k) elements[k].label = circuit.name + std::to_string(k + 1);
    Instrument inst(circuit.name, std::move(elements));
    const double residual = (Matrix::Identity(2, 2) - inst.total()).cwiseAbs().maxCoeff();
    if (residual > 1e-8) {
        std::ostringstream os;
        os << "extracted POVM is incomplete (residual " << residual << ")";
        throw ValidationError(os.str());
    }
    return inst;
}

nlohmann::ordered_json circuit_to_json(const WalkCircuit& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& step : c.steps) {
        nlohmann::ordered_json coins = nlohmann::ordered_json::object();
        for (const auto& [x, m] : step.coins) {
            const auto label = step.labels.find(x);
            if (label != step.labels.end() && label->second == "bitflip") {
                coins[std::to_string(x)] = "bitflip";
            } else {
                coins[std::to_string(x)] = io::matrix_to_json(m);
            }
        }
        j["steps"].push_back({{"coins", coins}});
    }
    j["ports"] = c.ports;
    return j;
}

WalkCircuit circuit_from_json(const nlohmann::ordered_json& j) {
    WalkCircuit c;
    c.name = j.value("name", std::string("circuit"));
    for (const auto& step : j.at("steps")) {
        WalkStep s;
        for (const auto& [key, value] : step.at("coins").items()) {
            int x = 0;
            try {
                x = std::stoi(key);
            } catch (const std::exception&) {
                throw ValidationError("coin position '" + key + "' is not an integer");
            }
            if (value.is_string()) {
                if (value.get<std::string>() != "bitflip") throw ValidationError("unknown coin '" + value.get<std::string>() + "'");
                s.coins[x] = bit_flip();
                s.labels[x] = "bitflip";
            } else {
                const Matrix m = io::matrix_from_json(value);
                if (m.rows() != 2 || m.cols() != 2) throw DimensionError("coin matrices must be 2x2");
                s.coins[x] = m;
            }
        }
        c.steps.push_back(std::move(s));
    }
    if (j.contains("ports")) c.ports = j.at("ports").get<std::vector<int>>();
    c.require_unitary();
    return c;
}

}  // namespace proctensor::walk
