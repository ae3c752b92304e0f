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

#ifndef PROCTENSOR_WALK_H
#define PROCTENSOR_WALK_H

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "proctensor/instruments.h"
#include "proctensor/linalg.h"

namespace proctensor::walk {

/// Coin index 0 is |H> (moves to x-1), index 1 is |V> (moves to x+1).
using Coin = Eigen::Vector2cd;
using CoinMatrix = Eigen::Matrix2cd;

class WalkState {
  public:
    WalkState() = default;
    /// Walker at x = 0 with the given coin state (normalized on entry).
    static WalkState at_origin(const Coin& coin);

    const std::map<int, Coin>& amplitudes() const { return amps_; }
    Coin at(int x) const;
    void set(int x, const Coin& c) { amps_[x] = c; }
    double norm_squared() const;
    bool occupied(int x) const;

  private:
    std::map<int, Coin> amps_;
};

/// |x,V> -> |x+1,V>, |x,H> -> |x-1,H>.
WalkState translate(const WalkState& s);

/// Applies each coin at its position (identity elsewhere). Throws
/// ValidationError if a coin is not unitary within tol::kUnitary.
WalkState apply_coins(const WalkState& s, const std::map<int, CoinMatrix>& coins);

CoinMatrix bit_flip();
double unitarity_error(const CoinMatrix& c);

struct WalkStep {
    std::map<int, CoinMatrix> coins;
    std::map<int, std::string> labels;  // e.g. "bitflip" for display and JSON
};

struct WalkCircuit {
    std::string name;
    std::vector<WalkStep> steps;
    /// ports[k] = instrument element index realized by the k-th port, ports
    /// ordered by terminal position, descending. Empty means identity order.
    std::vector<int> ports;

    /// Largest unitarity error over all coins.
    double max_unitarity_error() const;
    /// Throws ValidationError naming the first non-unitary coin.
    void require_unitary() const;
};

/// Rounds of the two-stage protocol: (C1 at x=0, T), (C2 at x=1 and bit flip
/// at x=-1, T).
WalkCircuit protocol_circuit(const std::string& name, const std::vector<std::pair<CoinMatrix, CoinMatrix>>& rounds,
                             std::vector<int> ports = {});

/// Coin tables exactly as printed for the three-outcome and tetrahedral POVMs.
WalkCircuit theta_circuit();
WalkCircuit tetra_circuit();
/// One round with identity coins: computational-basis measurement.
WalkCircuit identity_circuit();
WalkCircuit circuit_by_name(const std::string& name);

struct PortAmplitude {
    int position = 0;
    Coin amplitude = Coin::Zero();
};

struct WalkRun {
    std::vector<PortAmplitude> ports;  // descending position
    std::vector<std::string> warnings;
    double max_norm_drift = 0.0;
};

/// Runs the circuit from x = 0. Unitarity is enforced before the run.
WalkRun run_protocol(const Coin& initial, const WalkCircuit& circuit);

/// Port probabilities |amplitude|^2 summed over the coin, descending position.
std::vector<double> port_probabilities(const WalkRun& run);

/// Terminal positions carrying amplitude for some input, descending. Port k of
/// extract_povm sits at port_positions(c)[k].
std::vector<int> port_positions(const WalkCircuit& circuit);
/// POVM realized by the ports: K_port = [out(|H>) out(|V>)], element K^dagger K,
/// reordered by circuit.ports. Throws on completeness residual > 1e-8.
Instrument extract_povm(const WalkCircuit& circuit);

nlohmann::ordered_json circuit_to_json(const WalkCircuit& c);
WalkCircuit circuit_from_json(const nlohmann::ordered_json& j);

}  // namespace proctensor::walk

#endif  // PROCTENSOR_WALK_H
