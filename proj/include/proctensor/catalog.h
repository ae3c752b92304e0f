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

#ifndef PROCTENSOR_CATALOG_H
#define PROCTENSOR_CATALOG_H

#include <string>
#include <vector>

#include "proctensor/linalg.h"
#include "proctensor/process.h"

namespace proctensor::catalog {

/// Qubit-qubit-qubit initial state of process 1 (entries are n / 10000).
Matrix lambda_state();
/// Qubit-qutrit-qubit initial state of process 2 (entries over 48).
Matrix omega_state();

inline const std::vector<int> kLambdaDims{2, 2, 2};
inline const std::vector<int> kOmegaDims{2, 3, 2};

ProcessTensor lambda_process();
ProcessTensor omega_process();

struct EnsembleMember {
    Vector amplitudes;  // as given, possibly unnormalized
    double weight = 0.0;
};

struct StateEnsemble {
    std::vector<EnsembleMember> members;
    std::vector<int> dims;
};

StateEnsemble lambda_ensemble();
StateEnsemble omega_ensemble();

/// Sum_k w_k |psi_k><psi_k| with each |psi_k> normalized. Throws on zero vectors
/// and on weights that do not sum to one within 1e-12.
Matrix ensemble_to_state(const StateEnsemble& e);

/// Bell vectors in the order psi+, psi-, phi+, phi- with
/// psi+- = (|00> +- |11>)/sqrt2 and phi+- = (|01> +- |10>)/sqrt2.
Vector bell(int x);
const std::vector<std::string>& bell_names();
/// r |b_x><b_x| + (1 - r) 1/4.
Matrix werner(int x, double r);

/// Printed 4-digit conditional marginals lambda^(x) of Alice and Charlie for
/// the three events of the theta POVM.
std::vector<Matrix> lambda_blocking_marginals();
/// Event weights {2(3 - 2 sqrt2), 2(3 - 2 sqrt2), 8 sqrt2 - 11}.
std::vector<double> theta_ideal_probabilities();
/// Sum_x w_x lambda^(x) (x) Delta^(x) (x) lambda^(x) with the ideal weights.
Matrix lambda_recovered_reference();
/// (1/2)(1/2 (x) 1_01/2 (x) 1/2 + |0><0| (x) |2><2| (x) |0><0|).
Matrix omega_recovered_reference();

/// State or process by name: lambda | omega.
Matrix state_by_name(const std::string& name);
ProcessTensor process_by_name(const std::string& name);

}  // namespace proctensor::catalog

#endif  // PROCTENSOR_CATALOG_H
