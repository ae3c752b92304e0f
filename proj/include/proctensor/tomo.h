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

#ifndef PROCTENSOR_TOMO_H
#define PROCTENSOR_TOMO_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "proctensor/linalg.h"

namespace proctensor::tomo {

/// Measurement bases per leg dimension. Qubits use the Pauli eigenbases X, Y, Z;
/// qutrits the four mutually unbiased bases M0 (computational) .. M3.
std::vector<std::string> basis_labels(int dim);
/// Columns are the basis vectors; column k is outcome k.
Matrix basis_vectors(int dim, const std::string& label);

struct CountsTable {
    std::vector<int> dims;
    std::vector<std::vector<std::string>> settings;  // one basis label per leg
    std::vector<std::vector<std::uint64_t>> counts;   // per setting, per joint outcome
    std::vector<std::uint64_t> shots;

    std::uint64_t total_shots() const;
    /// setting,outcome,count with setting as dot-joined labels and outcome as
    /// the per-leg outcome digits.
    void write_csv(std::ostream& os) const;
    static CountsTable read_csv(std::istream& is, const std::vector<int>& dims);
};

/// Every combination of per-leg bases, last leg varying fastest.
std::vector<std::vector<std::string>> all_settings(const std::vector<int>& dims);

/// Born probabilities of every setting, indexed like CountsTable::counts.
std::vector<std::vector<double>> born_probabilities(const Matrix& rho, const std::vector<int>& dims);

/// Multinomial counts with total_shots split evenly over the settings
/// (remainder to the first settings). Setting s draws from derive_seed(seed, s).
CountsTable simulate_counts(const Matrix& rho, const std::vector<int>& dims, std::uint64_t total_shots,
                            std::uint64_t seed);

/// Euclidean projection of a real vector onto the probability simplex.
RealVector project_to_simplex(const RealVector& v);

/// Linear-inversion reconstructor for a fixed leg structure. The design
/// matrix is factored once and reused.
class Reconstructor {
  public:
    explicit Reconstructor(std::vector<int> dims);

    /// Least-squares inversion of frequencies followed by projection of the
    /// spectrum onto the simplex. Result is a density matrix.
    Matrix from_frequencies(const std::vector<std::vector<double>>& freqs) const;
    Matrix from_counts(const CountsTable& counts) const;
    /// Inversion without the projection step.
    Matrix linear_inversion(const std::vector<std::vector<double>>& freqs) const;

    const std::vector<int>& dims() const { return dims_; }

  private:
    std::vector<int> dims_;
    std::vector<std::vector<std::string>> settings_;
    Matrix design_;
    Eigen::CompleteOrthogonalDecomposition<Matrix> solver_;
};

/// Throws DimensionError if the settings are not informationally complete.
Matrix reconstruct(const CountsTable& counts);

struct BootstrapResult {
    double mean = 0.0;
    double standard_error = 0.0;
    std::vector<double> values;
};

using Statistic = std::function<double(const Matrix&)>;

/// Resamples every setting multinomially from its observed frequencies,
/// reconstructs, and evaluates the statistic; stderr is the sample
/// standard deviation over resamples.
BootstrapResult bootstrap(const CountsTable& counts, std::size_t resamples, const Statistic& statistic,
                          std::uint64_t seed, unsigned threads = 0);

/// Named statistics: trace, purity, total_correlation (tripartite dims only).
Statistic statistic_by_name(const std::string& name, const std::vector<int>& dims);

}  // namespace proctensor::tomo

#endif  // PROCTENSOR_TOMO_H
