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

#ifndef PROCTENSOR_TOLERANCES_H
#define PROCTENSOR_TOLERANCES_H

namespace proctensor::tol {

// Max absolute entry of M - M^dagger accepted as Hermitian.
inline constexpr double kHermitian = 1e-10;
// Eigenvalues below this are treated as zero in entropies and supports.
inline constexpr double kEigenClip = 1e-12;
// Most negative eigenvalue accepted for a positive operator.
inline constexpr double kPositivity = 1e-10;
// Trace deviation accepted for a normalized state.
inline constexpr double kTrace = 1e-8;
// Causality-hierarchy residual (Frobenius) for a valid process tensor.
inline constexpr double kCausality = 1e-8;
// Completeness residual (Frobenius) for a valid instrument.
inline constexpr double kCompleteness = 1e-10;
// Gram condition number above which dual frames are refused.
inline constexpr double kGramCondition = 1e12;
// Span residual (Frobenius) for observables on recovered processes.
inline constexpr double kSpan = 1e-10;
// Coin unitarity for walk circuits.
inline constexpr double kUnitary = 1e-10;

}  // namespace proctensor::tol

#endif  // PROCTENSOR_TOLERANCES_H
