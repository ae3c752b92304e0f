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

#ifndef PROCTENSOR_ERROR_H
#define PROCTENSOR_ERROR_H

#include <stdexcept>
#include <string>

namespace proctensor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shapes, leg labels or leg dimensions do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An input violates a numerical precondition (Hermiticity, positivity,
/// normalization, unitarity, completeness).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Relative entropy with supp(x) not contained in supp(y); the divergence is
/// infinite.
class SupportError : public Error {
  public:
    using Error::Error;
};

/// Instrument elements are (numerically) linearly dependent.
class LinearDependenceError : public Error {
  public:
    using Error::Error;
};

/// An operator lies outside the span a recovered process is valid on.
class SpanError : public Error {
  public:
    using Error::Error;
};

}  // namespace proctensor

#endif  // PROCTENSOR_ERROR_H
