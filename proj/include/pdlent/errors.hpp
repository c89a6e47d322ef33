// Copyright 2026 The pdlent Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pdlent {

/// Input outside the mathematical domain of an operation (unphysical state,
/// negative magnitude, unnormalized vector, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// An iterative numerical routine did not converge.
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Post-selection impossible: the filtered state has (numerically) zero weight.
class ExtinctionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The requested construction is only defined for a narrower class of states.
class UnsupportedStateError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pdlent
