// Copyright 2026 The stoqnp Authors
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

#ifndef STOQNP_ERRORS_H
#define STOQNP_ERRORS_H

#include <stdexcept>
#include <string>

namespace stoqnp {

/// Malformed input text (bad JSON, wrong shapes, symbols out of range).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input that parsed but breaks an instance invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A term whose groundspace is not spanned by uniform subset states.
struct NonUniformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A projector that does not split into non-negative rank-1 blocks.
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigenvalues too close to the groundspace cluster to classify.
struct DegenerateToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical routine that did not reach its residual target.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested search would exceed the configured state cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation refused because its precondition on the instance fails.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stoqnp

#endif
