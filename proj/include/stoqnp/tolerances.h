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

#ifndef STOQNP_TOLERANCES_H
#define STOQNP_TOLERANCES_H

#include <cstddef>
#include <cstdint>

namespace stoqnp::tol {

/// Eigenvalues within this distance of the minimum belong to the groundspace.
inline constexpr double kEigenZero = 1e-9;
/// The next eigenvalue above the groundspace cluster must sit at least this
/// many multiples of the tolerance higher, otherwise the split is ambiguous.
inline constexpr double kDegenerateFactor = 10.0;
/// Residual bound for an extracted non-negative groundstate.
inline constexpr double kResidual = 1e-8;
/// Energies at or below this are treated as zero.
inline constexpr double kZeroEnergy = 1e-9;
/// Dense and iterative ground energies must agree to this.
inline constexpr double kDenseIterativeAgreement = 1e-7;
/// Relative slack when comparing groundstate amplitudes for ties.
inline constexpr double kAmplitudeTie = 1e-9;

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 26;
inline constexpr std::uint64_t kDenseMaxDim = std::uint64_t{1} << 13;
inline constexpr std::uint64_t kIterativeMaxDim = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kEnumerationMaxDim = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kMinUnsatMaxDim = 16;

}  // namespace stoqnp::tol

#endif
