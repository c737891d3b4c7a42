// Copyright 2026 The qmeasure developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEASURE_LIMITS_HPP
#define QMEASURE_LIMITS_HPP

#include <cstddef>

namespace qmeasure::limits {

// Everything here is exponential somewhere. Exceeding a cap is a
// CapacityError, never silent truncation.

/// Largest |Omega| for which full 2^|Omega| subset scans run.
inline constexpr std::size_t kSubsetScanBits = 24;

/// Largest sample space backed by a dense decoherence matrix.
inline constexpr std::size_t kDenseMatrixDim = 4096;

/// Largest sample space (product spaces included) that element-wise
/// scans will walk.
inline constexpr std::size_t kElementScan = std::size_t{1} << 24;

/// Work budget (history-pair lookups) for measures over lazily
/// represented product matrices.
inline constexpr std::size_t kPairScanBudget = std::size_t{1} << 26;

/// Default absolute, entrywise tolerance for matrix invariants.
inline constexpr double kValidationTol = 1e-9;

/// Default preclusion threshold on the mu(Omega)=1 scale.
inline constexpr double kPreclusionTol = 1e-9;

/// Default "small measure" threshold for prediction reports.
inline constexpr double kCournotEpsilon = 1e-6;

} // namespace qmeasure::limits

#endif // QMEASURE_LIMITS_HPP
