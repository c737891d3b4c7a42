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

#ifndef QMEASURE_LINALG_HPP
#define QMEASURE_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

#include "qmeasure/errors.hpp"

namespace qmeasure {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace linalg {

inline double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_deviation(const CMatrix &m) {
    return max_abs(m - m.adjoint().eval());
}

inline double unitarity_deviation(const CMatrix &u) {
    const CMatrix gram = u.adjoint() * u;
    return max_abs(gram - CMatrix::Identity(u.rows(), u.cols()));
}

/// max of ||P^2 - P||_inf and ||P - P^dagger||_inf.
inline double projector_deviation(const CMatrix &p) {
    const double idem = max_abs(p * p - p);
    const double herm = hermiticity_deviation(p);
    return idem > herm ? idem : herm;
}

/// Smallest eigenvalue of a (near-)Hermitian matrix.
inline double min_eigenvalue(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m,
                                                  Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("eigenvalue computation failed");
    }
    return solver.eigenvalues().minCoeff();
}

/// Frobenius inner product Tr(A^dagger B).
inline Complex frobenius_dot(const CMatrix &a, const CMatrix &b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

/// Trace of a projector counts its rank.
inline bool is_rank_one(const CMatrix &p, double tol) {
    return std::abs(p.trace() - Complex(1.0, 0.0)) <= tol;
}

/// Unit vector spanning a rank-1 projector's range, with the phase fixed
/// so the first component of magnitude above tol is real positive.
inline CVector rank_one_vector(const CMatrix &p, double tol) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
        const double mag = std::abs(p(j, j));
        if (mag > best_mag) {
            best_mag = mag;
            best = j;
        }
    }
    CVector v = p.col(best);
    const double norm = v.norm();
    if (norm <= tol) {
        throw DomainError("projector has numerically empty range");
    }
    v /= norm;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double mag = std::abs(v(k));
        if (mag > tol) {
            v *= std::conj(v(k)) / mag;
            break;
        }
    }
    return v;
}

} // namespace linalg

} // namespace qmeasure

#endif // QMEASURE_LINALG_HPP
