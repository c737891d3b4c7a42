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

/**
 * @file quantum_measure.hpp
 * The quantum measure mu over events: mu(A) is the sum of a Hermitian
 * positive-semidefinite decoherence matrix over A x A. mu is
 * nonnegative and normalized but only pairwise-additive; the
 * three-event sum rule and the singleton/pair reconstruction identity
 * live here too.
 *
 * A DecoherenceMatrix is either dense or a lazily-evaluated tensor
 * power of a dense base (repeated identical trials). Tensor powers
 * materialize when small; past the dense cap they stay lazy and
 * measures are taken by a diagonal fast path or a work-guarded
 * pairwise sum.
 */
#ifndef QMEASURE_QUANTUM_MEASURE_HPP
#define QMEASURE_QUANTUM_MEASURE_HPP

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/system_model.hpp"

namespace qmeasure {

class DecoherenceMatrix {
  public:
    /// Wrap an explicit matrix, checking hermiticity, normalization
    /// (sum of all entries equals 1) and, for spaces up to 1024
    /// histories, positive semidefiniteness.
    static DecoherenceMatrix from_dense(SampleSpace space, CMatrix entries,
                                        double tol = limits::kValidationTol) {
        validate_dense(space, entries, tol, /*check_psd=*/true);
        return DecoherenceMatrix(std::move(space), std::move(entries), tol);
    }

    const SampleSpace &space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    double tolerance() const noexcept { return tol_; }

    bool has_dense() const noexcept { return dense_.size() != 0; }

    const CMatrix &dense() const {
        if (!has_dense()) {
            throw CapacityError(
                "decoherence matrix over " + std::to_string(size()) +
                " histories is not materialized (dense cap " +
                std::to_string(limits::kDenseMatrixDim) + ")");
        }
        return dense_;
    }

    bool is_product() const noexcept { return base_ != nullptr; }
    const DecoherenceMatrix &base() const {
        if (!is_product()) {
            throw DomainError("not a product decoherence matrix");
        }
        return *base_;
    }
    std::size_t copies() const noexcept { return copies_; }

    Complex entry(std::size_t i, std::size_t j) const {
        if (i >= size() || j >= size()) {
            throw DomainError("decoherence matrix index out of range");
        }
        if (has_dense()) {
            return dense_(static_cast<Eigen::Index>(i),
                          static_cast<Eigen::Index>(j));
        }
        const std::size_t b = base_->size();
        Complex value(1.0, 0.0);
        for (std::size_t k = 0; k < copies_; ++k) {
            value *= base_->entry(i % b, j % b);
            i /= b;
            j /= b;
        }
        return value;
    }

    bool is_diagonal(double tol) const {
        if (!has_dense()) {
            return base_->is_diagonal(tol);
        }
        const auto n = dense_.rows();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i != j && std::abs(dense_(i, j)) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    // Construction paths that guarantee the invariants analytically
    // (class operators, amplitude tables, tensor powers) skip the
    // eigenvalue check but still verify hermiticity and normalization.
    static DecoherenceMatrix trusted(SampleSpace space, CMatrix entries,
                                     double tol) {
        validate_dense(space, entries, tol, /*check_psd=*/false);
        return DecoherenceMatrix(std::move(space), std::move(entries), tol);
    }

    static DecoherenceMatrix product(std::shared_ptr<const DecoherenceMatrix> base,
                                     std::size_t copies, SampleSpace space) {
        DecoherenceMatrix out(std::move(space), CMatrix(), base->tolerance());
        out.base_ = std::move(base);
        out.copies_ = copies;
        if (out.size() <= limits::kDenseMatrixDim) {
            CMatrix dense(out.size(), out.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                for (std::size_t j = 0; j < out.size(); ++j) {
                    dense(static_cast<Eigen::Index>(i),
                          static_cast<Eigen::Index>(j)) = out.entry(i, j);
                }
            }
            out.dense_ = std::move(dense);
        }
        return out;
    }

  private:
    DecoherenceMatrix(SampleSpace space, CMatrix dense, double tol)
        : space_(std::move(space)), dense_(std::move(dense)), tol_(tol) {}

    static void validate_dense(const SampleSpace &space, const CMatrix &entries,
                               double tol, bool check_psd) {
        const auto n = static_cast<Eigen::Index>(space.size());
        if (entries.rows() != n || entries.cols() != n) {
            throw DomainError("decoherence matrix shape does not match the "
                              "sample space");
        }
        if (space.size() > limits::kDenseMatrixDim) {
            throw CapacityError("dense decoherence matrix over " +
                                std::to_string(space.size()) +
                                " histories exceeds the cap of " +
                                std::to_string(limits::kDenseMatrixDim));
        }
        if (double dev = linalg::hermiticity_deviation(entries); dev > tol) {
            throw InvariantError("decoherence matrix is not Hermitian "
                                 "(deviation " +
                                 std::to_string(dev) + ")");
        }
        const double total = entries.sum().real();
        const double imag = std::abs(entries.sum().imag());
        if (std::abs(total - 1.0) > tol || imag > tol) {
            throw InvariantError(
                "quantum measure is not normalized: mu(Omega) = " +
                std::to_string(total));
        }
        if (check_psd && space.size() <= 1024) {
            if (double lo = linalg::min_eigenvalue(entries); lo < -tol) {
                throw InvariantError("decoherence matrix is not positive "
                                     "semidefinite (min eigenvalue " +
                                     std::to_string(lo) + ")");
            }
        }
    }

    SampleSpace space_;
    CMatrix dense_;
    std::shared_ptr<const DecoherenceMatrix> base_;
    std::size_t copies_ = 1;
    double tol_;
};

/// Explicit amplitude list. Histories in different final classes do not
/// interfere; the final class plays the role of the final-time
/// coincidence condition.
class AmplitudeTable {
  public:
    AmplitudeTable(SampleSpace space, std::vector<Complex> amplitudes,
                   std::vector<std::string> final_classes)
        : space_(std::move(space)), amplitudes_(std::move(amplitudes)),
          final_classes_(std::move(final_classes)) {
        if (amplitudes_.size() != space_.size() ||
            final_classes_.size() != space_.size()) {
            throw DomainError("amplitude table size does not match the "
                              "sample space");
        }
    }

    /// Single final class for every history.
    AmplitudeTable(SampleSpace space, std::vector<Complex> amplitudes)
        : AmplitudeTable(space, std::move(amplitudes),
                         std::vector<std::string>(space.size(), "")) {}

    const SampleSpace &space() const noexcept { return space_; }
    const std::vector<Complex> &amplitudes() const noexcept {
        return amplitudes_;
    }
    const std::vector<std::string> &final_classes() const noexcept {
        return final_classes_;
    }

  private:
    SampleSpace space_;
    std::vector<Complex> amplitudes_;
    std::vector<std::string> final_classes_;
};

/// D(h,h') = alpha(h) conj(alpha(h')) within a final class, 0 across
/// classes. The table is rescaled so mu(Omega) = 1; a table whose total
/// measure vanishes has no measure to define.
inline DecoherenceMatrix from_amplitudes(const AmplitudeTable &table,
                                         double tol = limits::kValidationTol) {
    const std::size_t n = table.space().size();
    double total = 0.0;
    {
        std::unordered_map<std::string, Complex> class_sums;
        for (std::size_t i = 0; i < n; ++i) {
            class_sums[table.final_classes()[i]] += table.amplitudes()[i];
        }
        for (const auto &[cls, sum] : class_sums) {
            total += std::norm(sum);
        }
    }
    if (total <= tol * tol) {
        throw DegenerateInputError(
            "amplitude table has zero total measure; nothing to normalize");
    }
    const double scale = 1.0 / std::sqrt(total);
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (table.final_classes()[i] == table.final_classes()[j]) {
                d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    (table.amplitudes()[i] * scale) *
                    std::conj(table.amplitudes()[j] * scale);
            } else {
                d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    Complex(0.0, 0.0);
            }
        }
    }
    return DecoherenceMatrix::trusted(table.space(), std::move(d), tol);
}

/// D(h,h') = Tr(C_h rho C_{h'}^dagger), so that mu({h}) = |amplitude(h)|^2
/// for pure rank-1 systems and mu(A) = Tr(C_A rho C_A^dagger) for every
/// event.
inline DecoherenceMatrix decoherence_matrix(const HistoriesSystem &system,
                                            double tol = limits::kValidationTol) {
    SampleSpace space = induced_sample_space(system);
    if (space.size() > limits::kDenseMatrixDim) {
        throw CapacityError("system induces " + std::to_string(space.size()) +
                            " histories, beyond the dense matrix cap");
    }
    const std::vector<CMatrix> ops = all_class_operators(system);
    std::vector<CMatrix> weighted;
    weighted.reserve(ops.size());
    for (const auto &c : ops) {
        weighted.push_back(c * system.initial().density());
    }
    const auto n = static_cast<Eigen::Index>(space.size());
    CMatrix d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Tr(C_i rho C_j^dagger) = Tr(C_j^dagger C_i rho)
            d(i, j) = linalg::frobenius_dot(ops[j], weighted[i]);
        }
    }
    return DecoherenceMatrix::trusted(std::move(space), std::move(d), tol);
}

/// mu(A): the sum of D over A x A, clamped to zero when a hair below it.
/// A clearly negative value means the matrix was never valid.
inline double measure(const DecoherenceMatrix &d, const Event &a) {
    detail::require_same_space(d.space(), a.space(), "measure");
    double mu = 0.0;
    if (d.has_dense()) {
        const auto members = a.members();
        const CMatrix &m = d.dense();
        for (std::size_t x = 0; x < members.size(); ++x) {
            const auto ix = static_cast<Eigen::Index>(members[x]);
            mu += m(ix, ix).real();
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                const auto iy = static_cast<Eigen::Index>(members[y]);
                mu += 2.0 * m(ix, iy).real();
            }
        }
    } else {
        const auto members = a.members();
        const DecoherenceMatrix &base = d.base();
        const std::size_t b = base.size();
        const std::size_t n = d.copies();
        if (base.is_diagonal(d.tolerance())) {
            // Kahan-compensated: these sums can run over hundreds of
            // thousands of tuples at 1e-12 contract tolerances.
            double compensation = 0.0;
            for (std::size_t t : members) {
                double w = 1.0;
                for (std::size_t k = 0; k < n; ++k) {
                    w *= base.entry(t % b, t % b).real();
                    t /= b;
                }
                const double y = w - compensation;
                const double s = mu + y;
                compensation = (s - mu) - y;
                mu = s;
            }
        } else {
            const std::size_t work = members.size() * members.size();
            if (members.size() != 0 &&
                work / members.size() != members.size()) {
                throw CapacityError("product measure work overflow");
            }
            if (work > limits::kPairScanBudget / (n == 0 ? 1 : n)) {
                throw CapacityError(
                    "pairwise product measure over " +
                    std::to_string(members.size()) +
                    " histories exceeds the work budget; coarse-grain the "
                    "event or use a classical (diagonal) base");
            }
            Complex total(0.0, 0.0);
            for (std::size_t s : members) {
                for (std::size_t t : members) {
                    std::size_t i = s;
                    std::size_t j = t;
                    Complex v(1.0, 0.0);
                    for (std::size_t k = 0; k < n; ++k) {
                        v *= base.entry(i % b, j % b);
                        i /= b;
                        j /= b;
                    }
                    total += v;
                }
            }
            mu = total.real();
        }
    }
    if (mu < 0.0) {
        if (mu < -d.tolerance()) {
            throw InvariantError("negative quantum measure " +
                                 std::to_string(mu) +
                                 "; decoherence matrix is not positive "
                                 "semidefinite");
        }
        mu = 0.0;
    }
    return mu;
}

/// mu(A|B|C) - mu(A|B) - mu(A|C) - mu(B|C) + mu(A) + mu(B) + mu(C).
/// Vanishes identically for every valid decoherence matrix: there is no
/// irreducible three-way interference.
inline double sum_rule_residual(const DecoherenceMatrix &d, const Event &a,
                                const Event &b, const Event &c) {
    detail::require_same_space(d.space(), a.space(), "sum_rule_residual");
    if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
        throw DomainError("sum rule needs pairwise disjoint events");
    }
    const Event ab = union_of(a, b);
    const Event ac = union_of(a, c);
    const Event bc = union_of(b, c);
    const Event abc = union_of(ab, c);
    return measure(d, abc) - measure(d, ab) - measure(d, ac) - measure(d, bc) +
           measure(d, a) + measure(d, b) + measure(d, c);
}

/// Singleton and pair measures, the data that determines the whole
/// quantum measure. Entries are NaN until set.
class MeasureTable {
  public:
    explicit MeasureTable(SampleSpace space)
        : space_(std::move(space)),
          singletons_(Eigen::VectorXd::Constant(
              static_cast<Eigen::Index>(space_.size()),
              std::numeric_limits<double>::quiet_NaN())),
          pairs_(Eigen::MatrixXd::Constant(
              static_cast<Eigen::Index>(space_.size()),
              static_cast<Eigen::Index>(space_.size()),
              std::numeric_limits<double>::quiet_NaN())) {}

    static MeasureTable from_matrix(const DecoherenceMatrix &d) {
        MeasureTable table(d.space());
        const std::size_t n = d.space().size();
        for (std::size_t i = 0; i < n; ++i) {
            table.set_singleton(i, measure(d, d.space().event_from_indices({i})));
            for (std::size_t j = i + 1; j < n; ++j) {
                table.set_pair(
                    i, j, measure(d, d.space().event_from_indices({i, j})));
            }
        }
        return table;
    }

    const SampleSpace &space() const noexcept { return space_; }

    void set_singleton(std::size_t i, double mu) {
        singletons_(check(i)) = mu;
    }
    void set_pair(std::size_t i, std::size_t j, double mu) {
        if (i == j) {
            throw DomainError("pair measure needs two distinct histories");
        }
        pairs_(check(i), check(j)) = mu;
        pairs_(check(j), check(i)) = mu;
    }

    bool has_singleton(std::size_t i) const {
        return !std::isnan(singletons_(check(i)));
    }
    bool has_pair(std::size_t i, std::size_t j) const {
        return !std::isnan(pairs_(check(i), check(j)));
    }

    double singleton(std::size_t i) const {
        const double v = singletons_(check(i));
        if (std::isnan(v)) {
            throw DomainError("missing singleton measure for history '" +
                              space_.label(i) + "'");
        }
        return v;
    }
    double pair(std::size_t i, std::size_t j) const {
        const double v = pairs_(check(i), check(j));
        if (std::isnan(v)) {
            throw DomainError("missing pair measure for histories '" +
                              space_.label(i) + "', '" + space_.label(j) + "'");
        }
        return v;
    }

  private:
    Eigen::Index check(std::size_t i) const {
        if (i >= space_.size()) {
            throw DomainError("history index out of range");
        }
        return static_cast<Eigen::Index>(i);
    }

    SampleSpace space_;
    Eigen::VectorXd singletons_;
    Eigen::MatrixXd pairs_;
};

/// mu(A) from singletons and pairs alone:
/// (2-n) sum_i mu(h_i) + (1/2) sum_{i != j} mu({h_i,h_j}).
inline double reconstruct_measure(const MeasureTable &table, const Event &a) {
    detail::require_same_space(table.space(), a.space(), "reconstruct_measure");
    const auto members = a.members();
    const auto n = static_cast<double>(members.size());
    if (members.empty()) {
        return 0.0;
    }
    double singles = 0.0;
    for (std::size_t i : members) {
        singles += table.singleton(i);
    }
    double pair_sum = 0.0;
    for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
            pair_sum += table.pair(members[x], members[y]);
        }
    }
    return (2.0 - n) * singles + pair_sum;
}

/// Real symmetric decoherence matrix reproducing a singleton/pair table:
/// diagonal from singletons, off-diagonal from the pairwise interference
/// terms. Positive semidefiniteness of the result certifies the table.
inline DecoherenceMatrix
decoherence_from_table(const MeasureTable &table,
                       double tol = limits::kValidationTol) {
    const std::size_t n = table.space().size();
    CMatrix d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            Complex(table.singleton(i), 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double re = 0.0;
            if (n > 1) {
                re = 0.5 *
                     (table.pair(i, j) - table.singleton(i) - table.singleton(j));
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Complex(re, 0.0);
            d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                Complex(re, 0.0);
        }
    }
    return DecoherenceMatrix::from_dense(table.space(), std::move(d), tol);
}

/// A measure is classical (fully additive) exactly when no pair of
/// distinct histories interferes: |Re D(h,h')| <= tol off the diagonal.
inline bool is_classical(const DecoherenceMatrix &d, double tol) {
    if (!d.has_dense()) {
        return is_classical(d.base(), tol);
    }
    const CMatrix &m = d.dense();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && std::abs(m(i, j).real()) > tol) {
                return false;
            }
        }
    }
    return true;
}

} // namespace qmeasure

#endif // QMEASURE_QUANTUM_MEASURE_HPP
