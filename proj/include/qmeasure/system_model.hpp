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
 * @file system_model.hpp
 * A finite-dimensional quantum system measured at a sequence of times:
 * initial density matrix, one unitary plus one projector family per
 * step. Each outcome sequence is a history; the chained
 * projector/unitary products are the class operators behind every
 * measure in this library.
 *
 * Constructors check shapes only. Numerical invariants (unitarity,
 * projector algebra, density normalization) are reported by
 * validate_system so that deliberately broken systems can be built and
 * diagnosed.
 */
#ifndef QMEASURE_SYSTEM_MODEL_HPP
#define QMEASURE_SYSTEM_MODEL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/linalg.hpp"

namespace qmeasure {

class InitialState {
  public:
    explicit InitialState(CMatrix density) : density_(std::move(density)) {
        if (density_.rows() != density_.cols() || density_.rows() == 0) {
            throw DomainError("initial state must be a square matrix");
        }
    }

    /// Rank-1 density from a state vector (not renormalized: a non-unit
    /// vector shows up as a trace violation in validate_system).
    static InitialState pure(const CVector &psi) {
        if (psi.size() == 0) {
            throw DomainError("empty state vector");
        }
        return InitialState(psi * psi.adjoint());
    }

    const CMatrix &density() const noexcept { return density_; }
    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(density_.rows());
    }

    bool is_pure(double tol) const {
        return std::abs((density_ * density_).trace() - Complex(1.0, 0.0)) <=
               tol;
    }

  private:
    CMatrix density_;
};

struct ProjectorOutcome {
    std::string label;
    CMatrix matrix;
};

/// One measurement time: the unitary evolving into it and the projector
/// family read out at it.
struct TimeStep {
    CMatrix unitary;
    std::vector<ProjectorOutcome> projectors;
};

/// One projector index per time step, first step first.
struct History {
    std::vector<std::size_t> outcomes;
};

class HistoriesSystem {
  public:
    HistoriesSystem(InitialState initial, std::vector<TimeStep> steps)
        : initial_(std::move(initial)), steps_(std::move(steps)) {
        const auto d = static_cast<Eigen::Index>(dimension());
        if (dimension() < 2) {
            throw DomainError("system dimension must be at least 2");
        }
        if (steps_.empty()) {
            throw DomainError("system needs at least one time step");
        }
        for (std::size_t s = 0; s < steps_.size(); ++s) {
            const auto &step = steps_[s];
            if (step.unitary.rows() != d || step.unitary.cols() != d) {
                throw DomainError("step " + std::to_string(s) +
                                  ": unitary has wrong shape");
            }
            if (step.projectors.empty()) {
                throw DomainError("step " + std::to_string(s) +
                                  ": empty projector family");
            }
            for (const auto &proj : step.projectors) {
                if (proj.matrix.rows() != d || proj.matrix.cols() != d) {
                    throw DomainError("step " + std::to_string(s) +
                                      ": projector has wrong shape");
                }
            }
        }
    }

    const InitialState &initial() const noexcept { return initial_; }
    const std::vector<TimeStep> &steps() const noexcept { return steps_; }
    std::size_t dimension() const noexcept { return initial_.dimension(); }

    std::size_t history_count() const {
        std::size_t n = 1;
        for (const auto &step : steps_) {
            if (n > limits::kElementScan / step.projectors.size()) {
                throw CapacityError("history space too large to enumerate");
            }
            n *= step.projectors.size();
        }
        return n;
    }

    History history_from_index(std::size_t index) const {
        History h;
        h.outcomes.reserve(steps_.size());
        for (const auto &step : steps_) {
            h.outcomes.push_back(index % step.projectors.size());
            index /= step.projectors.size();
        }
        if (index != 0) {
            throw DomainError("history index out of range");
        }
        return h;
    }

    std::size_t index_of(const History &h) const {
        check_history(h);
        std::size_t index = 0;
        std::size_t stride = 1;
        for (std::size_t s = 0; s < steps_.size(); ++s) {
            index += h.outcomes[s] * stride;
            stride *= steps_[s].projectors.size();
        }
        return index;
    }

    /// Outcome labels concatenated with the first measurement rightmost,
    /// the usual reading order for measurement records.
    std::string history_label(const History &h) const {
        check_history(h);
        std::string label;
        for (std::size_t s = steps_.size(); s-- > 0;) {
            label += steps_[s].projectors[h.outcomes[s]].label;
        }
        return label;
    }

    void check_history(const History &h) const {
        if (h.outcomes.size() != steps_.size()) {
            throw DomainError("history length does not match step count");
        }
        for (std::size_t s = 0; s < steps_.size(); ++s) {
            if (h.outcomes[s] >= steps_[s].projectors.size()) {
                throw DomainError("history outcome out of range at step " +
                                  std::to_string(s));
            }
        }
    }

  private:
    InitialState initial_;
    std::vector<TimeStep> steps_;
};

/// One history per outcome sequence, first step's outcome varying
/// fastest so labels read like binary counting for two-outcome steps.
inline SampleSpace induced_sample_space(const HistoriesSystem &system) {
    const std::size_t n = system.history_count();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(system.history_label(system.history_from_index(i)));
    }
    // SampleSpace rejects duplicates, which catches ambiguous outcome
    // label concatenations.
    return SampleSpace(std::move(labels));
}

/// C_h = P_n U_n ... P_2 U_2 P_1 U_1.
inline CMatrix class_operator(const HistoriesSystem &system, const History &h) {
    system.check_history(h);
    CMatrix m = CMatrix::Identity(system.dimension(), system.dimension());
    for (std::size_t s = 0; s < system.steps().size(); ++s) {
        const auto &step = system.steps()[s];
        m = step.projectors[h.outcomes[s]].matrix * (step.unitary * m);
    }
    return m;
}

/// All class operators in history-index order, sharing prefix products
/// across histories.
inline std::vector<CMatrix> all_class_operators(const HistoriesSystem &system) {
    const std::size_t n = system.history_count();
    std::vector<CMatrix> ops;
    ops.reserve(n);
    ops.push_back(CMatrix::Identity(system.dimension(), system.dimension()));
    for (const auto &step : system.steps()) {
        std::vector<CMatrix> next;
        next.reserve(ops.size() * step.projectors.size());
        std::vector<CMatrix> evolved;
        evolved.reserve(ops.size());
        for (const auto &m : ops) {
            evolved.push_back(step.unitary * m);
        }
        for (const auto &proj : step.projectors) {
            for (const auto &m : evolved) {
                next.push_back(proj.matrix * m);
            }
        }
        ops = std::move(next);
    }
    return ops;
}

/// <f_h| C_h |psi_0> for a pure initial state and rank-1 projector
/// families. f_h is the final projector's unit vector; both it and
/// psi_0 are phase-fixed (first sizeable component real positive).
inline Complex amplitude(const HistoriesSystem &system, const History &h,
                         double tol = limits::kValidationTol) {
    system.check_history(h);
    if (!system.initial().is_pure(tol)) {
        throw UnsupportedModeError(
            "history amplitudes need a pure initial state; use the "
            "decoherence matrix for mixed states");
    }
    for (const auto &step : system.steps()) {
        for (const auto &proj : step.projectors) {
            if (!linalg::is_rank_one(proj.matrix, tol)) {
                throw UnsupportedModeError(
                    "history amplitudes need rank-1 projector families; use "
                    "the decoherence matrix instead");
            }
        }
    }
    const CVector psi0 = linalg::rank_one_vector(system.initial().density(), tol);
    const auto &final_step = system.steps().back();
    const CVector f =
        linalg::rank_one_vector(final_step.projectors[h.outcomes.back()].matrix,
                                tol);
    return f.dot(class_operator(system, h) * psi0);
}

struct ValidationIssue {
    std::string component;
    std::string problem;
    double deviation = 0.0;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const noexcept { return issues.empty(); }
};

/// Report-only check of every numerical invariant; an empty report means
/// the system is valid at tolerance `tol`.
inline ValidationReport validate_system(const HistoriesSystem &system,
                                        double tol = limits::kValidationTol) {
    ValidationReport report;
    auto flag = [&report](std::string component, std::string problem,
                          double deviation) {
        report.issues.push_back(
            {std::move(component), std::move(problem), deviation});
    };

    const CMatrix &rho = system.initial().density();
    if (double dev = linalg::hermiticity_deviation(rho); dev > tol) {
        flag("initial_state", "not Hermitian", dev);
    }
    if (double dev = std::abs(rho.trace() - Complex(1.0, 0.0)); dev > tol) {
        flag("initial_state", "trace differs from 1", dev);
    }
    if (double lo = linalg::min_eigenvalue(rho); lo < -tol) {
        flag("initial_state", "not positive semidefinite", -lo);
    }

    const auto d = static_cast<Eigen::Index>(system.dimension());
    for (std::size_t s = 0; s < system.steps().size(); ++s) {
        const auto &step = system.steps()[s];
        const std::string where = "step[" + std::to_string(s) + "]";
        if (double dev = linalg::unitarity_deviation(step.unitary); dev > tol) {
            flag(where + ".unitary", "not unitary", dev);
        }
        CMatrix sum = CMatrix::Zero(d, d);
        for (std::size_t j = 0; j < step.projectors.size(); ++j) {
            const auto &proj = step.projectors[j];
            if (double dev = linalg::projector_deviation(proj.matrix);
                dev > tol) {
                flag(where + ".projector[" + proj.label + "]",
                     "not a projector", dev);
            }
            for (std::size_t k = j + 1; k < step.projectors.size(); ++k) {
                double dev = linalg::max_abs(proj.matrix *
                                             step.projectors[k].matrix);
                if (dev > tol) {
                    flag(where + ".projector[" + proj.label + "," +
                             step.projectors[k].label + "]",
                         "family not mutually orthogonal", dev);
                }
            }
            sum += proj.matrix;
        }
        if (double dev = linalg::max_abs(sum - CMatrix::Identity(d, d));
            dev > tol) {
            flag(where + ".projectors", "family does not sum to identity",
                 dev);
        }
    }
    return report;
}

} // namespace qmeasure

#endif // QMEASURE_SYSTEM_MODEL_HPP
