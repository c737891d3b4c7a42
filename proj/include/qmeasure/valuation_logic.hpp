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
 * @file valuation_logic.hpp
 * Truth valuations on the event algebra. A Valuation is the
 * characteristic map of its (nonempty) support S: phi_S(A) = 1 iff
 * S is a subset of A. Such maps are multiplicative by construction but
 * in general not additive — answering "no" to a question and "no" to
 * its complement is legal behavior, and check_inference reports it
 * rather than failing.
 */
#ifndef QMEASURE_VALUATION_LOGIC_HPP
#define QMEASURE_VALUATION_LOGIC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/preclusion.hpp"

namespace qmeasure {

/// Multiplicative truth valuation, identified with its support.
class Valuation {
  public:
    explicit Valuation(Event support) : support_(std::move(support)) {
        if (support_.empty()) {
            throw DomainError(
                "a valuation needs a nonempty support; the zero map realizes "
                "nothing");
        }
    }

    const Event &support() const noexcept { return support_; }
    const SampleSpace &space() const noexcept { return support_.space(); }

  private:
    Event support_;
};

/// phi_S(A) = 1 iff S is a subset of A.
inline bool evaluate(const Valuation &v, const Event &a) {
    detail::require_same_space(v.space(), a.space(), "evaluate");
    return v.support().bits().is_subset_of(a.bits());
}

/// Explicit Boolean assignment on all 2^|Omega| events, indexed by
/// membership mask. Only small spaces fit.
class TruthTable {
  public:
    TruthTable(SampleSpace space, std::vector<bool> values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (space_.size() > 20) {
            throw CapacityError("truth tables are limited to 20 histories");
        }
        if (values_.size() != (std::size_t{1} << space_.size())) {
            throw DomainError("truth table must assign all 2^|Omega| events");
        }
    }

    static TruthTable of(const Valuation &v) {
        const std::uint64_t support = v.support().mask();
        const std::size_t n = v.space().size();
        std::vector<bool> values(std::size_t{1} << n);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            values[m] = (support & m) == support;
        }
        return TruthTable(v.space(), std::move(values));
    }

    const SampleSpace &space() const noexcept { return space_; }

    bool value(std::uint64_t mask) const {
        if (mask >= values_.size()) {
            throw DomainError("event mask out of range");
        }
        return values_[mask];
    }

    bool value(const Event &a) const {
        detail::require_same_space(space_, a.space(), "TruthTable::value");
        return values_[a.mask()];
    }

    std::size_t event_count() const noexcept { return values_.size(); }

  private:
    SampleSpace space_;
    std::vector<bool> values_;
};

/// t(A n B) = t(A) t(B) for every event pair, checked exhaustively.
inline bool is_multiplicative(const TruthTable &t, std::size_t cap = 6) {
    const std::size_t n = t.space().size();
    if (n > cap) {
        throw CapacityError("exhaustive multiplicativity check is limited to " +
                            std::to_string(cap) + " histories");
    }
    const std::uint64_t events = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < events; ++a) {
        for (std::uint64_t b = a; b < events; ++b) {
            if (t.value(a & b) != (t.value(a) && t.value(b))) {
                return false;
            }
        }
    }
    return true;
}

/// t(A ^ B) = t(A) + t(B) in the two-element truth algebra (1+1=0).
inline bool is_additive(const TruthTable &t, std::size_t cap = 6) {
    const std::size_t n = t.space().size();
    if (n > cap) {
        throw CapacityError("exhaustive additivity check is limited to " +
                            std::to_string(cap) + " histories");
    }
    const std::uint64_t events = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < events; ++a) {
        for (std::uint64_t b = a; b < events; ++b) {
            if (t.value(a ^ b) != (t.value(a) != t.value(b))) {
                return false;
            }
        }
    }
    return true;
}

/// The unique support of a multiplicative, not identically false table:
/// the intersection of all true events. The all-true table characterizes
/// the empty support. Verified against the whole table before returning.
inline Event characterize_multiplicative(const TruthTable &t) {
    const std::size_t n = t.space().size();
    const std::uint64_t events = std::uint64_t{1} << n;
    const std::uint64_t full = events - 1;
    std::uint64_t support = full;
    bool any = false;
    for (std::uint64_t m = 0; m < events; ++m) {
        if (t.value(m)) {
            support &= m;
            any = true;
        }
    }
    if (!any) {
        throw DomainError("the identically-false table characterizes nothing");
    }
    for (std::uint64_t m = 0; m < events; ++m) {
        if (t.value(m) != ((support & m) == support)) {
            throw DomainError("table is not multiplicative; no support "
                              "characterizes it");
        }
    }
    return t.space().event_from_mask(support);
}

/// Preclusive: every precluded event gets "False" — equivalently, the
/// support is non-preclusive.
inline bool is_preclusive(const Valuation &v, const PrecludedFamily &family) {
    detail::require_same_space(v.space(), family.space(), "is_preclusive");
    for (const auto &m : family.maximal()) {
        if (v.support().bits().is_subset_of(m.bits())) {
            return false;
        }
    }
    return true;
}

/// w dominates v when v(A)=1 forces w(A)=1, i.e. support(w) is a subset
/// of support(v).
inline bool dominates(const Valuation &w, const Valuation &v) {
    detail::require_same_space(w.space(), v.space(), "dominates");
    return w.support().bits().is_subset_of(v.support().bits());
}

/// Primitive: preclusive with no strictly smaller preclusive support.
/// Non-preclusiveness is upward closed, so dropping single histories
/// from the support probes all proper subsets.
inline bool is_primitive(const Valuation &v, const PrecludedFamily &family) {
    if (!is_preclusive(v, family)) {
        return false;
    }
    for (std::size_t i : v.support().members()) {
        boost::dynamic_bitset<> smaller = v.support().bits();
        smaller.reset(i);
        if (smaller.none()) {
            continue;
        }
        const Event candidate(v.space(), std::move(smaller));
        if (is_non_preclusive(candidate, family)) {
            return false;
        }
    }
    return true;
}

struct InferenceCheck {
    /// Never false: v(A)=1 and v(A -> B)=1 force v(B)=1.
    bool modus_ponens_ok;
    /// Never false: v(A)=1 forces v(not A)=0.
    bool negation_rule_ok;
    /// A and its complement both "False" — allowed, reported for display.
    bool contradiction_witness;
};

/// A -> B is the event (not A) | B.
inline InferenceCheck check_inference(const Valuation &v, const Event &a,
                                      const Event &b) {
    detail::require_same_space(v.space(), a.space(), "check_inference");
    detail::require_same_space(v.space(), b.space(), "check_inference");
    const bool va = evaluate(v, a);
    const bool vb = evaluate(v, b);
    const bool v_not_a = evaluate(v, complement(a));
    const bool v_implies = evaluate(v, union_of(complement(a), b));
    InferenceCheck out;
    out.modus_ponens_ok = !(va && v_implies && !vb);
    out.negation_rule_ok = !(va && v_not_a);
    out.contradiction_witness = !va && !v_not_a;
    return out;
}

/// Every valuation over the space: one per nonempty support.
inline std::vector<Valuation>
all_valuations(const SampleSpace &space,
               std::size_t cap = limits::kSubsetScanBits) {
    const std::size_t n = space.size();
    if (n > cap || n > 64) {
        throw CapacityError("valuation enumeration over " + std::to_string(n) +
                            " histories exceeds the cap of " +
                            std::to_string(std::min<std::size_t>(cap, 64)));
    }
    std::vector<Valuation> out;
    out.reserve((std::size_t{1} << n) - 1);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        out.emplace_back(space.event_from_mask(m));
    }
    return out;
}

} // namespace qmeasure

#endif // QMEASURE_VALUATION_LOGIC_HPP
