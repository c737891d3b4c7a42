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
 * @file coevent_solver.hpp
 * Coevents: the minimal non-preclusive events — the potential realities
 * once measure-zero events are taken seriously.
 *
 * An event is non-preclusive iff it is contained in no maximal
 * precluded event, i.e. iff it hits the complement of every maximal
 * precluded event. Coevents are therefore exactly the minimal
 * transversals of {Omega \ M : M maximal precluded}; solve_coevents
 * computes them by Berge-style transversal multiplication with
 * antichain minimization. brute_force_coevents is the independent
 * oracle: a plain minimal-antichain sweep of the subset lattice.
 */
#ifndef QMEASURE_COEVENT_SOLVER_HPP
#define QMEASURE_COEVENT_SOLVER_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/preclusion.hpp"
#include "qmeasure/quantum_measure.hpp"

namespace qmeasure {

/// Complete, inclusion-minimal family of non-preclusive events, tied to
/// the preclusion threshold it was computed at.
struct CoeventSet {
    SampleSpace space;
    double epsilon;
    std::vector<Event> coevents; // report order: size, then label order

    bool contains(const Event &support) const {
        for (const auto &c : coevents) {
            if (c.bits() == support.bits()) {
                return true;
            }
        }
        return false;
    }
};

/// A is non-preclusive when it sits inside no maximal precluded event —
/// equivalently, A intersects the complement of each of them.
inline bool is_non_preclusive(const Event &a, const PrecludedFamily &family) {
    detail::require_same_space(a.space(), family.space(), "is_non_preclusive");
    if (a.empty()) {
        throw DomainError("the empty event is not a candidate reality");
    }
    for (const auto &m : family.maximal()) {
        if (a.bits().is_subset_of(m.bits())) {
            return false;
        }
    }
    return true;
}

namespace detail {

/// Keep only inclusion-minimal masks; result sorted by popcount then value.
inline std::vector<std::uint64_t>
minimize_masks(std::vector<std::uint64_t> masks) {
    std::sort(masks.begin(), masks.end(),
              [](std::uint64_t a, std::uint64_t b) {
                  const int pa = std::popcount(a);
                  const int pb = std::popcount(b);
                  return pa != pb ? pa < pb : a < b;
              });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t m : masks) {
        bool dominated = false;
        for (std::uint64_t small : minimal) {
            if ((small & m) == small) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            minimal.push_back(m);
        }
    }
    return minimal;
}

/// Minimal transversals of a hypergraph given as bitmask edges over n
/// vertices. An empty edge admits no transversal; an empty edge list is
/// the caller's special case.
inline std::vector<std::uint64_t>
minimal_transversals(const std::vector<std::uint64_t> &edges, std::size_t n) {
    for (std::uint64_t e : edges) {
        if (e == 0) {
            return {};
        }
    }
    std::vector<std::uint64_t> trans;
    bool first = true;
    for (std::uint64_t e : edges) {
        if (first) {
            for (std::size_t v = 0; v < n; ++v) {
                if (e & (std::uint64_t{1} << v)) {
                    trans.push_back(std::uint64_t{1} << v);
                }
            }
            first = false;
            continue;
        }
        std::vector<std::uint64_t> next;
        next.reserve(trans.size());
        for (std::uint64_t t : trans) {
            if (t & e) {
                next.push_back(t);
            } else {
                for (std::size_t v = 0; v < n; ++v) {
                    if (e & (std::uint64_t{1} << v)) {
                        next.push_back(t | (std::uint64_t{1} << v));
                    }
                }
            }
        }
        trans = minimize_masks(std::move(next));
    }
    return trans;
}

inline void check_scan_cap(std::size_t n, std::size_t cap, const char *what) {
    if (n > cap || n > 64) {
        throw CapacityError(std::string(what) + " over " + std::to_string(n) +
                            " histories exceeds the subset-scan cap of " +
                            std::to_string(std::min<std::size_t>(cap, 64)));
    }
}

inline CoeventSet make_coevent_set(const SampleSpace &space, double epsilon,
                                   const std::vector<std::uint64_t> &masks) {
    std::vector<Event> events;
    events.reserve(masks.size());
    for (std::uint64_t m : masks) {
        events.push_back(space.event_from_mask(m));
    }
    std::sort(events.begin(), events.end(), detail::EventReportOrder{});
    return CoeventSet{space, epsilon, std::move(events)};
}

} // namespace detail

/// The complete coevent set: minimal transversals of the complements of
/// the maximal precluded events. With no precluded events at all, every
/// history stands alone and the coevents are the singletons.
inline CoeventSet solve_coevents(const DecoherenceMatrix &d, double epsilon,
                                 std::size_t cap = limits::kSubsetScanBits) {
    const std::size_t n = d.size();
    detail::check_scan_cap(n, cap, "coevent solving");
    const auto maximal =
        detail::maximal_masks(detail::scan_precluded_masks(d.dense(), epsilon));
    const std::uint64_t full =
        n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> masks;
    if (maximal.empty()) {
        for (std::size_t v = 0; v < n; ++v) {
            masks.push_back(std::uint64_t{1} << v);
        }
    } else {
        std::vector<std::uint64_t> edges;
        edges.reserve(maximal.size());
        for (std::uint64_t m : maximal) {
            edges.push_back(full & ~m);
        }
        masks = detail::minimal_transversals(edges, n);
    }
    return detail::make_coevent_set(d.space(), epsilon, masks);
}

/// Independent oracle: walk all nonempty events in ascending size, keep
/// the non-preclusive ones that contain no kept event.
inline CoeventSet brute_force_coevents(const DecoherenceMatrix &d,
                                       double epsilon) {
    const std::size_t n = d.size();
    if (n > 12) {
        throw CapacityError("brute-force coevent search is limited to 12 "
                            "histories; got " +
                            std::to_string(n));
    }
    const auto maximal =
        detail::maximal_masks(detail::scan_precluded_masks(d.dense(), epsilon));
    std::vector<std::uint64_t> order;
    order.reserve((std::size_t{1} << n) - 1);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        order.push_back(m);
    }
    std::sort(order.begin(), order.end(),
              [](std::uint64_t a, std::uint64_t b) {
                  const int pa = std::popcount(a);
                  const int pb = std::popcount(b);
                  return pa != pb ? pa < pb : a < b;
              });
    std::vector<std::uint64_t> kept;
    for (std::uint64_t m : order) {
        bool non_preclusive = true;
        for (std::uint64_t big : maximal) {
            if ((m & ~big) == 0) {
                non_preclusive = false;
                break;
            }
        }
        if (!non_preclusive) {
            continue;
        }
        bool minimal = true;
        for (std::uint64_t k : kept) {
            if ((k & m) == k) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            kept.push_back(m);
        }
    }
    return detail::make_coevent_set(d.space(), epsilon, kept);
}

/// True iff no support appears in both sets. Sets computed at different
/// thresholds are not comparable.
inline bool coevent_sets_disjoint(const CoeventSet &a, const CoeventSet &b) {
    detail::require_same_space(a.space, b.space, "coevent_sets_disjoint");
    if (a.epsilon != b.epsilon) {
        throw DomainError("coevent sets computed at different preclusion "
                          "tolerances cannot be compared");
    }
    std::set<boost::dynamic_bitset<>> seen;
    for (const auto &c : a.coevents) {
        seen.insert(c.bits());
    }
    for (const auto &c : b.coevents) {
        if (seen.count(c.bits()) != 0) {
            return false;
        }
    }
    return true;
}

} // namespace qmeasure

#endif // QMEASURE_COEVENT_SOLVER_HPP
