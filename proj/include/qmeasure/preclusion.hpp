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
 * @file preclusion.hpp
 * Measure-zero (precluded) events: full enumeration over the subset
 * lattice, the maximal antichain, zero covers, and which histories are
 * trapped inside some precluded event.
 *
 * The quantum measure is not monotone under inclusion, so finding all
 * precluded events genuinely needs the 2^|Omega| walk. The walk is a
 * DFS over the subset tree keeping per-depth row-sum buffers, so each
 * event's measure comes from an update chain no longer than |Omega| —
 * cheap, and with rounding well under the preclusion thresholds.
 */
#ifndef QMEASURE_PRECLUSION_HPP
#define QMEASURE_PRECLUSION_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/quantum_measure.hpp"

namespace qmeasure {

namespace detail {

/// Masks of all nonempty subsets with measure <= eps, DFS order.
inline std::vector<std::uint64_t> scan_precluded_masks(const CMatrix &d,
                                                       double eps) {
    const auto n = static_cast<std::size_t>(d.rows());
    std::vector<std::uint64_t> hits;
    // row_sums[level][j] = sum over members h of the current subset of
    // D(h, j); level = subset size.
    std::vector<std::vector<Complex>> row_sums(
        n + 1, std::vector<Complex>(n, Complex(0.0, 0.0)));

    struct Frame {
        std::uint64_t mask;
        double mu;
        std::size_t next;
        std::size_t level;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0.0, 0, 0});
    while (!stack.empty()) {
        Frame frame = stack.back();
        stack.pop_back();
        if (frame.next >= n) {
            continue;
        }
        const std::size_t i = frame.next;
        // Sibling after this child.
        stack.push_back({frame.mask, frame.mu, i + 1, frame.level});

        const auto ii = static_cast<Eigen::Index>(i);
        const double mu_child = frame.mu + d(ii, ii).real() +
                                2.0 * row_sums[frame.level][i].real();
        const std::uint64_t child = frame.mask | (std::uint64_t{1} << i);
        if (mu_child <= eps) {
            hits.push_back(child);
        }
        auto &next_sums = row_sums[frame.level + 1];
        next_sums = row_sums[frame.level];
        for (std::size_t j = 0; j < n; ++j) {
            next_sums[j] += d(ii, static_cast<Eigen::Index>(j));
        }
        stack.push_back({child, mu_child, i + 1, frame.level + 1});
    }
    return hits;
}

/// Inclusion-maximal masks, sorted by popcount descending then value.
inline std::vector<std::uint64_t>
maximal_masks(std::vector<std::uint64_t> masks) {
    std::sort(masks.begin(), masks.end(),
              [](std::uint64_t a, std::uint64_t b) {
                  const int pa = std::popcount(a);
                  const int pb = std::popcount(b);
                  return pa != pb ? pa > pb : a < b;
              });
    std::vector<std::uint64_t> maximal;
    for (std::uint64_t m : masks) {
        bool covered = false;
        for (std::uint64_t big : maximal) {
            if ((m & big) == m) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            maximal.push_back(m);
        }
    }
    return maximal;
}

} // namespace detail

/// All nonempty events with mu <= epsilon plus the maximal antichain
/// among them. Events come out in report order: size, then
/// lexicographic label order.
class PrecludedFamily {
  public:
    static PrecludedFamily from_events(const SampleSpace &space,
                                       std::vector<Event> events,
                                       double epsilon) {
        std::set<boost::dynamic_bitset<>> seen;
        std::vector<Event> unique;
        for (auto &event : events) {
            detail::require_same_space(space, event.space(), "PrecludedFamily");
            if (event.empty()) {
                continue; // trivially measure zero, never useful
            }
            if (seen.insert(event.bits()).second) {
                unique.push_back(std::move(event));
            }
        }
        std::sort(unique.begin(), unique.end(), detail::EventReportOrder{});

        std::vector<Event> by_size = unique;
        std::sort(by_size.begin(), by_size.end(),
                  [](const Event &a, const Event &b) {
                      return a.count() > b.count();
                  });
        std::vector<Event> maximal;
        for (const auto &event : by_size) {
            bool covered = false;
            for (const auto &big : maximal) {
                if (event.bits() != big.bits() &&
                    event.bits().is_subset_of(big.bits())) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                maximal.push_back(event);
            }
        }
        std::sort(maximal.begin(), maximal.end(), detail::EventReportOrder{});
        return PrecludedFamily(space, epsilon, std::move(unique),
                               std::move(maximal));
    }

    const SampleSpace &space() const noexcept { return space_; }
    double epsilon() const noexcept { return epsilon_; }
    const std::vector<Event> &events() const noexcept { return events_; }
    const std::vector<Event> &maximal() const noexcept { return maximal_; }

    bool lists(const Event &event) const {
        for (const auto &e : events_) {
            if (e.bits() == event.bits()) {
                return true;
            }
        }
        return false;
    }

  private:
    PrecludedFamily(SampleSpace space, double epsilon, std::vector<Event> events,
                    std::vector<Event> maximal)
        : space_(std::move(space)), epsilon_(epsilon),
          events_(std::move(events)), maximal_(std::move(maximal)) {}

    SampleSpace space_;
    double epsilon_;
    std::vector<Event> events_;
    std::vector<Event> maximal_;
};

inline PrecludedFamily
enumerate_precluded(const DecoherenceMatrix &d, double epsilon,
                    std::size_t cap = limits::kSubsetScanBits) {
    const std::size_t n = d.size();
    if (n > cap || n > 64) {
        throw CapacityError("precluded-event enumeration over " +
                            std::to_string(n) +
                            " histories exceeds the subset-scan cap of " +
                            std::to_string(std::min<std::size_t>(cap, 64)));
    }
    const auto masks = detail::scan_precluded_masks(d.dense(), epsilon);
    std::vector<Event> events;
    events.reserve(masks.size());
    for (std::uint64_t m : masks) {
        events.push_back(d.space().event_from_mask(m));
    }
    return PrecludedFamily::from_events(d.space(), std::move(events), epsilon);
}

struct ZeroCover {
    std::vector<Event> cover;
};

/// Union of all precluded events; a history in here can never be a
/// single-history reality. When the result is the full space, no
/// singleton coevent exists.
inline Event singleton_covered(const PrecludedFamily &family) {
    boost::dynamic_bitset<> bits(family.space().size());
    for (const auto &event : family.maximal()) {
        bits |= event.bits();
    }
    return Event(family.space(), std::move(bits));
}

/// A cover of Omega by maximal precluded events if one exists: greedy
/// assembly, then redundant members dropped. The cover is a certificate,
/// not a canonical object; any verified cover is as good as another.
inline std::optional<ZeroCover> find_zero_cover(const PrecludedFamily &family) {
    const Event covered = singleton_covered(family);
    if (!covered.is_full()) {
        return std::nullopt;
    }
    boost::dynamic_bitset<> uncovered(family.space().size());
    uncovered.set();
    std::vector<Event> chosen;
    while (uncovered.any()) {
        const Event *best = nullptr;
        std::size_t best_gain = 0;
        for (const auto &event : family.maximal()) {
            const std::size_t gain = (event.bits() & uncovered).count();
            if (gain > best_gain) {
                best_gain = gain;
                best = &event;
            }
        }
        uncovered -= best->bits();
        chosen.push_back(*best);
    }
    // Drop members the rest already cover.
    for (std::size_t i = chosen.size(); i-- > 0;) {
        boost::dynamic_bitset<> rest(family.space().size());
        for (std::size_t j = 0; j < chosen.size(); ++j) {
            if (j != i) {
                rest |= chosen[j].bits();
            }
        }
        if (rest.all()) {
            chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    std::sort(chosen.begin(), chosen.end(), detail::EventReportOrder{});
    return ZeroCover{std::move(chosen)};
}

/// Check a claimed cover: every member nonempty with mu <= epsilon, and
/// the union is the full space.
inline bool certify_zero_cover(const DecoherenceMatrix &d,
                               const std::vector<Event> &cover,
                               double epsilon) {
    if (cover.empty()) {
        return false;
    }
    boost::dynamic_bitset<> bits(d.space().size());
    for (const auto &event : cover) {
        detail::require_same_space(d.space(), event.space(),
                                   "certify_zero_cover");
        if (event.empty() || measure(d, event) > epsilon) {
            return false;
        }
        bits |= event.bits();
    }
    return bits.all();
}

} // namespace qmeasure

#endif // QMEASURE_PRECLUSION_HPP
