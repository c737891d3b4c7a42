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
 * @file classical_domain.hpp
 * Classical partitions: coarse-grainings under which every coevent acts
 * as an honest homomorphism. The principle classical partition — cells
 * are connected components of the coevent intersection graph, leftovers
 * become singleton cells — is the unique finest one; every classical
 * partition is a coarse-graining of it. Consistency of a partition in
 * the measure sense (cellwise additivity) is checked here as well.
 */
#ifndef QMEASURE_CLASSICAL_DOMAIN_HPP
#define QMEASURE_CLASSICAL_DOMAIN_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/coevent_solver.hpp"
#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/quantum_measure.hpp"

namespace qmeasure {

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) {
            parent_[i] = i;
        }
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) {
            parent_[y] = x;
        }
    }

  private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

struct CoeventPlacement {
    Event coevent;
    /// Cells the support touches; size 1 means homomorphic behavior.
    std::vector<std::size_t> cells_touched;
    /// Set when the support sits inside a single cell.
    std::optional<std::size_t> home_cell;
    /// Result of the exhaustive cell-algebra homomorphism check (skipped
    /// above 12 cells, where it defaults to the containment verdict).
    bool homomorphic = false;
};

struct ClassicalityReport {
    bool classical = false;
    std::vector<CoeventPlacement> placements;
};

/// A partition is classical for a coevent set iff every support lies
/// inside one cell; the induced valuation on the cell algebra is then a
/// homomorphism, which is re-verified exhaustively for up to 12 cells.
inline ClassicalityReport is_classical_partition(const Partition &partition,
                                                 const CoeventSet &coevents) {
    detail::require_same_space(partition.space(), coevents.space,
                               "is_classical_partition");
    ClassicalityReport report;
    report.classical = true;
    const std::size_t k = partition.cell_count();
    for (const auto &support : coevents.coevents) {
        CoeventPlacement placement{support, {}, std::nullopt, false};
        for (std::size_t c = 0; c < k; ++c) {
            if (support.intersects(partition.cells()[c])) {
                placement.cells_touched.push_back(c);
            }
        }
        if (placement.cells_touched.size() == 1 &&
            support.is_subset_of(partition.cells()[placement.cells_touched[0]])) {
            placement.home_cell = placement.cells_touched[0];
        }
        if (!placement.home_cell) {
            report.classical = false;
        }
        if (k <= 12) {
            // Induced valuation on cell unions: true iff the union picks
            // up every touched cell. Homomorphic iff additive, i.e. iff
            // exactly one cell is touched.
            std::uint64_t touched = 0;
            for (std::size_t c : placement.cells_touched) {
                touched |= std::uint64_t{1} << c;
            }
            bool additive = true;
            const std::uint64_t cell_sets = std::uint64_t{1} << k;
            for (std::uint64_t s1 = 0; s1 < cell_sets && additive; ++s1) {
                const bool t1 = (touched & s1) == touched;
                for (std::uint64_t s2 = s1; s2 < cell_sets; ++s2) {
                    const bool t2 = (touched & s2) == touched;
                    const bool tx = (touched & (s1 ^ s2)) == touched;
                    if (tx != (t1 != t2)) {
                        additive = false;
                        break;
                    }
                }
            }
            placement.homomorphic = additive;
        } else {
            placement.homomorphic = placement.home_cell.has_value();
        }
        report.placements.push_back(std::move(placement));
    }
    return report;
}

/// Cells: connected components of the "supports intersect" graph (each
/// component contributes the union of its supports), plus a singleton
/// cell per leftover history. Cells are ordered by smallest member.
inline Partition principle_classical_partition(const CoeventSet &coevents,
                                               const SampleSpace &space) {
    detail::require_same_space(space, coevents.space,
                               "principle_classical_partition");
    if (coevents.coevents.empty()) {
        throw DomainError("principle partition needs a nonempty coevent set");
    }
    const std::size_t n = space.size();
    detail::UnionFind components(n);
    boost::dynamic_bitset<> covered(n);
    for (const auto &support : coevents.coevents) {
        const auto members = support.members();
        for (std::size_t m = 1; m < members.size(); ++m) {
            components.unite(members[0], members[m]);
        }
        covered |= support.bits();
    }
    std::map<std::size_t, boost::dynamic_bitset<>> cells;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root =
            covered.test(i) ? components.find(i) : n + i; // leftovers alone
        auto [it, fresh] = cells.try_emplace(root, n);
        (void)fresh;
        it->second.set(i);
    }
    std::vector<std::pair<std::size_t, boost::dynamic_bitset<>>> ordered;
    ordered.reserve(cells.size());
    for (auto &[root, bits] : cells) {
        const std::size_t first = bits.find_first();
        ordered.emplace_back(first, std::move(bits));
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<Event> cell_events;
    cell_events.reserve(ordered.size());
    for (auto &[first, bits] : ordered) {
        cell_events.emplace_back(space, std::move(bits));
    }
    return Partition(std::move(cell_events));
}

/// True iff the partition is classical and no classical partition
/// strictly refines it: every multi-history cell resists being split in
/// two without cutting a contained coevent.
inline bool verify_finest(const Partition &partition, const CoeventSet &coevents,
                          std::size_t cell_cap = 20) {
    if (!is_classical_partition(partition, coevents).classical) {
        return false;
    }
    for (const auto &cell : partition.cells()) {
        const auto members = cell.members();
        if (members.size() < 2) {
            continue;
        }
        if (members.size() > cell_cap) {
            throw CapacityError("refinement search over a cell of " +
                                std::to_string(members.size()) +
                                " histories exceeds the cap of " +
                                std::to_string(cell_cap));
        }
        std::vector<const Event *> inside;
        for (const auto &support : coevents.coevents) {
            if (support.is_subset_of(cell)) {
                inside.push_back(&support);
            }
        }
        // Nontrivial bipartitions of the cell; fixing member 0 on the
        // left halves the count and skips the mirror duplicates. The
        // all-ones pick would leave the right side empty, so stop short.
        const std::uint64_t halves = std::uint64_t{1} << (members.size() - 1);
        for (std::uint64_t pick = 0; pick + 1 < halves; ++pick) {
            boost::dynamic_bitset<> left(partition.space().size());
            left.set(members[0]);
            for (std::size_t m = 1; m < members.size(); ++m) {
                if (pick & (std::uint64_t{1} << (m - 1))) {
                    left.set(members[m]);
                }
            }
            bool splits_coevent = false;
            for (const Event *support : inside) {
                const bool hits_left = support->bits().intersects(left);
                const bool inside_left = support->bits().is_subset_of(left);
                if (hits_left && !inside_left) {
                    splits_coevent = true;
                    break;
                }
            }
            if (!splits_coevent) {
                return false; // found a finer classical partition
            }
        }
    }
    return true;
}

enum class ConsistencyMode {
    /// mu(C_i | C_j) = mu(C_i) + mu(C_j) within tol for all cell pairs.
    MeasureLevel,
    /// Additionally the summed off-diagonal block of each cell pair
    /// vanishes in magnitude (imaginary part included).
    Strict,
};

/// Measure-level decoherence of a partition. Pairwise additivity over
/// cells extends to all cell unions by the three-event sum rule.
inline bool is_consistent_partition(const DecoherenceMatrix &d,
                                    const Partition &partition, double tol,
                                    ConsistencyMode mode =
                                        ConsistencyMode::MeasureLevel) {
    detail::require_same_space(d.space(), partition.space(),
                               "is_consistent_partition");
    const auto &cells = partition.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const double gap = measure(d, union_of(cells[i], cells[j])) -
                               measure(d, cells[i]) - measure(d, cells[j]);
            if (std::abs(gap) > tol) {
                return false;
            }
            if (mode == ConsistencyMode::Strict) {
                Complex block(0.0, 0.0);
                for (std::size_t a : cells[i].members()) {
                    for (std::size_t b : cells[j].members()) {
                        block += d.entry(a, b);
                    }
                }
                if (std::abs(block) > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace qmeasure

#endif // QMEASURE_CLASSICAL_DOMAIN_HPP
