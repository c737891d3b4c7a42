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
 * @file event_algebra.hpp
 * Finite sample spaces, events as subsets, and the Boolean algebra
 * (symmetric difference, intersection) over them. Everything is an
 * immutable value; operations are pure and safe to call concurrently.
 */
#ifndef QMEASURE_EVENT_ALGEBRA_HPP
#define QMEASURE_EVENT_ALGEBRA_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qmeasure/errors.hpp"
#include "qmeasure/limits.hpp"

namespace qmeasure {

class Event;

/// Ordered, finite space of distinct history labels. Copies share the
/// label storage, so passing SampleSpace by value is cheap.
class SampleSpace {
  public:
    explicit SampleSpace(std::vector<std::string> labels) {
        if (labels.empty()) {
            throw DomainError("sample space needs at least one history");
        }
        std::unordered_set<std::string> seen;
        seen.reserve(labels.size());
        for (const auto &label : labels) {
            if (!seen.insert(label).second) {
                throw DomainError("duplicate history label '" + label + "'");
            }
        }
        auto impl = std::make_shared<Impl>();
        impl->labels = std::move(labels);
        impl_ = std::move(impl);
    }

    std::size_t size() const noexcept { return impl_->labels.size(); }

    const std::string &label(std::size_t index) const {
        if (index >= size()) {
            throw DomainError("history index out of range");
        }
        return impl_->labels[index];
    }

    const std::vector<std::string> &labels() const noexcept {
        return impl_->labels;
    }

    std::size_t index_of(const std::string &label) const {
        const auto &index = lookup();
        auto it = index.find(label);
        if (it == index.end()) {
            throw DomainError("unknown history label '" + label + "'");
        }
        return it->second;
    }

    bool has_label(const std::string &label) const {
        return lookup().count(label) != 0;
    }

    /// Two spaces are compatible when they are the same object or carry
    /// identical label sequences.
    bool compatible_with(const SampleSpace &other) const {
        return impl_ == other.impl_ || impl_->labels == other.impl_->labels;
    }

    Event empty_event() const;
    Event full_event() const;
    Event event_of(const std::vector<std::string> &labels) const;
    Event event_from_indices(const std::vector<std::size_t> &indices) const;
    /// Bit i of `mask` selects history i. Requires size() <= 64.
    Event event_from_mask(std::uint64_t mask) const;

    /// rank[i] = position of label i in lexicographic label order; used
    /// for the "size, then label order" sort of reports.
    const std::vector<std::size_t> &label_ranks() const {
        std::call_once(impl_->ranks_once, [this] {
            std::vector<std::size_t> order(size());
            for (std::size_t i = 0; i < size(); ++i) {
                order[i] = i;
            }
            std::sort(order.begin(), order.end(),
                      [this](std::size_t a, std::size_t b) {
                          return impl_->labels[a] < impl_->labels[b];
                      });
            impl_->ranks.resize(size());
            for (std::size_t pos = 0; pos < order.size(); ++pos) {
                impl_->ranks[order[pos]] = pos;
            }
        });
        return impl_->ranks;
    }

  private:
    struct Impl {
        std::vector<std::string> labels;
        mutable std::unordered_map<std::string, std::size_t> index;
        mutable std::once_flag index_once;
        mutable std::vector<std::size_t> ranks;
        mutable std::once_flag ranks_once;
    };

    const std::unordered_map<std::string, std::size_t> &lookup() const {
        std::call_once(impl_->index_once, [this] {
            impl_->index.reserve(impl_->labels.size());
            for (std::size_t i = 0; i < impl_->labels.size(); ++i) {
                impl_->index.emplace(impl_->labels[i], i);
            }
        });
        return impl_->index;
    }

    std::shared_ptr<const Impl> impl_;
};

namespace detail {
inline void require_same_space(const SampleSpace &a, const SampleSpace &b,
                               const char *what) {
    if (!a.compatible_with(b)) {
        throw DomainError(std::string(what) + ": mismatched sample spaces");
    }
}
} // namespace detail

/// Subset of a sample space. Membership queries are O(1).
class Event {
  public:
    Event(SampleSpace space, boost::dynamic_bitset<> bits)
        : space_(std::move(space)), bits_(std::move(bits)) {
        if (bits_.size() != space_.size()) {
            throw DomainError("event bitset does not match its sample space");
        }
    }

    const SampleSpace &space() const noexcept { return space_; }
    const boost::dynamic_bitset<> &bits() const noexcept { return bits_; }

    bool contains(std::size_t index) const {
        if (index >= bits_.size()) {
            throw DomainError("history index out of range");
        }
        return bits_.test(index);
    }

    std::size_t count() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool is_full() const noexcept { return bits_.all(); }

    bool is_subset_of(const Event &other) const {
        detail::require_same_space(space_, other.space_, "is_subset_of");
        return bits_.is_subset_of(other.bits_);
    }

    bool intersects(const Event &other) const {
        detail::require_same_space(space_, other.space_, "intersects");
        return bits_.intersects(other.bits_);
    }

    bool same_members(const Event &other) const {
        detail::require_same_space(space_, other.space_, "same_members");
        return bits_ == other.bits_;
    }

    /// Member indices in ascending order.
    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        out.reserve(bits_.count());
        for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits_.find_next(i)) {
            out.push_back(i);
        }
        return out;
    }

    /// Labels of the members, sorted lexicographically (the report form).
    std::vector<std::string> sorted_labels() const {
        std::vector<std::string> out;
        out.reserve(bits_.count());
        for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits_.find_next(i)) {
            out.push_back(space_.label(i));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint64_t mask() const {
        if (space_.size() > 64) {
            throw CapacityError("mask view limited to 64 histories");
        }
        std::uint64_t m = 0;
        for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits_.find_next(i)) {
            m |= std::uint64_t{1} << i;
        }
        return m;
    }

  private:
    SampleSpace space_;
    boost::dynamic_bitset<> bits_;
};

inline Event SampleSpace::empty_event() const {
    return Event(*this, boost::dynamic_bitset<>(size()));
}

inline Event SampleSpace::full_event() const {
    boost::dynamic_bitset<> bits(size());
    bits.set();
    return Event(*this, std::move(bits));
}

inline Event SampleSpace::event_of(const std::vector<std::string> &labels) const {
    boost::dynamic_bitset<> bits(size());
    for (const auto &label : labels) {
        bits.set(index_of(label));
    }
    return Event(*this, std::move(bits));
}

inline Event
SampleSpace::event_from_indices(const std::vector<std::size_t> &indices) const {
    boost::dynamic_bitset<> bits(size());
    for (std::size_t i : indices) {
        if (i >= size()) {
            throw DomainError("history index out of range");
        }
        bits.set(i);
    }
    return Event(*this, std::move(bits));
}

inline Event SampleSpace::event_from_mask(std::uint64_t mask) const {
    if (size() > 64) {
        throw CapacityError("mask view limited to 64 histories");
    }
    boost::dynamic_bitset<> bits(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) {
            bits.set(i);
        }
    }
    return Event(*this, std::move(bits));
}

// ---- Boolean algebra -----------------------------------------------------

inline Event symmetric_difference(const Event &a, const Event &b) {
    detail::require_same_space(a.space(), b.space(), "symmetric_difference");
    return Event(a.space(), a.bits() ^ b.bits());
}

inline Event intersection(const Event &a, const Event &b) {
    detail::require_same_space(a.space(), b.space(), "intersection");
    return Event(a.space(), a.bits() & b.bits());
}

inline Event union_of(const Event &a, const Event &b) {
    detail::require_same_space(a.space(), b.space(), "union_of");
    return Event(a.space(), a.bits() | b.bits());
}

inline Event complement(const Event &a) {
    return Event(a.space(), ~a.bits());
}

inline Event difference(const Event &a, const Event &b) {
    detail::require_same_space(a.space(), b.space(), "difference");
    return Event(a.space(), a.bits() - b.bits());
}

/// True iff `cells` are nonempty, pairwise disjoint, and cover the space.
inline bool is_partition(const std::vector<Event> &cells) {
    if (cells.empty()) {
        return false;
    }
    const SampleSpace &space = cells.front().space();
    boost::dynamic_bitset<> seen(space.size());
    std::size_t total = 0;
    for (const auto &cell : cells) {
        detail::require_same_space(space, cell.space(), "is_partition");
        if (cell.empty()) {
            return false;
        }
        total += cell.count();
        seen |= cell.bits();
    }
    return total == seen.count() && seen.all();
}

/// Exhaustive, exclusive cell list. Validated at construction.
class Partition {
  public:
    explicit Partition(std::vector<Event> cells) : cells_(std::move(cells)) {
        if (!is_partition(cells_)) {
            throw DomainError("cells are not a partition of the sample space");
        }
    }

    const std::vector<Event> &cells() const noexcept { return cells_; }
    const SampleSpace &space() const noexcept { return cells_.front().space(); }
    std::size_t cell_count() const noexcept { return cells_.size(); }

    /// Index of the cell containing history i.
    std::size_t cell_of(std::size_t history) const {
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            if (cells_[c].contains(history)) {
                return c;
            }
        }
        throw DomainError("history not covered by partition"); // unreachable
    }

  private:
    std::vector<Event> cells_;
};

/// All 2^k unions of cells: the Boolean algebra the partition generates,
/// each element returned as a fine-grained Event. Order: by cell-subset
/// rank, so index 0 is the empty event and index 2^k-1 is the full space.
inline std::vector<Event>
coarse_grained_algebra(const Partition &partition,
                       std::size_t cap = limits::kSubsetScanBits) {
    const std::size_t k = partition.cell_count();
    if (k > cap) {
        throw CapacityError("coarse-grained algebra over " + std::to_string(k) +
                            " cells exceeds the enumeration cap of " +
                            std::to_string(cap));
    }
    std::vector<Event> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
        boost::dynamic_bitset<> bits(partition.space().size());
        for (std::size_t c = 0; c < k; ++c) {
            if (pick & (std::uint64_t{1} << c)) {
                bits |= partition.cells()[c].bits();
            }
        }
        out.emplace_back(partition.space(), std::move(bits));
    }
    return out;
}

namespace detail {

/// Orders events by size, then by lexicographic label order. Works on
/// label ranks so no strings are built during the sort.
struct EventReportOrder {
    bool operator()(const Event &a, const Event &b) const {
        if (a.count() != b.count()) {
            return a.count() < b.count();
        }
        const auto &ranks = a.space().label_ranks();
        std::vector<std::size_t> ra, rb;
        ra.reserve(a.count());
        rb.reserve(b.count());
        for (std::size_t i : a.members()) {
            ra.push_back(ranks[i]);
        }
        for (std::size_t i : b.members()) {
            rb.push_back(ranks[i]);
        }
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        return ra < rb;
    }
};

} // namespace detail

} // namespace qmeasure

#endif // QMEASURE_EVENT_ALGEBRA_HPP
