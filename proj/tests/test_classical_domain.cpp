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

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "test_support.hpp"

using namespace qmeasure;
using qmtest::make_space;
using qmtest::qubit_three_times;
using qmtest::three_slit_table;

namespace {

std::set<std::vector<std::string>> cell_labels(const Partition &p) {
    std::set<std::vector<std::string>> out;
    for (const auto &cell : p.cells()) {
        out.insert(cell.sorted_labels());
    }
    return out;
}

Partition partition_from_masks(const SampleSpace &space,
                               const std::vector<std::vector<std::size_t>> &cells) {
    std::vector<Event> events;
    for (const auto &cell : cells) {
        events.push_back(space.event_from_indices(cell));
    }
    return Partition(std::move(events));
}

} // namespace

TEST_CASE("classicality of partitions for the qubit coevents") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const CoeventSet coevents = solve_coevents(d, 1e-12);
    const SampleSpace space = d.space();

    SECTION("the trivial partition is always classical") {
        const auto report =
            is_classical_partition(Partition({space.full_event()}), coevents);
        CHECK(report.classical);
        for (const auto &placement : report.placements) {
            CHECK(placement.home_cell == 0);
            CHECK(placement.homomorphic);
        }
    }

    SECTION("the discrete partition splits every pair coevent") {
        std::vector<Event> singles;
        for (std::size_t i = 0; i < space.size(); ++i) {
            singles.push_back(space.event_from_indices({i}));
        }
        const auto report =
            is_classical_partition(Partition(singles), coevents);
        CHECK_FALSE(report.classical);
        for (const auto &placement : report.placements) {
            CHECK_FALSE(placement.home_cell.has_value());
            CHECK(placement.cells_touched.size() == 2);
            CHECK_FALSE(placement.homomorphic);
        }
    }

    SECTION("the worked four-cell partition is classical") {
        const Partition p({space.event_of({"001", "010", "011"}),
                           space.event_of({"100", "110", "111"}),
                           space.event_of({"000"}), space.event_of({"101"})});
        const auto report = is_classical_partition(p, coevents);
        CHECK(report.classical);
        for (const auto &placement : report.placements) {
            CHECK(placement.homomorphic);
        }
    }
}

TEST_CASE("principle classical partition") {
    SECTION("qubit: two fat cells plus the trapped histories") {
        const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
        const CoeventSet coevents = solve_coevents(d, 1e-12);
        const Partition p = principle_classical_partition(coevents, d.space());
        CHECK(cell_labels(p) ==
              std::set<std::vector<std::string>>{{"001", "010", "011"},
                                                 {"100", "110", "111"},
                                                 {"000"},
                                                 {"101"}});
        CHECK(verify_finest(p, coevents));
    }

    SECTION("three-slit: the lone coevent plus a leftover singleton") {
        const DecoherenceMatrix d = from_amplitudes(three_slit_table());
        const CoeventSet coevents = solve_coevents(d, 1e-12);
        const Partition p = principle_classical_partition(coevents, d.space());
        CHECK(cell_labels(p) ==
              std::set<std::vector<std::string>>{{"h1", "h3"}, {"h2"}});
        CHECK(verify_finest(p, coevents));
    }

    SECTION("pairwise-disjoint coevents each become a cell") {
        const SampleSpace space = make_space(6);
        const CoeventSet coevents{
            space,
            1e-12,
            {space.event_of({"h1", "h2"}), space.event_of({"h4", "h5"})}};
        const Partition p = principle_classical_partition(coevents, space);
        CHECK(cell_labels(p) == std::set<std::vector<std::string>>{
                                    {"h1", "h2"}, {"h4", "h5"}, {"h3"}, {"h6"}});
    }

    SECTION("empty coevent set refuses") {
        const SampleSpace space = make_space(3);
        CHECK_THROWS_AS(
            principle_classical_partition(CoeventSet{space, 1e-12, {}}, space),
            DomainError);
    }
}

TEST_CASE("verify_finest") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const CoeventSet coevents = solve_coevents(d, 1e-12);
    const SampleSpace space = d.space();

    SECTION("the full-space partition is classical but not finest") {
        CHECK_FALSE(verify_finest(Partition({space.full_event()}), coevents));
    }

    SECTION("discrete partitions with singleton coevents are finest") {
        const DecoherenceMatrix diag =
            qmtest::diagonal_matrix({0.25, 0.25, 0.5});
        const CoeventSet singles = solve_coevents(diag, 1e-12);
        std::vector<Event> cells;
        for (std::size_t i = 0; i < 3; ++i) {
            cells.push_back(diag.space().event_from_indices({i}));
        }
        CHECK(verify_finest(Partition(cells), singles));
    }

    SECTION("splitting a fat cell breaks classicality") {
        const Partition finer({space.event_of({"001", "010"}),
                               space.event_of({"011"}),
                               space.event_of({"100", "110", "111"}),
                               space.event_of({"000"}),
                               space.event_of({"101"})});
        CHECK_FALSE(is_classical_partition(finer, coevents).classical);
    }
}

TEST_CASE("every classical partition coarsens the principle one") {
    qmtest::Rng rng(12021);
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<std::size_t> size_pick(3, 6);
        const std::size_t n = size_pick(rng);
        const DecoherenceMatrix d =
            from_amplitudes(qmtest::random_signed_table(n, rng));
        const CoeventSet coevents = solve_coevents(d, 1e-12);
        const Partition principle =
            principle_classical_partition(coevents, d.space());
        CHECK(is_classical_partition(principle, coevents).classical);
        CHECK(verify_finest(principle, coevents));

        for (const auto &cells : qmtest::all_partitions(n)) {
            const Partition p = partition_from_masks(d.space(), cells);
            if (!is_classical_partition(p, coevents).classical) {
                continue;
            }
            // Coarsening: every principle cell sits inside one cell of p.
            for (const auto &fine : principle.cells()) {
                bool contained = false;
                for (const auto &coarse : p.cells()) {
                    if (fine.is_subset_of(coarse)) {
                        contained = true;
                        break;
                    }
                }
                REQUIRE(contained);
            }
        }
    }
}

TEST_CASE("coarse-grainings of the principle partition stay classical") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const CoeventSet coevents = solve_coevents(d, 1e-12);
    const Partition principle =
        principle_classical_partition(coevents, d.space());
    // Merge cells pairwise in every way: each merge is a coarse-graining.
    const auto &cells = principle.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            std::vector<Event> merged;
            merged.push_back(union_of(cells[i], cells[j]));
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k != i && k != j) {
                    merged.push_back(cells[k]);
                }
            }
            CHECK(is_classical_partition(Partition(merged), coevents).classical);
        }
    }
}

TEST_CASE("measure-level consistency") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const SampleSpace space = d.space();

    SECTION("the trivial partition is vacuously consistent") {
        CHECK(is_consistent_partition(d, Partition({space.full_event()}),
                                      1e-9));
    }

    SECTION("diagonal measures make every partition consistent") {
        const DecoherenceMatrix diag =
            qmtest::diagonal_matrix({0.1, 0.2, 0.3, 0.4});
        for (const auto &cells : qmtest::all_partitions(4)) {
            CHECK(is_consistent_partition(
                diag, partition_from_masks(diag.space(), cells), 1e-12));
        }
    }

    SECTION("precluded events decohere with their complement") {
        const PrecludedFamily family = enumerate_precluded(d, 1e-12);
        for (const auto &p : family.events()) {
            const Partition split({p, complement(p)});
            CHECK(is_consistent_partition(d, split, 1e-9));
        }
    }

    SECTION("an interfering split is not consistent") {
        const Partition split(
            {space.event_of({"001", "010"}), // a coevent, mu = 1/2
             complement(space.event_of({"001", "010"}))});
        // mu(union) = 1, mu match? interference decides; just pin the
        // computed verdict against a direct measure check.
        const double gap =
            measure(d, space.full_event()) -
            measure(d, space.event_of({"001", "010"})) -
            measure(d, complement(space.event_of({"001", "010"})));
        CHECK(is_consistent_partition(d, split, 1e-9) ==
              (std::abs(gap) <= 1e-9));
    }

    SECTION("strict mode sees purely imaginary interference") {
        const SampleSpace two = make_space(2);
        CMatrix m(2, 2);
        m << Complex(0.5, 0), Complex(0, 0.5), Complex(0, -0.5),
            Complex(0.5, 0);
        const DecoherenceMatrix d2 = DecoherenceMatrix::from_dense(two, m);
        const Partition split(
            {two.event_of({"h1"}), two.event_of({"h2"})});
        CHECK(is_consistent_partition(d2, split, 1e-9,
                                      ConsistencyMode::MeasureLevel));
        CHECK_FALSE(is_consistent_partition(d2, split, 1e-9,
                                            ConsistencyMode::Strict));
    }
}
