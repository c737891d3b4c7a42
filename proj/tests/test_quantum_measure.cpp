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

#include "test_support.hpp"

using namespace qmeasure;
using qmtest::make_space;
using qmtest::qubit_three_times;
using qmtest::three_slit_table;

TEST_CASE("three-slit amplitude table") {
    const DecoherenceMatrix d = from_amplitudes(three_slit_table());
    const SampleSpace space = d.space();
    CHECK(measure(d, space.event_of({"h1", "h2"})) == Catch::Approx(0.0).margin(1e-15));
    CHECK(measure(d, space.event_of({"h2", "h3"})) == Catch::Approx(0.0).margin(1e-15));
    CHECK(measure(d, space.event_of({"h1", "h2", "h3"})) ==
          Catch::Approx(1.0).margin(1e-12));
    CHECK(measure(d, space.empty_event()) == 0.0);
    // Interference can push sub-events above the total.
    CHECK(measure(d, space.event_of({"h1", "h3"})) ==
          Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("single history table") {
    const SampleSpace space = make_space(1);
    const DecoherenceMatrix d =
        from_amplitudes(AmplitudeTable(space, {Complex(1, 0)}));
    CHECK(d.dense().rows() == 1);
    CHECK(std::abs(d.entry(0, 0) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("zero total measure is degenerate") {
    const SampleSpace space = make_space(2);
    CHECK_THROWS_AS(
        from_amplitudes(AmplitudeTable(space, {Complex(1, 0), Complex(-1, 0)})),
        DegenerateInputError);
}

TEST_CASE("tables with off-unit totals are rescaled") {
    const SampleSpace space = make_space(2);
    const DecoherenceMatrix d = from_amplitudes(
        AmplitudeTable(space, {Complex(3, 0), Complex(0, 4)},
                       {"left", "right"}));
    CHECK(measure(d, space.full_event()) == Catch::Approx(1.0).margin(1e-12));
    CHECK(measure(d, space.event_of({"h1"})) ==
          Catch::Approx(9.0 / 25.0).margin(1e-12));
}

TEST_CASE("qubit measures") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const SampleSpace space = d.space();
    CHECK(measure(d, space.event_of({"000"})) ==
          Catch::Approx(0.125).margin(1e-12));
    CHECK(measure(d, space.event_of({"000", "001"})) ==
          Catch::Approx(0.0).margin(1e-12));
    CHECK(measure(d, space.event_of({"000", "011", "101", "110"})) ==
          Catch::Approx(0.0).margin(1e-12));
    CHECK(measure(d, space.event_of({"001", "010"})) > 0.1);
    CHECK(measure(d, space.full_event()) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("measure clamps hairline negatives and rejects real ones") {
    const SampleSpace space = make_space(2);

    SECTION("hairline negative clamps to zero") {
        CMatrix m(2, 2);
        m << Complex(-1e-15, 0), Complex(0, 0), Complex(0, 0),
            Complex(1.0 + 1e-15, 0);
        const DecoherenceMatrix d = DecoherenceMatrix::trusted(space, m, 1e-9);
        CHECK(measure(d, space.event_of({"h1"})) == 0.0);
    }

    SECTION("clearly negative is an invariant violation") {
        CMatrix m(2, 2);
        m << Complex(-0.5, 0), Complex(0, 0), Complex(0, 0), Complex(1.5, 0);
        const DecoherenceMatrix d = DecoherenceMatrix::trusted(space, m, 1e-9);
        CHECK_THROWS_AS(measure(d, space.event_of({"h1"})), InvariantError);
    }

    SECTION("from_dense refuses a non-PSD matrix outright") {
        CMatrix m(2, 2);
        m << Complex(-0.5, 0), Complex(0, 0), Complex(0, 0), Complex(1.5, 0);
        CHECK_THROWS_AS(DecoherenceMatrix::from_dense(space, m),
                        InvariantError);
    }

    SECTION("from_dense refuses non-Hermitian and unnormalized input") {
        CMatrix m(2, 2);
        m << Complex(0.5, 0), Complex(0.2, 0), Complex(-0.2, 0),
            Complex(0.5, 0);
        CHECK_THROWS_AS(DecoherenceMatrix::from_dense(space, m),
                        InvariantError);
        CMatrix u = CMatrix::Identity(2, 2); // sums to 2
        CHECK_THROWS_AS(DecoherenceMatrix::from_dense(space, u),
                        InvariantError);
    }
}

TEST_CASE("sum rule") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const SampleSpace space = d.space();

    SECTION("empty arguments give zero") {
        CHECK(sum_rule_residual(d, space.empty_event(), space.empty_event(),
                                space.event_of({"000"})) ==
              Catch::Approx(0.0).margin(1e-15));
    }

    SECTION("non-disjoint arguments refuse") {
        CHECK_THROWS_AS(sum_rule_residual(d, space.event_of({"000"}),
                                          space.event_of({"000", "001"}),
                                          space.event_of({"010"})),
                        DomainError);
    }

    SECTION("random disjoint triples vanish") {
        qmtest::Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            boost::dynamic_bitset<> a(8), b(8), c(8);
            std::uniform_int_distribution<int> pick(0, 3);
            for (std::size_t i = 0; i < 8; ++i) {
                switch (pick(rng)) {
                case 0:
                    a.set(i);
                    break;
                case 1:
                    b.set(i);
                    break;
                case 2:
                    c.set(i);
                    break;
                default:
                    break;
                }
            }
            const double residual =
                sum_rule_residual(d, Event(space, a), Event(space, b),
                                  Event(space, c));
            REQUIRE(std::abs(residual) <= 1e-12);
        }
    }

    SECTION("diagonal matrices are additive outright") {
        const DecoherenceMatrix diag =
            qmtest::diagonal_matrix({0.25, 0.25, 0.5});
        const SampleSpace s3 = diag.space();
        const Event a = s3.event_of({"h1"});
        const Event b = s3.event_of({"h3"});
        CHECK(measure(diag, union_of(a, b)) ==
              Catch::Approx(measure(diag, a) + measure(diag, b))
                  .margin(1e-15));
        CHECK(sum_rule_residual(diag, a, b, s3.event_of({"h2"})) ==
              Catch::Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("reconstruction from singletons and pairs") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const MeasureTable table = MeasureTable::from_matrix(d);
    const SampleSpace space = d.space();

    SECTION("degenerate sizes") {
        CHECK(reconstruct_measure(table, space.event_of({"001"})) ==
              Catch::Approx(measure(d, space.event_of({"001"}))).margin(1e-15));
        CHECK(reconstruct_measure(table, space.event_of({"001", "010"})) ==
              Catch::Approx(measure(d, space.event_of({"001", "010"})))
                  .margin(1e-15));
    }

    SECTION("three histories match the direct measure") {
        const Event a = space.event_of({"001", "010", "011"});
        CHECK(reconstruct_measure(table, a) ==
              Catch::Approx(measure(d, a)).margin(1e-12));
        CHECK(measure(d, a) == Catch::Approx(1.125).margin(1e-12));
    }

    SECTION("every event matches for a random system") {
        qmtest::Rng rng(99);
        const DecoherenceMatrix rd =
            decoherence_matrix(qmtest::random_system(rng, 10));
        const MeasureTable rt = MeasureTable::from_matrix(rd);
        const std::size_t n = rd.size();
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            const Event e = rd.space().event_from_mask(m);
            REQUIRE(std::abs(reconstruct_measure(rt, e) - measure(rd, e)) <=
                    1e-12);
        }
    }

    SECTION("missing values refuse") {
        MeasureTable partial(make_space(3));
        partial.set_singleton(0, 0.5);
        CHECK_THROWS_AS(
            reconstruct_measure(partial,
                                partial.space().event_of({"h1", "h2"})),
            DomainError);
    }
}

TEST_CASE("positivity over the whole lattice") {
    qmtest::Rng rng(313);
    const DecoherenceMatrix d =
        decoherence_matrix(qmtest::random_system(rng, 12));
    const std::size_t n = d.size();
    REQUIRE(n <= 12);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        REQUIRE(measure(d, d.space().event_from_mask(m)) >= 0.0);
    }
}

TEST_CASE("is_classical") {
    CHECK(is_classical(qmtest::diagonal_matrix({0.5, 0.25, 0.25}), 1e-12));
    CHECK_FALSE(is_classical(from_amplitudes(three_slit_table()), 1e-12));
    CHECK_FALSE(is_classical(decoherence_matrix(qubit_three_times()), 1e-12));
}

TEST_CASE("system matrix agrees with the amplitude-table matrix") {
    qmtest::Rng rng(555);
    for (int trial = 0; trial < 4; ++trial) {
        const HistoriesSystem system =
            qmtest::random_system(rng, 8, /*pure_rank1=*/true);
        const DecoherenceMatrix d = decoherence_matrix(system);
        const SampleSpace space = d.space();

        std::vector<Complex> amps;
        std::vector<std::string> classes;
        for (std::size_t i = 0; i < space.size(); ++i) {
            const History h = system.history_from_index(i);
            amps.push_back(amplitude(system, h));
            classes.push_back(std::to_string(h.outcomes.back()));
        }
        const DecoherenceMatrix da =
            from_amplitudes(AmplitudeTable(space, amps, classes));
        for (std::size_t i = 0; i < space.size(); ++i) {
            for (std::size_t j = 0; j < space.size(); ++j) {
                REQUIRE(std::abs(d.entry(i, j) - da.entry(i, j)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("measure table round trip through a real symmetric matrix") {
    const DecoherenceMatrix d = decoherence_matrix(qubit_three_times());
    const MeasureTable table = MeasureTable::from_matrix(d);
    const DecoherenceMatrix rebuilt = decoherence_from_table(table);
    const std::size_t n = d.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const Event e = d.space().event_from_mask(m);
        REQUIRE(std::abs(measure(rebuilt, e) - measure(d, e)) <= 1e-12);
    }
}
