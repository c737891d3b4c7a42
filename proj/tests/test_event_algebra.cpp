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

TEST_CASE("sample space basics") {
    const SampleSpace space = make_space(3);
    CHECK(space.size() == 3);
    CHECK(space.label(0) == "h1");
    CHECK(space.index_of("h3") == 2);
    CHECK_THROWS_AS(space.index_of("nope"), DomainError);
    CHECK_THROWS_AS(SampleSpace({"a", "a"}), DomainError);
    CHECK_THROWS_AS(SampleSpace({}), DomainError);
}

TEST_CASE("symmetric difference identities") {
    const SampleSpace space = make_space(3);
    const Event a = space.event_of({"h1", "h2"});
    const Event b = space.event_of({"h2", "h3"});

    CHECK(symmetric_difference(a, a).empty());
    CHECK(symmetric_difference(a, b).same_members(space.event_of({"h1", "h3"})));
    CHECK(symmetric_difference(a, space.empty_event()).same_members(a));
    // commutative, associative
    const Event c = space.event_of({"h1", "h3"});
    CHECK(symmetric_difference(a, b).same_members(symmetric_difference(b, a)));
    CHECK(symmetric_difference(symmetric_difference(a, b), c)
              .same_members(symmetric_difference(a, symmetric_difference(b, c))));
}

TEST_CASE("intersection identities") {
    const SampleSpace space = make_space(3);
    const Event a = space.event_of({"h1", "h2"});
    const Event b = space.event_of({"h2", "h3"});

    CHECK(intersection(a, space.full_event()).same_members(a));
    CHECK(intersection(a, b).same_members(space.event_of({"h2"})));
    CHECK(intersection(a, space.empty_event()).empty());
    CHECK(intersection(a, a).same_members(a));
}

TEST_CASE("complement") {
    const SampleSpace space = make_space(3);
    CHECK(complement(space.empty_event()).is_full());
    CHECK(complement(space.full_event()).empty());
    CHECK(complement(space.event_of({"h1"}))
              .same_members(space.event_of({"h2", "h3"})));
    const Event a = space.event_of({"h1", "h3"});
    CHECK(complement(complement(a)).same_members(a));
}

TEST_CASE("mismatched spaces refuse") {
    const SampleSpace s1 = make_space(3);
    const SampleSpace s2 = make_space(4);
    CHECK_THROWS_AS(intersection(s1.full_event(), s2.full_event()),
                    DomainError);
    CHECK_THROWS_AS(symmetric_difference(s1.full_event(), s2.full_event()),
                    DomainError);
    // Equal label content counts as the same space.
    const SampleSpace s3 = make_space(3);
    CHECK(intersection(s1.full_event(), s3.full_event()).is_full());
}

TEST_CASE("is_partition") {
    const SampleSpace space = make_space(3);
    CHECK(is_partition({space.event_of({"h1"}), space.event_of({"h2"}),
                        space.event_of({"h3"})}));
    CHECK_FALSE(is_partition(
        {space.event_of({"h1", "h2"}), space.event_of({"h2", "h3"})}));
    CHECK_FALSE(is_partition({space.event_of({"h1"})}));
    CHECK_FALSE(is_partition(
        {space.event_of({"h1", "h2", "h3"}), space.empty_event()}));
    CHECK_THROWS_AS(Partition({space.event_of({"h1"})}), DomainError);
}

TEST_CASE("coarse grained algebra") {
    const SampleSpace space = make_space(3);

    SECTION("single cell") {
        const Partition trivial({space.full_event()});
        const auto algebra = coarse_grained_algebra(trivial);
        REQUIRE(algebra.size() == 2);
        CHECK(algebra[0].empty());
        CHECK(algebra[1].is_full());
    }

    SECTION("two cells") {
        const Partition p(
            {space.event_of({"h1"}), space.event_of({"h2", "h3"})});
        const auto algebra = coarse_grained_algebra(p);
        REQUIRE(algebra.size() == 4);
        CHECK(algebra[0].empty());
        CHECK(algebra[1].same_members(space.event_of({"h1"})));
        CHECK(algebra[2].same_members(space.event_of({"h2", "h3"})));
        CHECK(algebra[3].is_full());
    }

    SECTION("closure under the Boolean operations") {
        const SampleSpace big = make_space(5);
        const Partition p({big.event_of({"h1", "h4"}), big.event_of({"h2"}),
                           big.event_of({"h3", "h5"})});
        const auto algebra = coarse_grained_algebra(p);
        REQUIRE(algebra.size() == 8);
        auto member = [&algebra](const Event &e) {
            for (const auto &x : algebra) {
                if (x.same_members(e)) {
                    return true;
                }
            }
            return false;
        };
        CHECK(member(big.empty_event()));
        CHECK(member(big.full_event()));
        for (const auto &x : algebra) {
            for (const auto &y : algebra) {
                CHECK(member(symmetric_difference(x, y)));
                CHECK(member(intersection(x, y)));
            }
        }
    }

    SECTION("cap refusal") {
        const SampleSpace big = make_space(4);
        const Partition discrete({big.event_of({"h1"}), big.event_of({"h2"}),
                                  big.event_of({"h3"}), big.event_of({"h4"})});
        CHECK_THROWS_AS(coarse_grained_algebra(discrete, 3), CapacityError);
    }
}

TEST_CASE("Boolean algebra axioms") {
    SECTION("exhaustive on a 4-history space") {
        const SampleSpace space = make_space(4);
        std::vector<Event> all;
        for (std::uint64_t m = 0; m < 16; ++m) {
            all.push_back(space.event_from_mask(m));
        }
        for (const auto &a : all) {
            for (const auto &b : all) {
                for (const auto &c : all) {
                    const Event lhs = intersection(a, symmetric_difference(b, c));
                    const Event rhs = symmetric_difference(intersection(a, b),
                                                           intersection(a, c));
                    REQUIRE(lhs.same_members(rhs));
                }
            }
        }
    }

    SECTION("random triples on a wide space") {
        const SampleSpace space = make_space(80);
        qmtest::Rng rng(20260810);
        for (int trial = 0; trial < 200; ++trial) {
            const Event a = qmtest::random_event(space, rng);
            const Event b = qmtest::random_event(space, rng);
            const Event c = qmtest::random_event(space, rng);
            const Event lhs = intersection(a, symmetric_difference(b, c));
            const Event rhs = symmetric_difference(intersection(a, b),
                                                   intersection(a, c));
            REQUIRE(lhs.same_members(rhs));
            REQUIRE(symmetric_difference(a, a).empty());
            REQUIRE(intersection(a, a).same_members(a));
        }
    }
}

TEST_CASE("event serialization order") {
    const SampleSpace space({"b", "a", "c"});
    const Event e = space.event_of({"c", "b"});
    CHECK(e.sorted_labels() == std::vector<std::string>{"b", "c"});
}
