#include <catch2/catch_amalgamated.hpp>

#include "gldpc/coupling.hpp"
#include "helpers.hpp"

using gldpc::CoupledProtograph;
using gldpc::Protograph;
using gldpc::Rational;

TEST_CASE("edge spreading splits the base matrix into component matrices", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    REQUIRE(s.memory == 1);

    auto b0 = gldpc::component_base_matrix(block, s, 0);
    auto b1 = gldpc::component_base_matrix(block, s, 1);
    CHECK(b0 == std::vector<std::vector<int>>{{0, 0, 0, 0, 1, 1, 1}, {1, 1, 1, 0, 0, 0, 0}});
    CHECK(b1 == std::vector<std::vector<int>>{{1, 1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1, 1}});

    // Components must sum back to the block base matrix.
    auto b = block.base_matrix();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j) CHECK(b0[i][j] + b1[i][j] == b[i][j]);
}

TEST_CASE("spread rejects bad assignments", "[coupling]") {
    Protograph block = testutil::hamming_block();

    SECTION("duplicate assignment") {
        std::vector<gldpc::ComponentAssignment> a;
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t q = 0; q < 7; ++q) a.push_back({c, q, 0});
        a.push_back({0, 3, 1});
        CHECK_THROWS_AS(gldpc::spread(block, 1, a), std::invalid_argument);
    }

    SECTION("uncovered socket") {
        std::vector<gldpc::ComponentAssignment> a;
        for (std::size_t q = 0; q < 7; ++q) a.push_back({0, q, 0});
        CHECK_THROWS_AS(gldpc::spread(block, 1, a), std::invalid_argument);
    }

    SECTION("component index beyond the memory") {
        std::vector<gldpc::ComponentAssignment> a;
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t q = 0; q < 7; ++q) a.push_back({c, q, q == 0 ? 2u : 0u});
        CHECK_THROWS_AS(gldpc::spread(block, 1, a), std::out_of_range);
    }
}

TEST_CASE("terminated chain: structure, boundary codes, and rate", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    CoupledProtograph cp = gldpc::terminate(block, s, 7);

    REQUIRE(cp.kind == gldpc::CouplingKind::terminated);
    REQUIRE(cp.factor == 7);
    REQUIRE(cp.realized.num_variables == 49);
    REQUIRE(cp.realized.constraints.size() == 16); // 2 per time slot, slots 0..7
    CHECK(cp.warnings.empty());
    REQUIRE(gldpc::validate(cp.realized).ok());

    // Every variable keeps its block degree; boundary shortening removes
    // sockets from constraints, never from in-range variables.
    CHECK(cp.realized.variable_degrees() == std::vector<std::size_t>(49, 2));

    // Rate (L-4)/(7L) = 1 - (6(L+1)-2)/(7L): the two-check correction.
    CHECK(gldpc::design_rate(cp.realized) == Rational(3, 49));
    CHECK(gldpc::delta_correction(cp.realized) == 2);

    // Time-0 nodes lose their delayed sockets and collapse to the length-3
    // repetition code {000,111}; final-slot nodes collapse to {0000,1111}.
    std::size_t len3 = 0, len4 = 0, full = 0;
    for (std::size_t i = 0; i < cp.realized.constraints.size(); ++i) {
        const auto& cn = cp.realized.constraints[i];
        const std::size_t t = cp.time_of_constraint[i];
        if (cn.code.length == 3) {
            ++len3;
            CHECK(t == 0);
            CHECK(cn.code.dimension == 1);
            CHECK(cn.code.codewords == std::vector<std::uint32_t>{0, 7});
        } else if (cn.code.length == 4) {
            ++len4;
            CHECK(t == 7);
            CHECK(cn.code.dimension == 1);
            CHECK(cn.code.codewords == std::vector<std::uint32_t>{0, 15});
        } else {
            ++full;
            CHECK(cn.code.length == 7);
            CHECK(cn.code.dimension == 4);
        }
        CHECK(cn.parent_checks == 3);
    }
    CHECK(len3 == 2);
    CHECK(len4 == 2);
    CHECK(full == 12);

    // Sockets respect causality: a component-i socket of a time-t constraint
    // lands on a variable of time t-i.
    for (std::size_t i = 0; i < cp.realized.constraints.size(); ++i)
        for (const auto& sk : cp.realized.constraints[i].sockets) {
            const std::size_t vt = cp.time_of_variable[sk.variable];
            const std::size_t ct = cp.time_of_constraint[i];
            CHECK((vt == ct || vt + 1 == ct));
        }
}

TEST_CASE("terminated rate formula holds across the factor range", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    for (std::size_t L = 5; L <= 20; ++L) {
        CoupledProtograph cp = gldpc::terminate(block, s, L);
        CHECK(gldpc::design_rate(cp.realized) ==
              Rational(1) - Rational(6 * (L + 1) - 2, 7 * L));
    }
}

TEST_CASE("tail-biting ring: full nodes everywhere, block rate", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    CoupledProtograph cp = gldpc::tailbite(block, s, 4);

    REQUIRE(cp.kind == gldpc::CouplingKind::tailbiting);
    REQUIRE(cp.realized.num_variables == 28);
    REQUIRE(cp.realized.constraints.size() == 8);
    REQUIRE(gldpc::validate(cp.realized).ok());
    CHECK(cp.realized.variable_degrees() == std::vector<std::size_t>(28, 2));
    CHECK(gldpc::design_rate(cp.realized) == Rational(1, 7));
    CHECK(gldpc::delta_correction(cp.realized) == 0);
    for (const auto& cn : cp.realized.constraints) {
        CHECK(cn.code.length == 7);
        CHECK(cn.code.dimension == 4);
    }

    // Wrap-around: component-i sockets of a time-t constraint land on
    // variables of time (t - i) mod lambda.
    for (std::size_t i = 0; i < cp.realized.constraints.size(); ++i)
        for (const auto& sk : cp.realized.constraints[i].sockets) {
            const std::size_t vt = cp.time_of_variable[sk.variable];
            const std::size_t ct = cp.time_of_constraint[i];
            CHECK(((ct + 4 - vt) % 4 == 0 || (ct + 4 - vt) % 4 == 1));
        }
}

TEST_CASE("unit tail-biting factor reproduces the block protograph", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    CoupledProtograph cp = gldpc::tailbite(block, s, 1);

    REQUIRE(cp.realized.num_variables == block.num_variables);
    REQUIRE(cp.realized.constraints.size() == block.constraints.size());
    CHECK(cp.realized.base_matrix() == block.base_matrix());
    for (std::size_t i = 0; i < block.constraints.size(); ++i) {
        CHECK(cp.realized.constraints[i].code.codewords == block.constraints[i].code.codewords);
        // Wrapping every component to time zero restores the block wiring.
        for (const auto& sk : block.constraints[i].sockets) {
            bool found = false;
            for (const auto& rk : cp.realized.constraints[i].sockets)
                if (rk.position == sk.position && rk.variable == sk.variable) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("tail-biting factor below the memory is rejected", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    CHECK_THROWS_AS(gldpc::tailbite(block, s, 0), std::invalid_argument);

    // Memory-2 spreading programme on the SPC mini block: lambda=1 < m_s.
    Protograph mini = testutil::spc34_block();
    std::vector<gldpc::ComponentAssignment> a;
    const std::size_t comp[3][4] = {{0, 0, 0, 0}, {0, 1, 1, 2}, {2, 2, 2, 2}};
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t q = 0; q < 4; ++q) a.push_back({c, q, comp[c][q]});
    gldpc::EdgeSpreading s2 = gldpc::spread(mini, 2, a);
    CHECK_THROWS_AS(gldpc::tailbite(mini, s2, 1), std::invalid_argument);
    CHECK_NOTHROW(gldpc::tailbite(mini, s2, 2));
}

TEST_CASE("memory-0 spreading produces disjoint copies", "[coupling]") {
    Protograph block = testutil::hamming_block();
    std::vector<gldpc::ComponentAssignment> a;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t q = 0; q < 7; ++q) a.push_back({c, q, 0});
    gldpc::EdgeSpreading s = gldpc::spread(block, 0, a);

    CoupledProtograph term = gldpc::terminate(block, s, 3);
    REQUIRE(term.realized.num_variables == 21);
    REQUIRE(term.realized.constraints.size() == 6);
    CHECK(gldpc::design_rate(term.realized) == Rational(1, 7)); // no rate loss
    CHECK(gldpc::delta_correction(term.realized) == 0);
    for (const auto& cn : term.realized.constraints) CHECK(cn.code.length == 7);

    CoupledProtograph ring = gldpc::tailbite(block, s, 3);
    REQUIRE(ring.realized.num_variables == 21);
    CHECK(gldpc::design_rate(ring.realized) == Rational(1, 7));
}

TEST_CASE("constraints losing every socket are dropped with a warning", "[coupling]") {
    // One SPC(2) node whose sockets are all delayed: at time 0 the node has
    // nothing left and must disappear from the realized graph.
    Protograph p;
    p.num_variables = 2;
    auto code = testutil::spc(2);
    p.constraints.emplace_back(code, std::vector<gldpc::Socket>{{0, 0}, {1, 1}});
    gldpc::EdgeSpreading s =
        gldpc::spread(p, 1, {{0, 0, 1}, {0, 1, 1}});

    gldpc::CoupledProtograph cp = gldpc::terminate(p, s, 1);
    REQUIRE(cp.warnings.size() == 1);
    REQUIRE(cp.realized.constraints.size() == 1);
    CHECK(cp.realized.num_variables == 2);
    CHECK(cp.realized.constraints[0].code.length == 2);
}

TEST_CASE("termination factor must be positive", "[coupling]") {
    Protograph block = testutil::hamming_block();
    gldpc::EdgeSpreading s = testutil::hamming_spreading(block);
    CHECK_THROWS_AS(gldpc::terminate(block, s, 0), std::invalid_argument);
}
