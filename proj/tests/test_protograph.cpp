#include <catch2/catch_amalgamated.hpp>

#include "gldpc/protograph.hpp"
#include "helpers.hpp"

using gldpc::Protograph;
using gldpc::Rational;

TEST_CASE("canonical block protograph validates cleanly", "[protograph]") {
    Protograph p = testutil::hamming_block();
    auto report = gldpc::validate(p);
    REQUIRE(report.ok());
    REQUIRE(report.degrees == std::vector<std::size_t>(7, 2));
    for (const auto& row : report.base_matrix) REQUIRE(row == std::vector<int>(7, 1));
}

TEST_CASE("base matrix counts parallel edges", "[protograph]") {
    Protograph p;
    p.num_variables = 2;
    auto code = testutil::spc(3);
    p.constraints.emplace_back(code, std::vector<gldpc::Socket>{{0, 1}, {1, 1}, {2, 0}});
    auto b = p.base_matrix();
    REQUIRE(b == std::vector<std::vector<int>>{{1, 2}});
    REQUIRE(p.variable_degrees() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("design rate is an exact rational", "[protograph]") {
    CHECK(gldpc::design_rate(testutil::hamming_block()) == Rational(1, 7));
    CHECK(gldpc::design_rate(testutil::spc34_block()) == Rational(1, 4));
}

TEST_CASE("rate correction counts checks lost to shortening", "[protograph]") {
    Protograph p = testutil::hamming_block();
    CHECK(gldpc::delta_correction(p) == 0);

    // Manually shorten one node as the coupling boundary does.
    p.constraints[0].code = gldpc::shorten(p.constraints[0].code, {0, 1, 2, 3});
    p.constraints[0].sockets.resize(3);
    CHECK(gldpc::delta_correction(p) == 1); // parent 3 checks, effective 2
}

TEST_CASE("validation reports structural defects", "[protograph]") {
    SECTION("socket aimed past the variable range") {
        Protograph p = testutil::hamming_block();
        p.constraints[1].sockets[2].variable = 99;
        auto report = gldpc::validate(p);
        REQUIRE_FALSE(report.ok());
        bool mentions = false;
        for (const auto& iss : report.issues)
            if (iss.constraint && *iss.constraint == 1) mentions = true;
        CHECK(mentions);
    }

    SECTION("socket count must match the code length") {
        Protograph p = testutil::hamming_block();
        p.constraints[0].sockets.pop_back();
        REQUIRE_FALSE(gldpc::validate(p).ok());
    }

    SECTION("duplicate positions within a node") {
        Protograph p = testutil::hamming_block();
        p.constraints[0].sockets[6].position = 0;
        REQUIRE_FALSE(gldpc::validate(p).ok());
    }
}
