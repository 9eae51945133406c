#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "gldpc/gf2.hpp"
#include "helpers.hpp"

using gldpc::BinaryMatrix;
using gldpc::ConstraintCode;

TEST_CASE("BinaryMatrix construction and validation", "[gf2]") {
    auto m = BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    REQUIRE(m(0, 0) == 1);
    REQUIRE(m(0, 1) == 0);
    REQUIRE(m(1, 2) == 1);

    CHECK_THROWS_AS(BinaryMatrix::from_rows({{1, 0}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({{-1, 0}}), std::invalid_argument);
}

TEST_CASE("gf2_rank", "[gf2]") {
    CHECK(gldpc::gf2_rank(BinaryMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(gldpc::gf2_rank(testutil::hamming74_parity()) == 3);
    CHECK(gldpc::gf2_rank(BinaryMatrix(2, 4)) == 0);
    // Third row is the XOR of the first two.
    CHECK(gldpc::gf2_rank(BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
}

TEST_CASE("Hamming(7,4) codeword enumeration", "[gf2]") {
    ConstraintCode code = testutil::hamming74();
    REQUIRE(code.length == 7);
    REQUIRE(code.dimension == 4);
    REQUIRE(code.num_checks_effective == 3);
    REQUIRE(code.codewords.size() == 16);

    // Every enumerated word satisfies the parity checks.
    auto h = testutil::hamming74_parity();
    for (std::uint32_t cw : code.codewords) {
        for (std::size_t r = 0; r < h.rows(); ++r) {
            int parity = 0;
            for (std::size_t c = 0; c < h.cols(); ++c) parity ^= h(r, c) & ((cw >> c) & 1);
            CHECK(parity == 0);
        }
    }

    // Weight enumerator of the (7,4) Hamming code: 1 + 7x^3 + 7x^4 + x^7.
    std::map<int, int> by_weight;
    for (std::uint32_t cw : code.codewords) ++by_weight[gldpc::weight(cw)];
    CHECK(by_weight[0] == 1);
    CHECK(by_weight[3] == 7);
    CHECK(by_weight[4] == 7);
    CHECK(by_weight[7] == 1);

    // All distinct.
    std::set<std::uint32_t> uniq(code.codewords.begin(), code.codewords.end());
    CHECK(uniq.size() == 16);
}

TEST_CASE("codeword list is lexicographic by bit vector, position 0 first", "[gf2]") {
    // SPC(3) codewords as bit vectors: (0,0,0) < (0,1,1) < (1,0,1) < (1,1,0),
    // i.e. the integer masks 0, 6, 5, 3 — not ascending integer order.
    ConstraintCode code = testutil::spc(3);
    REQUIRE(code.codewords == std::vector<std::uint32_t>{0, 6, 5, 3});

    ConstraintCode ham = testutil::hamming74();
    for (std::size_t i = 0; i + 1 < ham.codewords.size(); ++i)
        CHECK(gldpc::detail::lex_less(ham.codewords[i], ham.codewords[i + 1], ham.length));
}

TEST_CASE("shortening the Hamming code at the chain boundaries", "[gf2]") {
    ConstraintCode code = testutil::hamming74();

    SECTION("removing positions 0..3 leaves the length-3 repetition code") {
        ConstraintCode s = gldpc::shorten(code, {0, 1, 2, 3});
        REQUIRE(s.length == 3);
        REQUIRE(s.dimension == 1);
        REQUIRE(s.codewords == std::vector<std::uint32_t>{0, 7});
        CHECK(s.num_checks_effective == 2);
    }

    SECTION("removing positions 4..6 leaves the length-4 repetition code") {
        ConstraintCode s = gldpc::shorten(code, {4, 5, 6});
        REQUIRE(s.length == 4);
        REQUIRE(s.dimension == 1);
        REQUIRE(s.codewords == std::vector<std::uint32_t>{0, 15});
        CHECK(s.num_checks_effective == 3);
    }

    SECTION("empty removal set is the identity") {
        ConstraintCode s = gldpc::shorten(code, {});
        CHECK(s.codewords == code.codewords);
        CHECK(s.length == code.length);
        CHECK(s.dimension == code.dimension);
    }

    SECTION("guards") {
        CHECK_THROWS_AS(gldpc::shorten(code, {7}), std::out_of_range);
        CHECK_THROWS_AS(gldpc::shorten(code, {0, 1, 2, 3, 4, 5, 6}), std::invalid_argument);
    }
}

TEST_CASE("shorten keeps only codewords vanishing on the removed set", "[gf2]") {
    ConstraintCode code = testutil::spc(4);
    ConstraintCode s = gldpc::shorten(code, {3});
    // SPC(4) words with position 3 equal to zero are the even-weight words on
    // the remaining three positions: SPC(3).
    REQUIRE(s.length == 3);
    REQUIRE(s.dimension == 2);
    CHECK(s.codewords == testutil::spc(3).codewords);
}

TEST_CASE("enumeration guard for desk-scale code lengths", "[gf2]") {
    BinaryMatrix wide(1, gldpc::kMaxCodeLength + 1);
    CHECK_THROWS_AS(gldpc::enumerate_codewords(wide), std::length_error);
}

TEST_CASE("weight is the popcount", "[gf2]") {
    CHECK(gldpc::weight(0) == 0);
    CHECK(gldpc::weight(0b1011) == 3);
    CHECK(gldpc::weight(0x7f) == 7);
}
