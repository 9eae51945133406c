// Shared fixtures for the test suite: the canonical (2,7)-regular protograph
// with Hamming(7,4) constraint nodes and its memory-1 edge spreading.
#pragma once

#include <string>
#include <vector>

#include "gldpc/coupling.hpp"
#include "gldpc/gf2.hpp"
#include "gldpc/protograph.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(GLDPC_DATA_DIR) + "/" + name;
}

inline gldpc::BinaryMatrix hamming74_parity() {
    return gldpc::BinaryMatrix::from_rows({{1, 0, 0, 1, 1, 1, 0},
                                           {0, 1, 0, 1, 1, 0, 1},
                                           {0, 0, 1, 1, 0, 1, 1}});
}

inline gldpc::ConstraintCode hamming74() { return gldpc::enumerate_codewords(hamming74_parity()); }

inline gldpc::ConstraintCode spc(std::size_t n) {
    std::vector<std::vector<int>> row(1, std::vector<int>(n, 1));
    return gldpc::enumerate_codewords(gldpc::BinaryMatrix::from_rows(row));
}

// Two Hamming(7,4) constraint nodes over seven degree-2 variables. The second
// node's positions 0..6 attach to variables (3,4,5,6,0,1,2), matching the
// shipped data file.
inline gldpc::Protograph hamming_block() {
    gldpc::Protograph p;
    p.name = "hamming27";
    p.num_variables = 7;
    auto code = hamming74();
    std::vector<gldpc::Socket> s0, s1;
    const std::size_t wiring1[7] = {3, 4, 5, 6, 0, 1, 2};
    for (std::size_t q = 0; q < 7; ++q) {
        s0.push_back({q, q});
        s1.push_back({q, wiring1[q]});
    }
    p.constraints.emplace_back(code, s0);
    p.constraints.emplace_back(code, s1);
    return p;
}

// Memory-1 spreading: positions 0..3 delayed, positions 4..6 immediate, for
// both constraint nodes.
inline gldpc::EdgeSpreading hamming_spreading(const gldpc::Protograph& block) {
    std::vector<gldpc::ComponentAssignment> a;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t q = 0; q < 7; ++q) a.push_back({c, q, q < 4 ? std::size_t(1) : std::size_t(0)});
    return gldpc::spread(block, 1, a);
}

// Small (3,4)-regular single-parity-check protograph used for cheap coupled
// pipeline tests: three SPC(4) nodes over four degree-3 variables.
inline gldpc::Protograph spc34_block() {
    gldpc::Protograph p;
    p.name = "spc34";
    p.num_variables = 4;
    auto code = spc(4);
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<gldpc::Socket> s;
        for (std::size_t q = 0; q < 4; ++q) s.push_back({q, q});
        p.constraints.emplace_back(code, s);
    }
    return p;
}

inline gldpc::EdgeSpreading spc34_spreading(const gldpc::Protograph& block) {
    std::vector<gldpc::ComponentAssignment> a;
    const std::size_t comp[3][4] = {{0, 0, 0, 0}, {0, 0, 1, 1}, {1, 1, 1, 1}};
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t q = 0; q < 4; ++q) a.push_back({c, q, comp[c][q]});
    return gldpc::spread(block, 1, a);
}

} // namespace testutil
