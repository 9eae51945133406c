#pragma once

// Exact GF(2) linear algebra and constraint-code manipulation: parity-check
// matrices, codeword enumeration, rank, and shortening.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gldpc {

/// Dense binary matrix, row-major. Entries are 0/1.
class BinaryMatrix {
public:
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("BinaryMatrix: rows and cols must be >= 1");
    }

    static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw std::invalid_argument("BinaryMatrix::from_rows: empty matrix");
        BinaryMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("BinaryMatrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (rows[i][j] != 0 && rows[i][j] != 1)
                    throw std::invalid_argument("BinaryMatrix::from_rows: entries must be 0/1");
                m.set(i, j, rows[i][j]);
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int v) { entries_[r * cols_ + c] = static_cast<std::uint8_t>(v & 1); }

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> entries_;
};

namespace detail {

// Rows packed into 64-bit words, little-endian within a word.
inline std::vector<std::vector<std::uint64_t>> pack_rows(const BinaryMatrix& m) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c)) rows[r][c / 64] |= std::uint64_t(1) << (c % 64);
    return rows;
}

} // namespace detail

/// GF(2) row rank by Gaussian elimination.
inline std::size_t gf2_rank(const BinaryMatrix& m) {
    auto rows = detail::pack_rows(m);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t(1) << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & bit))
                for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// A small binary linear block code held extensionally: the full codeword
/// list (bit p of a mask is code position p) plus derived parameters.
/// Codes produced by shorten() keep no parity-check matrix.
struct ConstraintCode {
    std::optional<BinaryMatrix> parity_check;
    std::vector<std::uint32_t> codewords; // lexicographic by bit vector, position 0 first
    std::size_t length = 0;
    std::size_t dimension = 0;
    std::size_t num_checks_effective = 0; // = length - dimension
};

/// Desk-scale guard: codeword enumeration is 2^k and masks are 32-bit.
inline constexpr std::size_t kMaxCodeLength = 24;

namespace detail {

// Lexicographic order on bit vectors (position 0 most significant).
inline bool lex_less(std::uint32_t a, std::uint32_t b, std::size_t n) {
    for (std::size_t p = 0; p < n; ++p) {
        const int ab = (a >> p) & 1, bb = (b >> p) & 1;
        if (ab != bb) return ab < bb;
    }
    return false;
}

inline void sort_lex(std::vector<std::uint32_t>& cws, std::size_t n) {
    std::sort(cws.begin(), cws.end(),
              [n](std::uint32_t a, std::uint32_t b) { return lex_less(a, b, n); });
}

} // namespace detail

/// Enumerates the null space of h: row-reduce to a nullspace basis, then span
/// all 2^k combinations. Ordered lexicographically by bit vector.
inline ConstraintCode enumerate_codewords(const BinaryMatrix& h) {
    const std::size_t n = h.cols();
    if (n > kMaxCodeLength)
        throw std::length_error("enumerate_codewords: code length " + std::to_string(n) +
                                " exceeds guard " + std::to_string(kMaxCodeLength));

    // RREF with pivot bookkeeping.
    auto rows = detail::pack_rows(h);
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !((rows[pivot][0] >> col) & 1)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && ((rows[r][0] >> col) & 1)) rows[r][0] ^= rows[rank][0];
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    // One basis vector per free column: free bit set, pivot bits solved.
    std::vector<std::uint32_t> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::uint32_t v = std::uint32_t(1) << c;
        for (std::size_t r = 0; r < rank; ++r)
            if ((rows[r][0] >> c) & 1) v |= std::uint32_t(1) << pivot_col[r];
        basis.push_back(v);
    }

    ConstraintCode code;
    code.parity_check = h;
    code.length = n;
    code.dimension = basis.size();
    code.num_checks_effective = rank;
    code.codewords.reserve(std::size_t(1) << basis.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << basis.size()); ++mask) {
        std::uint32_t cw = 0;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if ((mask >> b) & 1) cw ^= basis[b];
        code.codewords.push_back(cw);
    }
    detail::sort_lex(code.codewords, n);
    return code;
}

/// Restriction to the kept positions of all codewords that vanish on the
/// removed positions. Removed position indices are 0-based.
inline ConstraintCode shorten(const ConstraintCode& code, const std::set<std::size_t>& removed_positions) {
    for (auto p : removed_positions)
        if (p >= code.length)
            throw std::out_of_range("shorten: removed position " + std::to_string(p) + " out of range");
    if (removed_positions.size() >= code.length)
        throw std::invalid_argument("shorten: at least one position must be kept");
    if (removed_positions.empty()) return code;

    std::vector<std::size_t> kept;
    std::uint32_t removed_mask = 0;
    for (std::size_t p = 0; p < code.length; ++p) {
        if (removed_positions.count(p)) removed_mask |= std::uint32_t(1) << p;
        else kept.push_back(p);
    }

    ConstraintCode out;
    out.length = kept.size();
    for (std::uint32_t cw : code.codewords) {
        if (cw & removed_mask) continue;
        std::uint32_t proj = 0;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if ((cw >> kept[i]) & 1) proj |= std::uint32_t(1) << i;
        out.codewords.push_back(proj);
    }
    detail::sort_lex(out.codewords, out.length);

    // codeword count is a power of two (linear subspace)
    std::size_t k = 0;
    while ((std::size_t(1) << k) < out.codewords.size()) ++k;
    out.dimension = k;
    out.num_checks_effective = out.length - k;
    return out;
}

/// Hamming weight of a codeword mask.
inline int weight(std::uint32_t cw) {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_popcount(cw);
#else
    int w = 0;
    while (cw) { w += cw & 1; cw >>= 1; }
    return w;
#endif
}

} // namespace gldpc
