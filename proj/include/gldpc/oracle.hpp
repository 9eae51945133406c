#pragma once

// Independent ground-truth generators. These validate the enumerator and
// spectral machinery: an exact permutation-enumeration average, the exact
// product-formula average, and a primal grid-search oracle for the per-node
// exponent. All exact arithmetic is rational; guards are hard size limits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gldpc/enumerators.hpp"
#include "gldpc/protograph.hpp"

namespace gldpc {

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= static_cast<unsigned>(n - i);
        out /= static_cast<unsigned>(i + 1);
    }
    return out;
}

/// Ensemble-average number of weight-d codewords from the product formula:
/// product over constraints of finite_count, times binom(N, d_j)^(1 - q_j).
inline Rational product_formula_average(const Protograph& p, std::size_t N, const std::vector<std::size_t>& d) {
    if (N > 64) throw std::invalid_argument("product_formula_average: N exceeds guard (64)");
    if (d.size() != p.num_variables) throw std::invalid_argument("product_formula_average: weight arity mismatch");
    for (auto dj : d)
        if (dj > N) return Rational(0);
    Rational avg = 1;
    for (const auto& gc : p.constraints) {
        std::vector<std::size_t> w(gc.code.length);
        for (const auto& s : gc.sockets) w[s.position] = d[s.variable];
        avg *= Rational(finite_count(gc.code, N, w));
        if (avg == 0) return avg;
    }
    const auto degrees = p.variable_degrees();
    for (std::size_t j = 0; j < p.num_variables; ++j) {
        const BigInt b = binomial(N, d[j]);
        for (std::size_t q = 1; q < degrees[j]; ++q) avg /= Rational(b);
    }
    return avg;
}

/// Exact ensemble average by enumerating permutation assignments on every
/// edge. One permutation per constraint is pinned to the identity: composing
/// all of a constraint's edge permutations with a common relabeling of that
/// constraint's copies is a count-preserving bijection of assignments, so the
/// average over the quotient equals the average over the full product space.
inline Rational brute_force_average(const Protograph& p, std::size_t N, const std::vector<std::size_t>& d) {
    if (N > 3) throw std::invalid_argument("brute_force_average: N exceeds guard (3)");
    std::size_t E = 0;
    for (const auto& gc : p.constraints) E += gc.code.length;
    if (E > 6) throw std::invalid_argument("brute_force_average: edge count exceeds guard (6)");
    if (d.size() != p.num_variables) throw std::invalid_argument("brute_force_average: weight arity mismatch");
    for (auto dj : d)
        if (dj > N) return Rational(0);

    std::vector<std::vector<std::size_t>> perms; // all permutations of 0..N-1
    {
        std::vector<std::size_t> base(N);
        std::iota(base.begin(), base.end(), std::size_t{0});
        do perms.push_back(base);
        while (std::next_permutation(base.begin(), base.end()));
    }

    // per-variable supports of the requested weight
    std::vector<std::vector<std::uint32_t>> supports(p.num_variables);
    for (std::size_t j = 0; j < p.num_variables; ++j)
        for (std::uint32_t m = 0; m < (1u << N); ++m)
            if (static_cast<std::size_t>(__builtin_popcount(m)) == d[j]) supports[j].push_back(m);

    // free edges: every socket except each constraint's first one
    struct EdgeRef {
        std::size_t constraint, position;
    };
    std::vector<EdgeRef> free_edges;
    for (std::size_t c = 0; c < p.constraints.size(); ++c)
        for (std::size_t q = 1; q < p.constraints[c].code.length; ++q) free_edges.push_back({c, q});

    std::vector<std::vector<std::size_t>> assign(p.constraints.size()); // perm index per socket position
    for (std::size_t c = 0; c < p.constraints.size(); ++c) assign[c].assign(p.constraints[c].code.length, 0);

    auto var_at = [&](std::size_t c, std::size_t q) -> std::size_t {
        for (const auto& s : p.constraints[c].sockets)
            if (s.position == q) return s.variable;
        throw std::logic_error("brute_force_average: missing socket");
    };

    // codeword lists are lex-ordered by bit vector, not by integer value, so
    // membership needs value-sorted copies
    std::vector<std::vector<std::uint32_t>> sorted_cws(p.constraints.size());
    for (std::size_t c = 0; c < p.constraints.size(); ++c) {
        sorted_cws[c] = p.constraints[c].code.codewords;
        std::sort(sorted_cws[c].begin(), sorted_cws[c].end());
    }

    BigInt total = 0;
    std::vector<std::uint32_t> x(p.num_variables, 0); // copy bitmask per variable

    auto count_vectors = [&]() {
        BigInt cnt = 0;
        std::vector<std::size_t> idx(p.num_variables, 0);
        while (true) {
            for (std::size_t j = 0; j < p.num_variables; ++j) x[j] = supports[j][idx[j]];
            bool ok = true;
            for (std::size_t c = 0; c < p.constraints.size() && ok; ++c) {
                const auto& gc = p.constraints[c];
                for (std::size_t m = 0; m < N && ok; ++m) {
                    std::uint32_t word = 0;
                    for (std::size_t q = 0; q < gc.code.length; ++q) {
                        const std::size_t copy = perms[assign[c][q]][m];
                        if ((x[var_at(c, q)] >> copy) & 1) word |= std::uint32_t(1) << q;
                    }
                    ok = std::binary_search(sorted_cws[c].begin(), sorted_cws[c].end(), word);
                }
            }
            if (ok) ++cnt;
            std::size_t j = 0;
            for (; j < p.num_variables; ++j) {
                if (++idx[j] < supports[j].size()) break;
                idx[j] = 0;
            }
            if (j == p.num_variables) break;
        }
        return cnt;
    };

    // odometer over permutation choices for the free edges
    std::vector<std::size_t> choice(free_edges.size(), 0);
    while (true) {
        for (std::size_t e = 0; e < free_edges.size(); ++e)
            assign[free_edges[e].constraint][free_edges[e].position] = choice[e];
        total += count_vectors();
        std::size_t e = 0;
        for (; e < free_edges.size(); ++e) {
            if (++choice[e] < perms.size()) break;
            choice[e] = 0;
        }
        if (e == free_edges.size()) break;
    }
    BigInt num_assignments = 1;
    for (std::size_t e = 0; e < free_edges.size(); ++e) num_assignments *= static_cast<unsigned>(perms.size());
    return Rational(total) / Rational(num_assignments);
}

/// Primal oracle for node_exponent: exhaustive search over gridded probability
/// distributions on the codeword set, maximizing entropy subject to
/// per-position marginals within grid_step (inclusive) of tau.
inline double primal_entropy_grid(const ConstraintCode& code, const std::vector<double>& tau, double grid_step) {
    if (code.codewords.size() > 16) throw std::invalid_argument("primal_entropy_grid: more than 16 codewords");
    if (tau.size() != code.length) throw std::invalid_argument("primal_entropy_grid: tau arity mismatch");
    const std::size_t K = code.codewords.size();
    const auto M = static_cast<std::size_t>(std::llround(1.0 / grid_step));
    if (M == 0) throw std::invalid_argument("primal_entropy_grid: grid step too large");

    std::vector<std::vector<std::size_t>> bit(K, std::vector<std::size_t>(code.length, 0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t pp = 0; pp < code.length; ++pp) bit[i][pp] = (code.codewords[i] >> pp) & 1;

    // precomputed n*ln(n) and suffix flags: does any/do all codewords >= i have bit p
    std::vector<double> nlogn(M + 1, 0.0);
    for (std::size_t n = 2; n <= M; ++n) nlogn[n] = static_cast<double>(n) * std::log(static_cast<double>(n));
    std::vector<std::vector<char>> any_after(K + 1, std::vector<char>(code.length, 0));
    std::vector<std::vector<char>> all_after(K + 1, std::vector<char>(code.length, 1));
    for (std::size_t i = K; i-- > 0;)
        for (std::size_t pp = 0; pp < code.length; ++pp) {
            any_after[i][pp] = any_after[i + 1][pp] | static_cast<char>(bit[i][pp]);
            all_after[i][pp] = all_after[i + 1][pp] & static_cast<char>(bit[i][pp]);
        }

    const double slack = grid_step + 1e-12; // closed ball: counts within one grid cell of the target
    double best = -1;
    std::vector<std::size_t> marg(code.length, 0);

    // zig-zag value order around the uniform share so good leaves appear early
    auto candidate_values = [&](std::size_t remaining_mass, std::size_t remaining_parts) {
        std::vector<std::size_t> vals;
        const auto center = static_cast<long long>(remaining_mass / std::max<std::size_t>(remaining_parts, 1));
        for (long long off = 0; vals.size() <= remaining_mass; ++off) {
            for (long long sgn : {+1LL, -1LL}) {
                if (off == 0 && sgn < 0) continue;
                const long long v = center + sgn * off;
                if (v >= 0 && v <= static_cast<long long>(remaining_mass)) vals.push_back(static_cast<std::size_t>(v));
            }
            if (off > static_cast<long long>(remaining_mass)) break;
        }
        return vals;
    };

    auto feasible_partial = [&](std::size_t i, std::size_t S) {
        for (std::size_t pp = 0; pp < code.length; ++pp) {
            const double lo = (static_cast<double>(marg[pp]) + (all_after[i][pp] ? static_cast<double>(S) : 0.0)) /
                              static_cast<double>(M);
            const double hi = (static_cast<double>(marg[pp]) + (any_after[i][pp] ? static_cast<double>(S) : 0.0)) /
                              static_cast<double>(M);
            if (lo > tau[pp] + slack || hi < tau[pp] - slack) return false;
        }
        return true;
    };

    double partial_nlogn = 0;
    auto entropy_bound = [&](std::size_t S, std::size_t R) {
        double tail = 0;
        if (S > 0 && R > 0) tail = static_cast<double>(S) * std::log(static_cast<double>(S) / static_cast<double>(R));
        if (S > 0 && R == 0) return -1e30;
        return std::log(static_cast<double>(M)) - (partial_nlogn + tail) / static_cast<double>(M);
    };

    std::vector<std::size_t> n(K, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t S) -> void {
        if (entropy_bound(S, K - i) <= best + 1e-13) return;
        if (!feasible_partial(i, S)) return;
        if (i == K) {
            if (S != 0) return;
            const double h = std::log(static_cast<double>(M)) - partial_nlogn / static_cast<double>(M);
            if (h > best) best = h;
            return;
        }
        for (std::size_t v : candidate_values(S, K - i)) {
            n[i] = v;
            partial_nlogn += nlogn[v];
            for (std::size_t pp = 0; pp < code.length; ++pp) marg[pp] += v * bit[i][pp];
            self(self, i + 1, S - v);
            for (std::size_t pp = 0; pp < code.length; ++pp) marg[pp] -= v * bit[i][pp];
            partial_nlogn -= nlogn[v];
        }
    };
    rec(rec, 0, M);
    if (best < 0) throw std::domain_error("primal_entropy_grid: no feasible gridded distribution");
    return best;
}

// ---------------------------------------------------------------------------
// Verification suite (shared by the test suite and the CLI verify subcommand).

struct VerificationCheck {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct VerificationOptions {
    std::uint64_t seed = 42;
    int instances = 20;
    std::size_t max_N = 3;     // above the brute-force guard -> skipped entries
    std::size_t max_edges = 6; // likewise
    bool perturb_product_formula = false; // test hook: inject a deliberate mismatch
};

namespace detail {

struct TinyInstance {
    Protograph p;
    std::size_t N;
    std::vector<std::size_t> d;
    std::string describe() const {
        std::ostringstream os;
        os << "n_v=" << p.num_variables << " constraints=" << p.constraints.size() << " N=" << N << " d=(";
        for (std::size_t j = 0; j < d.size(); ++j) os << (j ? "," : "") << d[j];
        os << ")";
        return os.str();
    }
};

inline ConstraintCode random_tiny_code(std::mt19937_64& rng, std::size_t length) {
    while (true) {
        const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 2);
        std::vector<std::vector<int>> h(rows, std::vector<int>(length, 0));
        bool nonzero = false;
        for (auto& row : h) {
            for (auto& v : row) v = static_cast<int>(rng() % 2);
            for (int v : row) nonzero |= v != 0;
        }
        if (!nonzero) continue;
        ConstraintCode code = enumerate_codewords(BinaryMatrix::from_rows(h));
        if (code.dimension >= 1 && code.dimension < length) return code;
    }
}

inline TinyInstance random_tiny_instance(std::mt19937_64& rng) {
    while (true) {
        const std::size_t num_constraints = 1 + rng() % 2;
        std::vector<std::size_t> lengths;
        std::size_t total = 0;
        for (std::size_t c = 0; c < num_constraints; ++c) {
            const std::size_t len = 2 + rng() % 2;
            lengths.push_back(len);
            total += len;
        }
        if (total > 6) continue;
        const std::size_t n_v = 1 + rng() % total;
        Protograph p;
        p.name = "tiny";
        p.num_variables = n_v;
        std::vector<bool> used(n_v, false);
        for (std::size_t c = 0; c < num_constraints; ++c) {
            GeneralizedConstraint gc;
            gc.code = random_tiny_code(rng, lengths[c]);
            gc.parent_checks = gc.code.num_checks_effective;
            for (std::size_t q = 0; q < lengths[c]; ++q) {
                const auto j = static_cast<std::size_t>(rng() % n_v);
                gc.sockets.push_back({q, j});
                used[j] = true;
            }
            p.constraints.push_back(std::move(gc));
        }
        if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; })) continue;
        TinyInstance inst;
        inst.N = 2 + rng() % 2;
        inst.d.resize(n_v);
        for (auto& dj : inst.d) dj = rng() % (inst.N + 1);
        inst.p = std::move(p);
        return inst;
    }
}

} // namespace detail

inline std::vector<VerificationCheck> run_verification(const VerificationOptions& opts = {}) {
    std::vector<VerificationCheck> out;

    // 1) exact cross-oracle equality on random tiny instances
    if (opts.max_N > 3 || opts.max_edges > 6) {
        out.push_back({"product-vs-brute", false, true,
                       "requested sizes exceed the brute-force guard (N<=3, edges<=6); check skipped"});
    } else {
        std::mt19937_64 rng(opts.seed);
        bool all_ok = true;
        std::string detail;
        for (int k = 0; k < opts.instances; ++k) {
            detail::TinyInstance inst = detail::random_tiny_instance(rng);
            const Rational brute = brute_force_average(inst.p, inst.N, inst.d);
            Rational prod = product_formula_average(inst.p, inst.N, inst.d);
            if (opts.perturb_product_formula && k == 3) prod = prod * 2 + 1; // corrupts zero values too
            if (brute != prod) {
                all_ok = false;
                std::ostringstream os;
                os << "mismatch on instance " << k << " [" << inst.describe() << "]: brute=" << brute
                   << " product=" << prod;
                detail = os.str();
                break;
            }
        }
        out.push_back({"product-vs-brute", all_ok, false,
                       all_ok ? std::to_string(opts.instances) + " instances, exact rational equality" : detail});
    }

    // 2) dual exponent vs primal grid oracle
    {
        std::vector<std::vector<int>> spc3{{1, 1, 1}};
        ConstraintCode spc = enumerate_codewords(BinaryMatrix::from_rows(spc3));
        bool ok = true;
        std::string detail;
        // interior taus only: on a hull face the max-entropy gradient is
        // unbounded and the slack ball of the gridded primal overshoots
        const std::vector<std::vector<double>> taus = {{0.5, 0.5, 0.5}, {0.25, 0.5, 0.5}, {0.4, 0.65, 0.65}};
        for (const auto& tau : taus) {
            const double dual = node_exponent(spc, tau).value;
            const double primal = primal_entropy_grid(spc, tau, 0.01);
            if (std::abs(dual - primal) > 0.02) {
                ok = false;
                std::ostringstream os;
                os << "SPC(3) tau mismatch: dual=" << dual << " primal=" << primal;
                detail = os.str();
            }
        }
        std::vector<std::vector<int>> h1{{1, 0, 0, 1, 1, 1, 0}, {0, 1, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 0, 1, 1}};
        ConstraintCode ham = enumerate_codewords(BinaryMatrix::from_rows(h1));
        const std::vector<double> tau7(7, 0.5);
        const double dual = node_exponent(ham, tau7).value;
        const double primal = primal_entropy_grid(ham, tau7, 1.0 / 16.0);
        if (std::abs(dual - primal) > 0.02) {
            ok = false;
            std::ostringstream os;
            os << "Hamming tau=1/2 mismatch: dual=" << dual << " primal=" << primal;
            detail = os.str();
        }
        out.push_back({"dual-vs-primal-grid", ok, false, ok ? "SPC(3) and Hamming(7,4) within 0.02" : detail});
    }

    // 3) finite-N exponents increase toward a(tau)
    {
        std::vector<std::vector<int>> spc3{{1, 1, 1}};
        ConstraintCode spc = enumerate_codewords(BinaryMatrix::from_rows(spc3));
        const std::vector<double> tau = {0.5, 0.5, 0.5};
        const double a = node_exponent(spc, tau).value;
        bool ok = true;
        std::string detail;
        double prev = -1e30;
        for (std::size_t N : {4u, 8u, 16u, 32u}) {
            std::vector<std::size_t> w(3, N / 2);
            const BigInt cnt = finite_count(spc, N, w);
            const double v = std::log(static_cast<double>(cnt)) / static_cast<double>(N);
            if (v < prev - 1e-12 || v > a + 1e-9) {
                ok = false;
                std::ostringstream os;
                os << "finite-N exponent not increasing toward a: N=" << N << " value=" << v << " a=" << a;
                detail = os.str();
            }
            prev = v;
        }
        if (ok && a - prev > 0.2) {
            ok = false;
            detail = "finite-N exponent at N=32 too far from a(tau)";
        }
        out.push_back({"finite-N-convergence", ok, false, ok ? "monotone toward a(tau) on SPC(3)" : detail});
    }

    return out;
}

} // namespace gldpc
