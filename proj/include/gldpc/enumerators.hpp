#pragma once

// Constraint-code counting machinery: multivariate split weight enumerators,
// exact finite-N tuple counts, and the asymptotic per-node exponent a(tau)
// obtained by convex duality (tilted log-partition minimization).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gldpc/protograph.hpp"

namespace gldpc {

/// Multivariate split weight enumerator W(x) = sum over codewords of
/// prod_p x_p^{c_p}. One term of coefficient 1 per codeword.
struct SplitWEF {
    std::size_t length = 0;
    std::vector<std::uint32_t> terms; // exponent vectors, one per codeword

    static SplitWEF of(const ConstraintCode& code) { return {code.length, code.codewords}; }

    double evaluate(const std::vector<double>& x) const {
        if (x.size() != length) throw std::invalid_argument("SplitWEF::evaluate: wrong arity");
        double sum = 0;
        for (std::uint32_t t : terms) {
            double prod = 1;
            for (std::size_t p = 0; p < length; ++p)
                if ((t >> p) & 1) prod *= x[p];
            sum += prod;
        }
        return sum;
    }
};

/// Exact number of ordered N-tuples of codewords whose per-position column
/// sums equal w. Dynamic programming over the N copies; states are partial
/// column-sum vectors bounded entrywise by w, in mixed-radix encoding.
inline BigInt finite_count(const ConstraintCode& code, std::size_t N, const std::vector<std::size_t>& w) {
    if (w.size() != code.length) throw std::invalid_argument("finite_count: weight vector arity mismatch");
    for (auto wp : w)
        if (wp > N) throw std::invalid_argument("finite_count: weight entry exceeds N");

    std::size_t num_states = 1;
    for (auto wp : w) {
        if (num_states > (std::size_t(1) << 28) / (wp + 1))
            throw std::length_error("finite_count: state space too large");
        num_states *= wp + 1;
    }

    // stride of position p in the mixed-radix state index
    std::vector<std::size_t> stride(code.length);
    std::size_t acc = 1;
    for (std::size_t p = 0; p < code.length; ++p) {
        stride[p] = acc;
        acc *= w[p] + 1;
    }

    // per-codeword: state-index increment and a mask test helper
    struct Step {
        std::size_t inc;
        std::vector<std::size_t> positions; // set bits
    };
    std::vector<Step> steps;
    steps.reserve(code.codewords.size());
    for (std::uint32_t cw : code.codewords) {
        Step st{0, {}};
        for (std::size_t p = 0; p < code.length; ++p)
            if ((cw >> p) & 1) {
                st.inc += stride[p];
                st.positions.push_back(p);
            }
        steps.push_back(std::move(st));
    }

    // unpacked digit view for the bound check
    auto digits_ok = [&](std::size_t state, const Step& st) {
        for (std::size_t p : st.positions)
            if ((state / stride[p]) % (w[p] + 1) == w[p]) return false;
        return true;
    };

    std::vector<BigInt> cur(num_states), next(num_states);
    cur[0] = 1;
    for (std::size_t copy = 0; copy < N; ++copy) {
        for (auto& v : next) v = 0;
        for (std::size_t s = 0; s < num_states; ++s) {
            if (cur[s] == 0) continue;
            for (const auto& st : steps)
                if (digits_ok(s, st)) next[s + st.inc] += cur[s];
        }
        cur.swap(next);
    }
    return cur[num_states - 1];
}

/// Result of the per-node asymptotic exponent computation at marginals tau.
struct NodeExponent {
    double value = 0;                 // a(tau) in nats
    Eigen::VectorXd tilt;             // minimizing dual point u*; grad of a wrt tau is -u*
    Eigen::VectorXd tilted_distribution; // over the code's codeword list
    double primal_dual_gap = 0;
    bool feasible = false;
    int iterations = 0;
};

struct InfeasibleTauError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

inline constexpr double kTauClamp = 1e-12;
inline constexpr double kTiltCap = 60.0; // dual divergence beyond this declares tau infeasible
inline constexpr double kGapTol = 1e-8;

// Damped Newton minimization of ln Z(u) - u.tau over the tilt u for the
// codeword rows in C. Returns false on divergence (tau outside the hull).
inline bool solve_tilt(const Eigen::MatrixXd& C, const Eigen::VectorXd& tau, Eigen::VectorXd& u,
                       Eigen::VectorXd& prob, double& dual_value, int& iters) {
    const auto m = C.cols();
    const auto nc = C.rows();
    Eigen::VectorXd scores(nc), g(m);
    Eigen::MatrixXd H(m, m);

    auto eval = [&](const Eigen::VectorXd& uu, Eigen::VectorXd& p) {
        scores.noalias() = C * uu;
        const double mx = scores.maxCoeff();
        p = (scores.array() - mx).exp();
        const double Z = p.sum();
        p /= Z;
        return mx + std::log(Z) - uu.dot(tau);
    };

    double f = eval(u, prob);
    for (iters = 0; iters < 300; ++iters) {
        g.noalias() = C.transpose() * prob - tau;
        if (g.lpNorm<Eigen::Infinity>() < 1e-13) break;

        H.noalias() = C.transpose() * prob.asDiagonal() * C;
        Eigen::VectorXd mean = C.transpose() * prob;
        H.noalias() -= mean * mean.transpose();
        H.diagonal().array() += 1e-13 + 1e-12 * H.diagonal().maxCoeff();

        Eigen::VectorXd dir = H.ldlt().solve(-g);
        if (!dir.allFinite()) dir = -g;

        bool moved = false;
        auto line_search = [&](const Eigen::VectorXd& d, int halvings) {
            double t = 1.0;
            for (int ls = 0; ls < halvings; ++ls) {
                Eigen::VectorXd u2 = u + t * d;
                Eigen::VectorXd p2;
                const double f2 = eval(u2, p2);
                if (f2 < f) {
                    u = u2;
                    prob = p2;
                    f = f2;
                    moved = true;
                    return;
                }
                t *= 0.5;
            }
        };
        line_search(dir, 60);
        if (!moved) line_search(-g, 40);
        if (!moved) break; // at numerical floor
        if (u.lpNorm<Eigen::Infinity>() > kTiltCap) return false;
    }
    dual_value = f;
    return true;
}

} // namespace detail

/// a(tau) = inf_u [ ln sum_c exp(u.c) - u.tau ], the max entropy of a codeword
/// distribution with per-position marginals tau. Positions with tau exactly 0
/// or 1 are handled by conditioning the codeword set; the rest are clamped a
/// hair inside (0,1) before the damped-Newton dual solve. `warm`, if given,
/// seeds the tilt. Throws InfeasibleTauError when tau lies outside the convex
/// hull of the codewords, unless `throw_on_infeasible` is false (then the
/// result carries feasible=false).
inline NodeExponent node_exponent(const ConstraintCode& code, const std::vector<double>& tau,
                                  const Eigen::VectorXd* warm = nullptr,
                                  bool throw_on_infeasible = true) {
    const std::size_t n = code.length;
    if (tau.size() != n) throw std::invalid_argument("node_exponent: tau arity mismatch");
    for (double t : tau)
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("node_exponent: tau outside [0,1]");

    NodeExponent out;
    out.tilt = Eigen::VectorXd::Zero(n);
    out.tilted_distribution = Eigen::VectorXd::Zero(code.codewords.size());

    auto fail = [&]() -> NodeExponent {
        if (throw_on_infeasible)
            throw InfeasibleTauError("node_exponent: tau outside the convex hull of the codeword set");
        out.feasible = false;
        out.value = -std::numeric_limits<double>::infinity();
        return out;
    };

    // Condition on exact 0/1 positions: keep codewords matching them.
    std::uint32_t pin_mask = 0, pin_val = 0;
    std::vector<std::size_t> free_pos;
    for (std::size_t p = 0; p < n; ++p) {
        if (tau[p] == 0.0 || tau[p] == 1.0) {
            pin_mask |= std::uint32_t(1) << p;
            if (tau[p] == 1.0) pin_val |= std::uint32_t(1) << p;
        } else {
            free_pos.push_back(p);
        }
    }

    std::vector<std::size_t> kept; // indices into code.codewords
    for (std::size_t i = 0; i < code.codewords.size(); ++i)
        if ((code.codewords[i] & pin_mask) == pin_val) kept.push_back(i);
    if (kept.empty()) return fail();

    if (free_pos.empty()) {
        // fully pinned: max entropy is uniform over the matching codewords
        out.value = std::log(static_cast<double>(kept.size()));
        for (auto i : kept) out.tilted_distribution[i] = 1.0 / static_cast<double>(kept.size());
        out.feasible = true;
        return out;
    }

    const auto m = static_cast<Eigen::Index>(free_pos.size());
    Eigen::MatrixXd C(static_cast<Eigen::Index>(kept.size()), m);
    for (std::size_t r = 0; r < kept.size(); ++r)
        for (Eigen::Index q = 0; q < m; ++q)
            C(static_cast<Eigen::Index>(r), q) =
                static_cast<double>((code.codewords[kept[r]] >> free_pos[static_cast<std::size_t>(q)]) & 1);

    Eigen::VectorXd tau_r(m);
    for (Eigen::Index q = 0; q < m; ++q) {
        const double t = tau[free_pos[static_cast<std::size_t>(q)]];
        tau_r(q) = std::min(1.0 - detail::kTauClamp, std::max(detail::kTauClamp, t));
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    if (warm && warm->size() == static_cast<Eigen::Index>(n))
        for (Eigen::Index q = 0; q < m; ++q) u(q) = (*warm)(static_cast<Eigen::Index>(free_pos[static_cast<std::size_t>(q)]));

    Eigen::VectorXd prob;
    double dual_value = 0;
    int iters = 0;
    if (!detail::solve_tilt(C, tau_r, u, prob, dual_value, iters)) return fail();

    auto gap_of = [&]() {
        double entropy = 0;
        for (Eigen::Index i = 0; i < prob.size(); ++i)
            if (prob(i) > 0) entropy -= prob(i) * std::log(prob(i));
        return std::abs(entropy - dual_value);
    };
    double residual = (C.transpose() * prob - tau_r).lpNorm<Eigen::Infinity>();
    double gap = gap_of();
    if (residual > 1e-9 || gap > detail::kGapTol) {
        // stalled: retry once from scratch before giving up
        u.setZero();
        int extra = 0;
        if (!detail::solve_tilt(C, tau_r, u, prob, dual_value, extra)) return fail();
        iters += extra;
        residual = (C.transpose() * prob - tau_r).lpNorm<Eigen::Infinity>();
        gap = gap_of();
    }
    if (residual > 1e-7) return fail(); // stalled far from the target: tau is at/outside the hull edge
    if (gap > detail::kGapTol) {
        if (throw_on_infeasible) throw std::runtime_error("node_exponent: primal-dual gap above tolerance");
        return fail(); // optimizer mode: treat near-boundary stalls conservatively
    }

    out.value = dual_value;
    out.primal_dual_gap = gap;
    out.iterations = iters;
    out.feasible = true;
    for (Eigen::Index q = 0; q < m; ++q) out.tilt(static_cast<Eigen::Index>(free_pos[static_cast<std::size_t>(q)])) = u(q);
    for (std::size_t r = 0; r < kept.size(); ++r)
        out.tilted_distribution[kept[r]] = prob(static_cast<Eigen::Index>(r));
    return out;
}

} // namespace gldpc
