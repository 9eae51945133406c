#pragma once

// Free-distance growth-rate bounds for periodically time-varying convolutional
// ensembles: terminated chains give upper bounds, tail-biting rings give lower
// bounds, both normalized per decoding constraint length nu_s = N(m_s+1)b_v.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gldpc/coupling.hpp"
#include "gldpc/spectral.hpp"

namespace gldpc {

struct FreeDistanceBounds {
    std::size_t period = 0;       // T
    std::size_t memory = 0;       // m_s
    std::optional<double> lower;  // from tail-biting, lambda = T
    std::optional<double> upper;  // from termination, L = T
    bool coincide = false;
    std::optional<double> delta_free; // midpoint, present iff coincide
    double uncertainty = 0;           // half-gap when coincident
    Rational terminated_rate;
    std::optional<double> delta_min_terminated;
    std::optional<double> delta_min_tailbiting;
    std::string error; // non-empty when one of the pipelines failed for this T
};

inline double upper_bound(double delta_min_terminated, std::size_t T, std::size_t m_s) {
    if (T < 1) throw std::invalid_argument("upper_bound: T must be >= 1");
    return delta_min_terminated * static_cast<double>(T) / static_cast<double>(m_s + 1);
}

inline double lower_bound(double delta_min_tailbiting, std::size_t T, std::size_t m_s) {
    if (T < m_s) throw std::invalid_argument("lower_bound: T must be >= m_s");
    return delta_min_tailbiting * static_cast<double>(T) / static_cast<double>(m_s + 1);
}

/// Runs the full pipeline (terminate -> growth rate, tailbite -> growth rate)
/// for each T; per-T failures are recorded in the row rather than aborting.
inline std::vector<FreeDistanceBounds> scan(const Protograph& block, const EdgeSpreading& s,
                                            const std::vector<std::size_t>& T_range, double tolerance = 0.01,
                                            const OptimizerConfig& cfg = {}, double step = 0.002) {
    if (T_range.empty()) throw std::invalid_argument("scan: empty T range");
    std::vector<FreeDistanceBounds> out;
    // Crossing maximizer carried across periods: padded with zero time slots
    // it remains feasible for every longer chain, so each scan is seeded with
    // the best configuration found so far and the scaled bounds stay monotone.
    Eigen::VectorXd carry;
    const std::size_t b_v = block.num_variables;
    auto padded_to = [&](std::size_t n) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        if (carry.size() > 0 && carry.size() <= x.size()) x.head(carry.size()) = carry;
        return x;
    };
    for (std::size_t T : T_range) {
        FreeDistanceBounds row;
        row.period = T;
        row.memory = s.memory;
        try {
            if (T < std::max<std::size_t>(1, s.memory))
                throw std::invalid_argument("scan: T below the syndrome former memory");
            CoupledProtograph term = terminate(block, s, T);
            row.terminated_rate = design_rate(term.realized);
            const Eigen::VectorXd term_seed = padded_to(T * b_v);
            GrowthRateReport up = growth_rate_scan(term.realized, step, cfg, term.time_of_variable,
                                                   0.9, carry.size() ? &term_seed : nullptr);
            if (up.delta_min) {
                row.delta_min_terminated = *up.delta_min;
                row.upper = upper_bound(*up.delta_min, T, s.memory);
            }
            if (up.crossing_argmax.size()) carry = up.crossing_argmax;
            CoupledProtograph ring = tailbite(block, s, T);
            const Eigen::VectorXd ring_seed = padded_to(T * b_v);
            GrowthRateReport lo = growth_rate_scan(ring.realized, step, cfg, ring.time_of_variable,
                                                   0.9, carry.size() ? &ring_seed : nullptr);
            if (lo.delta_min) {
                row.delta_min_tailbiting = *lo.delta_min;
                row.lower = lower_bound(*lo.delta_min, T, s.memory);
            }
            if (row.lower && row.upper) {
                row.coincide = std::abs(*row.upper - *row.lower) <= tolerance;
                if (row.coincide) {
                    row.delta_free = 0.5 * (*row.upper + *row.lower);
                    row.uncertainty = 0.5 * std::abs(*row.upper - *row.lower);
                }
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace gldpc
