#pragma once

// Ensemble spectral shape r(delta): outer maximization of the per-variable
// weight-enumerator exponent over normalized weight vectors with a fixed
// mean, growth-rate (zero-crossing) extraction, and the random-coding
// reference curve.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gldpc/coupling.hpp"
#include "gldpc/enumerators.hpp"
#include "gldpc/protograph.hpp"

namespace gldpc {

inline double binary_entropy(double d) {
    if (d <= 0.0 || d >= 1.0) return 0.0;
    return -d * std::log(d) - (1.0 - d) * std::log(1.0 - d);
}

/// H(delta) - (1-R) ln 2, in nats.
inline double random_coding_shape(const Rational& rate, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("random_coding_shape: delta outside (0,1)");
    return binary_entropy(delta) - (1.0 - static_cast<double>(rate)) * std::log(2.0);
}

struct OptimizerConfig {
    int restarts = 8;             // randomized starts in addition to structured ones
    double tol = 1e-10;           // relative objective-improvement stopping threshold
    int max_iterations = 500;
    std::uint64_t seed = 1;
    bool polish = true;           // group-transfer coordinate ascent after PGA
    int top_starts = 6;           // PGA runs only on this many best-scoring starts (plus uniform & warm)
};

struct OptimizerDiagnostics {
    int restarts_used = 0;
    double best = -std::numeric_limits<double>::infinity();
    double dispersion = 0;        // best minus worst finite start outcome
    bool converged = false;
};

struct ShapePoint {
    double delta = 0;
    double r = 0;                 // nats per variable symbol
    Eigen::VectorXd argmax;
    OptimizerDiagnostics diag;
};

struct SpectralShape {
    const Protograph* protograph = nullptr;
    OptimizerConfig config;
    std::vector<ShapePoint> grid;
};

namespace detail {

/// Precomputed view of a protograph for repeated objective evaluations.
class ObjectiveContext {
  public:
    explicit ObjectiveContext(const Protograph& p) : p_(&p) {
        n_ = p.num_variables;
        degrees_ = p.variable_degrees();
        var_of_position_.resize(p.constraints.size());
        for (std::size_t c = 0; c < p.constraints.size(); ++c) {
            const auto& gc = p.constraints[c];
            var_of_position_[c].assign(gc.code.length, 0);
            for (const auto& s : gc.sockets) var_of_position_[c][s.position] = s.variable;
        }
        warm_.assign(p.constraints.size(), Eigen::VectorXd());
    }

    std::size_t num_variables() const { return n_; }
    const Protograph& protograph() const { return *p_; }
    const std::vector<std::size_t>& degrees() const { return degrees_; }

    /// Objective value in nats per variable symbol; -inf when some node's
    /// marginal vector lies outside its codeword hull. Fills the gradient
    /// when requested (gradient undefined at -inf).
    double evaluate(const Eigen::VectorXd& d, Eigen::VectorXd* grad = nullptr) {
        ++eval_count;
        double total = 0;
        if (grad) grad->setZero(static_cast<Eigen::Index>(n_));
        std::vector<double> tau;
        for (std::size_t c = 0; c < p_->constraints.size(); ++c) {
            const auto& gc = p_->constraints[c];
            tau.resize(gc.code.length);
            for (std::size_t q = 0; q < gc.code.length; ++q) tau[q] = d(static_cast<Eigen::Index>(var_of_position_[c][q]));
            const Eigen::VectorXd* warm = warm_[c].size() ? &warm_[c] : nullptr;
            NodeExponent ne = node_exponent(gc.code, tau, warm, /*throw_on_infeasible=*/false);
            if (!ne.feasible) return -std::numeric_limits<double>::infinity();
            warm_[c] = ne.tilt;
            total += ne.value;
            if (grad)
                for (std::size_t q = 0; q < gc.code.length; ++q)
                    (*grad)(static_cast<Eigen::Index>(var_of_position_[c][q])) -= ne.tilt(static_cast<Eigen::Index>(q));
        }
        for (std::size_t j = 0; j < n_; ++j) {
            const double excess = static_cast<double>(degrees_[j]) - 1.0;
            total -= excess * binary_entropy(d(static_cast<Eigen::Index>(j)));
            if (grad && excess > 0) {
                const double dj = std::min(1.0 - 1e-15, std::max(1e-15, d(static_cast<Eigen::Index>(j))));
                (*grad)(static_cast<Eigen::Index>(j)) -= excess * std::log((1.0 - dj) / dj);
            }
        }
        const double inv = 1.0 / static_cast<double>(n_);
        if (grad) *grad *= inv;
        return total * inv;
    }

    void reset_warm() {
        for (auto& w : warm_) w = Eigen::VectorXd();
    }

    std::size_t eval_count = 0; ///< total objective evaluations (diagnostic)

  private:
    const Protograph* p_;
    std::size_t n_ = 0;
    std::vector<std::size_t> degrees_;
    std::vector<std::vector<std::size_t>> var_of_position_;
    std::vector<Eigen::VectorXd> warm_;
};

/// Projection onto {mean(d) = delta} intersected with the box [0,1]^n; the
/// intersection is found exactly (to bisection precision) by shifting all
/// coordinates by a common scalar before clipping.
inline Eigen::VectorXd project_slice(const Eigen::VectorXd& x, double delta) {
    const auto n = x.size();
    const double target = delta * static_cast<double>(n);
    double lo = -x.maxCoeff(), hi = 1.0 - x.minCoeff();
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        double s = 0;
        for (Eigen::Index i = 0; i < n; ++i) s += std::min(1.0, std::max(0.0, x(i) + mid));
        (s < target ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = std::min(1.0, std::max(0.0, x(i) + t));
    return out;
}

/// Mirror-step companion to the Euclidean projected step: move in logit
/// coordinates, then restore the mean by a common logit shift. Never creates
/// exact 0/1 entries, which lets iterates slide along codeword-hull facets
/// that block the Euclidean step.
inline Eigen::VectorXd mirror_step(const Eigen::VectorXd& d, const Eigen::VectorXd& g, double eta,
                                   double delta) {
    const auto n = d.size();
    Eigen::VectorXd l(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double di = std::min(1.0 - 1e-12, std::max(1e-12, d(i)));
        l(i) = std::log(di / (1.0 - di)) + eta * g(i);
    }
    const double target = delta * static_cast<double>(n);
    double lo = -800, hi = 800;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        double s = 0;
        for (Eigen::Index i = 0; i < n; ++i) s += 1.0 / (1.0 + std::exp(-(l(i) + mid)));
        (s < target ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = 1.0 / (1.0 + std::exp(-(l(i) + t)));
    return out;
}

} // namespace detail

/// Maximizes the spectral objective over {dvec in [0,1]^n : mean(dvec) = delta}.
/// Multi-start projected-gradient ascent: uniform, warm (caller-provided),
/// an optional carried seed (run both slice-projected and rescaled along its
/// ray so zero coordinates stay zero), boundary-biased random, and — when
/// `groups` labels each variable with a time instant — group-profile starts
/// (flat and triangular windows). A group-transfer polish pass moves mass
/// between whole instants, which walks along hull facets that single-ray
/// gradient steps cannot cross.
class SliceMaximizer {
  public:
    SliceMaximizer(const Protograph& p, OptimizerConfig cfg, std::vector<std::size_t> groups = {})
        : ctx_(p), cfg_(cfg), groups_(std::move(groups)) {
        if (!groups_.empty() && groups_.size() != p.num_variables)
            throw std::invalid_argument("SliceMaximizer: groups size mismatch");
        num_groups_ = 0;
        for (auto g : groups_) num_groups_ = std::max(num_groups_, g + 1);
    }

    ShapePoint maximize(double delta, const Eigen::VectorXd* warm_point = nullptr,
                        const Eigen::VectorXd* seed_point = nullptr) {
        const auto n = static_cast<Eigen::Index>(ctx_.num_variables());
        std::vector<Eigen::VectorXd> starts;
        starts.push_back(Eigen::VectorXd::Constant(n, delta)); // uniform: always run
        if (warm_point && warm_point->size() == n) starts.push_back(*warm_point);
        if (seed_point && seed_point->size() == n) {
            starts.push_back(*seed_point);
            // Rescale along the ray through the seed as well: unlike the
            // additive slice shift this keeps zero coordinates at exactly
            // zero, so a zero-padded seed can follow its own branch of the
            // landscape to any slice.
            const double sm = seed_point->mean();
            if (sm > 1e-12) {
                Eigen::VectorXd ray = (*seed_point) * (delta / sm);
                starts.push_back(ray.cwiseMin(1.0));
            }
        }
        const std::size_t always = starts.size();

        for (auto& s : group_profile_starts(delta)) starts.push_back(std::move(s));
        for (int k = 0; k < cfg_.restarts; ++k) {
            std::mt19937_64 rng(cfg_.seed + 1000003ULL * static_cast<std::uint64_t>(k));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            Eigen::VectorXd x(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double u = unif(rng);
                x(i) = (k % 2 == 0) ? u * u * u : 1.0 - u * u * u; // boundary-biased
            }
            starts.push_back(std::move(x));
        }

        // score all starts cheaply, run full ascent only on the best few
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t i = 0; i < starts.size(); ++i) {
            starts[i] = detail::project_slice(starts[i], delta);
            double f = ctx_.evaluate(starts[i]);
            if (std::isinf(f)) {
                // pull infeasible starts toward uniform until they enter the hull
                for (double t = 0.5; t > 1e-3 && std::isinf(f); t *= 0.5) {
                    starts[i] = detail::project_slice(
                        Eigen::VectorXd(Eigen::VectorXd::Constant(n, delta) + t * (starts[i].array() - delta).matrix()), delta);
                    f = ctx_.evaluate(starts[i]);
                }
            }
            scored.emplace_back(f, i);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });

        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < always; ++i) chosen.push_back(i);
        for (const auto& [f, i] : scored) {
            if (chosen.size() >= always + static_cast<std::size_t>(cfg_.top_starts)) break;
            if (std::isinf(f) || i < always) continue;
            chosen.push_back(i);
        }

        ShapePoint best;
        best.delta = delta;
        best.r = -std::numeric_limits<double>::infinity();
        double worst = std::numeric_limits<double>::infinity();
        bool any_converged = false;
        for (std::size_t i : chosen) {
            auto [f, x, conv] = ascend(starts[i], delta);
            if (std::isfinite(f)) worst = std::min(worst, f);
            if (f > best.r) {
                best.r = f;
                best.argmax = x;
                any_converged = conv;
            } else if (f == best.r && conv) {
                any_converged = true;
            }
        }
        if (cfg_.polish && std::isfinite(best.r) && num_groups_ > 1) {
            for (int round = 0; round < 3; ++round) {
                const double before = best.r;
                auto [pf, px] = polish(best.argmax, best.r, delta);
                if (pf <= best.r + 1e-13) break;
                auto [f2, x2, conv2] = ascend(px, delta);
                if (f2 > pf) { best.r = f2; best.argmax = x2; any_converged = conv2; }
                else { best.r = pf; best.argmax = px; }
                if (best.r - before < 1e-9 * (1.0 + std::abs(best.r))) break;
            }
        }
        best.diag.restarts_used = static_cast<int>(chosen.size());
        best.diag.best = best.r;
        best.diag.dispersion = std::isfinite(best.r) && std::isfinite(worst) ? best.r - worst : 0.0;
        best.diag.converged = any_converged;
        return best;
    }

    detail::ObjectiveContext& context() { return ctx_; }

  private:
    std::tuple<double, Eigen::VectorXd, bool> ascend(Eigen::VectorXd x, double delta) {
        Eigen::VectorXd g;
        double f = ctx_.evaluate(x, &g);
        if (std::isinf(f)) return {f, x, false};
        double eta = 0.25;
        bool converged = false;
        double window_base = f;
        for (int it = 0; it < cfg_.max_iterations; ++it) {
            bool accepted = false;
            double f2 = 0;
            Eigen::VectorXd x2, g2;
            for (int ls = 0; ls < 24 && !accepted; ++ls) {
                x2 = detail::project_slice(x + eta * g, delta);
                f2 = ctx_.evaluate(x2, &g2);
                if (std::isfinite(f2) && f2 > f) accepted = true;
                else eta *= 0.5;
            }
            if (!accepted) {
                // Euclidean steps blocked (typically by a hull facet): try logit-space steps
                double meta = 4.0;
                for (int ls = 0; ls < 24 && !accepted; ++ls) {
                    x2 = detail::mirror_step(x, g, meta, delta);
                    f2 = ctx_.evaluate(x2, &g2);
                    if (std::isfinite(f2) && f2 > f) accepted = true;
                    else meta *= 0.5;
                }
            }
            if (!accepted) {
                converged = true;
                break;
            }
            const double gain = f2 - f;
            x.swap(x2);
            g.swap(g2);
            f = f2;
            eta = std::min(eta * 1.6, 4.0);
            if (gain < cfg_.tol * (1.0 + std::abs(f))) {
                converged = true;
                break;
            }
            // watchdog: a crawl that gains almost nothing across a whole
            // window of iterations is treated as converged
            if (it % 40 == 39) {
                if (f - window_base < 1e-7 * (1.0 + std::abs(f))) {
                    converged = true;
                    break;
                }
                window_base = f;
            }
        }
        return {f, x, converged};
    }

    /// Mean-preserving transfers between whole time instants. Moving mass
    /// uniformly across a group keeps within-instant equalities intact, so
    /// these moves travel along conditioned-subcode facets.
    std::pair<double, Eigen::VectorXd> polish(Eigen::VectorXd d, double f, double delta) {
        const auto n = d.size();
        std::vector<std::vector<Eigen::Index>> members(num_groups_);
        for (Eigen::Index i = 0; i < n; ++i) members[groups_[static_cast<std::size_t>(i)]].push_back(i);
        Eigen::VectorXd g;
        ctx_.evaluate(d, &g);
        struct Cand {
            double dd;
            std::size_t s, t;
        };
        std::vector<Cand> cands;
        for (int round = 0; round < 6; ++round) {
            const double round_base = f;
            bool improved = false;
            // transfers follow facets, so the smooth gradient gives the
            // one-sided derivative along each move; rank pairs by predicted
            // gain and line-search only the most promising ones
            cands.clear();
            for (std::size_t s = 0; s < num_groups_; ++s)
                for (std::size_t t = 0; t < num_groups_; ++t) {
                    if (s == t) continue;
                    const double ratio = static_cast<double>(members[s].size()) / static_cast<double>(members[t].size());
                    double dd = 0;
                    for (auto i : members[s]) dd -= g(i);
                    for (auto i : members[t]) dd += g(i) * ratio;
                    if (dd > 1e-12) cands.push_back({dd, s, t});
                }
            std::stable_sort(cands.begin(), cands.end(),
                             [](const Cand& a, const Cand& b) { return a.dd > b.dd; });
            if (cands.size() > 48) cands.resize(48);
            for (const auto& [dd, s, t] : cands) {
                double avail = 1.0, room = 1.0;
                for (auto i : members[s]) avail = std::min(avail, d(i));
                for (auto i : members[t]) room = std::min(room, 1.0 - d(i));
                // unequal group sizes: rescale the receiving side so the total mass is unchanged
                const double ratio = static_cast<double>(members[s].size()) / static_cast<double>(members[t].size());
                double step = std::min(avail, room);
                step = std::min(step, room / std::max(1.0, ratio));
                if (step < 1e-9) continue;
                for (int ls = 0; ls < 16; ++ls) {
                    Eigen::VectorXd d2 = d;
                    for (auto i : members[s]) d2(i) -= step;
                    for (auto i : members[t]) d2(i) += step * ratio;
                    if (d2.minCoeff() < -1e-12 || d2.maxCoeff() > 1 + 1e-12) { step *= 0.5; continue; }
                    const double f2 = ctx_.evaluate(d2);
                    if (std::isfinite(f2) && f2 > f + 1e-10 * (1.0 + std::abs(f))) {
                        d.swap(d2);
                        f = f2;
                        improved = true;
                        ctx_.evaluate(d, &g);
                        break;
                    }
                    step *= 0.5;
                }
            }
            if (!improved || f - round_base < 1e-9 * (1.0 + std::abs(f))) break;
        }
        return {f, d};
    }

    std::vector<Eigen::VectorXd> group_profile_starts(double delta) const {
        std::vector<Eigen::VectorXd> out;
        if (num_groups_ < 2) return out;
        const auto n = static_cast<Eigen::Index>(groups_.size());
        const auto T = num_groups_;
        auto emit = [&](const std::vector<double>& prof) {
            double tot = 0;
            for (double v : prof) tot += v;
            if (tot <= 0) return;
            std::vector<std::size_t> gsize(T, 0);
            for (auto g : groups_) ++gsize[g];
            double mass = 0;
            for (std::size_t t = 0; t < T; ++t) mass += prof[t] * static_cast<double>(gsize[t]);
            const double scale = delta * static_cast<double>(n) / mass;
            Eigen::VectorXd x(n);
            for (Eigen::Index i = 0; i < n; ++i)
                x(i) = std::min(0.98, prof[groups_[static_cast<std::size_t>(i)]] * scale);
            out.push_back(std::move(x));
        };
        for (std::size_t w = 2; w <= T; ++w) {
            std::vector<std::size_t> offsets = {0, (T - w) / 2, T - w};
            std::sort(offsets.begin(), offsets.end());
            offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
            for (auto a : offsets) {
                std::vector<double> flat(T, 0.0), tri(T, 0.0);
                for (std::size_t k = 0; k < w; ++k) {
                    flat[a + k] = 1.0;
                    tri[a + k] = static_cast<double>(std::min(k + 1, w - k));
                }
                emit(flat);
                emit(tri);
            }
        }
        return out;
    }

    detail::ObjectiveContext ctx_;
    OptimizerConfig cfg_;
    std::vector<std::size_t> groups_;
    std::size_t num_groups_ = 0;
};

/// Spectral objective at a single weight vector (nats per variable symbol).
inline double objective(const Protograph& p, const Eigen::VectorXd& dvec) {
    detail::ObjectiveContext ctx(p);
    return ctx.evaluate(dvec);
}

inline SpectralShape spectral_shape(const Protograph& p, const std::vector<double>& delta_grid,
                                    const OptimizerConfig& cfg = {},
                                    const std::vector<std::size_t>& groups = {}) {
    for (double d : delta_grid)
        if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("spectral_shape: grid must lie in (0,1)");
    SpectralShape shape;
    shape.protograph = &p;
    shape.config = cfg;
    SliceMaximizer opt(p, cfg, groups);
    const Eigen::VectorXd* warm = nullptr;
    Eigen::VectorXd warm_store;
    for (double d : delta_grid) {
        ShapePoint pt = opt.maximize(d, warm);
        if (pt.argmax.size()) {
            warm_store = pt.argmax;
            warm = &warm_store;
        }
        shape.grid.push_back(std::move(pt));
    }
    return shape;
}

struct GrowthRateReport {
    std::optional<double> delta_min;
    bool asymptotically_good = false;
    double bracket_lo = 0, bracket_hi = 0; // final bisection bracket around the crossing
    Rational design_rate;
    std::size_t delta_correction = 0;
    // Maximizer on the nonnegative side of the crossing. Zero-padded in time,
    // it stays feasible for any longer chain or ring of the same spreading and
    // seeds their scans, keeping the scaled bounds monotone across factors.
    Eigen::VectorXd crossing_argmax;
};

struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline GrowthRateReport extract_crossing(const Protograph& p, SliceMaximizer& opt,
                                         const std::vector<ShapePoint>& pts,
                                         const Eigen::VectorXd* seed = nullptr) {
    GrowthRateReport rep;
    rep.design_rate = design_rate(p);
    rep.delta_correction = delta_correction(p);
    if (pts.empty()) throw NoCrossingError("growth_rate: empty shape");
    rep.asymptotically_good = pts.front().r < -1e-6;
    std::optional<std::size_t> cross;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i].r < 0 && pts[i + 1].r >= 0) {
            cross = i;
            break;
        }
    if (!cross) {
        if (pts.front().r >= 0) {
            rep.asymptotically_good = false;
            rep.delta_min = std::nullopt;
            rep.crossing_argmax = pts.front().argmax;
            return rep;
        }
        throw NoCrossingError("growth_rate: no sign change on the supplied grid");
    }
    double lo = pts[*cross].delta, hi = pts[*cross + 1].delta;
    Eigen::VectorXd warm = pts[*cross + 1].argmax;
    rep.crossing_argmax = pts[*cross + 1].argmax;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        ShapePoint pt = opt.maximize(mid, warm.size() ? &warm : nullptr, seed);
        if (pt.argmax.size()) warm = pt.argmax;
        if (pt.r < 0) {
            lo = mid;
        } else {
            hi = mid;
            if (pt.argmax.size()) rep.crossing_argmax = pt.argmax;
        }
    }
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;
    rep.delta_min = 0.5 * (lo + hi);
    return rep;
}

} // namespace detail

/// Growth rate from a precomputed shape; bisection refinement re-runs the
/// maximizer between the bracketing grid points.
inline GrowthRateReport growth_rate(const SpectralShape& shape, const std::vector<std::size_t>& groups = {}) {
    if (!shape.protograph) throw std::invalid_argument("growth_rate: shape lacks protograph reference");
    SliceMaximizer opt(*shape.protograph, shape.config, groups);
    return detail::extract_crossing(*shape.protograph, opt, shape.grid);
}

/// Lazy variant: walks an ascending grid only until the first sign change,
/// then refines. Far cheaper than materializing the full shape.
inline GrowthRateReport growth_rate_scan(const Protograph& p, double step = 0.002,
                                         const OptimizerConfig& cfg = {},
                                         const std::vector<std::size_t>& groups = {},
                                         double delta_max = 0.9,
                                         const Eigen::VectorXd* seed = nullptr) {
    if (!(step > 0 && step < 1)) throw std::invalid_argument("growth_rate_scan: bad step");
    SliceMaximizer opt(p, cfg, groups);
    std::vector<ShapePoint> pts;
    const Eigen::VectorXd* warm = nullptr;
    Eigen::VectorXd warm_store;
    for (double d = step; d < delta_max; d += step) {
        ShapePoint pt = opt.maximize(d, warm, seed);
        if (pt.argmax.size()) {
            warm_store = pt.argmax;
            warm = &warm_store;
        }
        pts.push_back(std::move(pt));
        if (pts.size() >= 2 && pts[pts.size() - 2].r < 0 && pts.back().r >= 0) break;
    }
    return detail::extract_crossing(p, opt, pts, seed);
}

/// Zero crossing of the random-coding curve for a given rate (bisection).
inline double random_coding_crossing(const Rational& rate) {
    double lo = 1e-9, hi = 0.5;
    if (random_coding_shape(rate, hi) < 0) throw NoCrossingError("random_coding_crossing: negative on (0,1/2]");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (random_coding_shape(rate, mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Lagrange-sweep cross-check: maximize objective + theta * mean(dvec) over
/// the whole box (no slice constraint). Each solution is a point on the
/// concave envelope of the shape; used by tests to validate the slice method.
struct LagrangePoint {
    double theta = 0;
    double delta = 0;
    double r = 0;
};

inline std::vector<LagrangePoint> lagrange_sweep(const Protograph& p, const std::vector<double>& thetas,
                                                 const OptimizerConfig& cfg = {}) {
    detail::ObjectiveContext ctx(p);
    const auto n = static_cast<Eigen::Index>(p.num_variables);
    std::vector<LagrangePoint> out;
    for (double theta : thetas) {
        auto eval = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
            double f = ctx.evaluate(x, g);
            if (!std::isfinite(f)) return f;
            if (g) g->array() += theta / static_cast<double>(n);
            return f + theta * x.mean();
        };
        Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.5), g(n);
        double f = eval(x, &g);
        double eta = 0.25;
        for (int it = 0; it < cfg.max_iterations; ++it) {
            bool ok = false;
            for (int ls = 0; ls < 30 && !ok; ++ls) {
                Eigen::VectorXd x2 = (x + eta * g).cwiseMax(0.0).cwiseMin(1.0);
                const double f2 = eval(x2, nullptr);
                if (std::isfinite(f2) && f2 > f) {
                    x = x2;
                    f = f2;
                    ok = true;
                } else {
                    eta *= 0.5;
                }
            }
            if (!ok) break;
            eval(x, &g);
            eta = std::min(4.0, eta * 1.5);
        }
        LagrangePoint lp;
        lp.theta = theta;
        lp.delta = x.mean();
        lp.r = ctx.evaluate(x);
        out.push_back(lp);
    }
    return out;
}

} // namespace gldpc
