// gldpc: command-line front end for protograph GLDPC ensemble analysis.
//
// Subcommands:
//   shape   — spectral shape curves for block / terminated / tail-biting ensembles
//   sweep   — growth rates and free-distance bounds over coupling-factor ranges
//   bounds  — free-distance bound table over a period range
//   rate    — exact design rates
//   verify  — self-check suite (counting oracles, dual-vs-primal, convergence)
//
// CSV is the primary output format; every CSV written to a file gets a JSON
// mirror next to it. Leading `# key=value` comment lines record the full
// configuration. Fixed seed implies byte-identical output.

#include <CLI11.hpp>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gldpc/coupling.hpp"
#include "gldpc/freedist.hpp"
#include "gldpc/json_io.hpp"
#include "gldpc/oracle.hpp"
#include "gldpc/spectral.hpp"

namespace {

using gldpc::format_double;
using gldpc::format_rational;

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitInput = 2;

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;
using Row = std::vector<std::string>;

struct Table {
    ConfigEcho config;
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

std::string table_to_csv(const Table& t) {
    std::ostringstream os;
    gldpc::CsvWriter w(os, t.config, t.columns);
    for (const auto& r : t.rows) w.row(r);
    return os.str();
}

std::string table_to_json(const Table& t) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : t.config) j["config"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) row[t.columns[i]] = r[i];
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const std::string& tag) {
    if (tag.empty()) return base;
    std::filesystem::path p = base;
    const std::string stem = p.stem().string();
    const std::string ext = p.extension().string();
    p.replace_filename(stem + "-" + tag + ext);
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path.string());
    os << text;
}

/// Writes one table: to stdout when no path is given, otherwise to the path
/// (per-table `tag` distinguishes multiple artifacts of one run). CSV output
/// to a file is mirrored as JSON with the extension swapped.
void emit(const Table& t, const std::string& out_path, const std::string& format, const std::string& tag) {
    if (out_path.empty()) {
        std::cout << (format == "json" ? table_to_json(t) : table_to_csv(t));
        return;
    }
    std::filesystem::path target = with_suffix(out_path, tag);
    if (format == "json") {
        target.replace_extension(".json");
        write_file(target, table_to_json(t));
        std::cerr << "wrote " << target.string() << "\n";
        return;
    }
    write_file(target, table_to_csv(t));
    std::cerr << "wrote " << target.string() << "\n";
    std::filesystem::path mirror = target;
    mirror.replace_extension(".json");
    write_file(mirror, table_to_json(t));
    std::cerr << "wrote " << mirror.string() << "\n";
}

struct CommonOpts {
    std::string protograph_path;
    std::string spreading_path;
    std::string out_path;
    std::string format = "csv";
    double grid_step = 0; // 0 = subcommand default
    int restarts = 8;
    double tol = 1e-10;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_protograph) {
    auto* p = cmd->add_option("--protograph", o.protograph_path, "protograph JSON file");
    if (needs_protograph) p->required();
    cmd->add_option("--spreading", o.spreading_path, "edge-spreading JSON file");
    cmd->add_option("--grid-step", o.grid_step, "delta grid step");
    cmd->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", o.tol, "optimizer tolerance");
    cmd->add_option("--seed", o.seed, "seed for randomized restarts");
    cmd->add_option("--out", o.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

gldpc::OptimizerConfig optimizer_config(const CommonOpts& o) {
    gldpc::OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    return cfg;
}

ConfigEcho base_config(const std::string& command, const CommonOpts& o, double grid_step) {
    ConfigEcho c;
    c.emplace_back("command", command);
    c.emplace_back("protograph", o.protograph_path);
    if (!o.spreading_path.empty()) c.emplace_back("spreading", o.spreading_path);
    c.emplace_back("grid_step", format_double(grid_step, 6));
    c.emplace_back("restarts", std::to_string(o.restarts));
    c.emplace_back("tol", format_double(o.tol, 12));
    c.emplace_back("seed", std::to_string(o.seed));
    c.emplace_back("format", o.format);
    return c;
}

/// One selected ensemble: the block itself or a coupled realization.
struct Ensemble {
    std::string label;
    gldpc::Protograph graph;
    std::vector<std::size_t> groups; // time instant per variable; empty for block
    gldpc::Rational rate;
    std::optional<std::size_t> factor;
    std::string kind; // block | terminated | tailbiting
};

struct EnsembleSelect {
    bool block = false;
    std::vector<std::size_t> terminated;
    std::vector<std::size_t> tailbiting;
};

void add_selectors(CLI::App* cmd, EnsembleSelect& sel) {
    cmd->add_flag("--block", sel.block, "analyze the block ensemble");
    cmd->add_option("--terminated", sel.terminated, "terminated chain length(s) L");
    cmd->add_option("--tailbiting", sel.tailbiting, "tail-biting factor(s) lambda");
}

std::vector<Ensemble> build_ensembles(const CommonOpts& o, const EnsembleSelect& sel) {
    gldpc::Protograph block = gldpc::load_protograph_file(o.protograph_path);
    std::optional<gldpc::EdgeSpreading> spreading;
    if (!sel.terminated.empty() || !sel.tailbiting.empty()) {
        if (o.spreading_path.empty())
            throw gldpc::InputError("--spreading is required for terminated/tailbiting ensembles");
        spreading = gldpc::load_spreading_file(o.spreading_path, block);
    }
    std::vector<Ensemble> out;
    if (sel.block)
        out.push_back({"block", block, {}, gldpc::design_rate(block), std::nullopt, "block"});
    for (std::size_t L : sel.terminated) {
        gldpc::CoupledProtograph c = gldpc::terminate(block, *spreading, L);
        out.push_back({"terminated-" + std::to_string(L), c.realized, c.time_of_variable,
                       gldpc::design_rate(c.realized), L, "terminated"});
    }
    for (std::size_t lam : sel.tailbiting) {
        gldpc::CoupledProtograph c = gldpc::tailbite(block, *spreading, lam);
        out.push_back({"tailbiting-" + std::to_string(lam), c.realized, c.time_of_variable,
                       gldpc::design_rate(c.realized), lam, "tailbiting"});
    }
    if (out.empty()) throw gldpc::InputError("select at least one ensemble (--block / --terminated / --tailbiting)");
    return out;
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

// ---------------------------------------------------------------------------

int cmd_shape(const CommonOpts& o, const EnsembleSelect& sel) {
    const double step = o.grid_step > 0 ? o.grid_step : 0.0005;
    std::vector<double> grid;
    for (std::size_t k = 1;; ++k) {
        const double d = static_cast<double>(k) * step;
        if (d > 0.9 + 1e-12) break;
        grid.push_back(d);
    }

    std::vector<Ensemble> ensembles = build_ensembles(o, sel);
    for (const auto& e : ensembles) {
        gldpc::SpectralShape shape = gldpc::spectral_shape(e.graph, grid, optimizer_config(o), e.groups);
        const double rate = static_cast<double>(e.rate);

        Table t;
        t.config = base_config("shape", o, step);
        t.config.emplace_back("ensemble", e.label);
        t.config.emplace_back("num_variables", std::to_string(e.graph.num_variables));
        t.config.emplace_back("design_rate", format_rational(e.rate));
        t.config.emplace_back("design_rate_decimal", format_double(rate));
        t.columns = {"delta", "r_nats", "r_bits", "random_coding_r", "converged"};
        for (const auto& pt : shape.grid) {
            const bool ok = std::isfinite(pt.r);
            t.rows.push_back({format_double(pt.delta), ok ? format_double(pt.r) : "",
                              ok ? format_double(pt.r / std::log(2.0)) : "",
                              format_double(gldpc::random_coding_shape(e.rate, pt.delta)),
                              (ok && pt.diag.converged) ? "1" : "0"});
        }
        emit(t, o.out_path, o.format, ensembles.size() > 1 ? e.label : "");
    }
    return kExitOk;
}

int cmd_sweep(const CommonOpts& o, std::size_t min_factor, std::size_t max_factor, const std::string& kind,
              double tolerance) {
    if (min_factor < 1 || max_factor < min_factor)
        throw gldpc::InputError("sweep: need 1 <= min-factor <= max-factor");
    const double step = o.grid_step > 0 ? o.grid_step : 0.002;
    gldpc::Protograph block = gldpc::load_protograph_file(o.protograph_path);
    if (o.spreading_path.empty()) throw gldpc::InputError("--spreading is required for sweep");
    gldpc::EdgeSpreading spreading = gldpc::load_spreading_file(o.spreading_path, block);
    gldpc::OptimizerConfig cfg = optimizer_config(o);

    Table t;
    t.config = base_config("sweep", o, step);
    t.config.emplace_back("min_factor", std::to_string(min_factor));
    t.config.emplace_back("max_factor", std::to_string(max_factor));
    t.config.emplace_back("kind", kind);
    t.config.emplace_back("coincidence_tolerance", format_double(tolerance, 6));
    t.columns = {"factor", "kind", "rate", "delta_min", "lower_bound", "upper_bound", "coincide", "delta_free", "error"};

    const bool want_term = kind == "both" || kind == "terminated";
    const bool want_tail = kind == "both" || kind == "tailbiting";
    // Crossing maximizers carry across ascending factors: zero-padded in time
    // they stay feasible for longer chains and rings, seeding each scan with
    // the best localized configuration found so far.
    Eigen::VectorXd carry;
    auto padded_to = [&carry](std::size_t n) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        if (carry.size() > 0 && carry.size() <= x.size()) x.head(carry.size()) = carry;
        return x;
    };
    for (std::size_t f = min_factor; f <= max_factor; ++f) {
        std::optional<double> dhat, dcheck, ub, lb;
        gldpc::Rational term_rate, tail_rate;
        std::string term_err, tail_err;
        if (want_term) {
            try {
                gldpc::CoupledProtograph c = gldpc::terminate(block, spreading, f);
                term_rate = gldpc::design_rate(c.realized);
                const Eigen::VectorXd seed = padded_to(c.realized.num_variables);
                gldpc::GrowthRateReport rep = gldpc::growth_rate_scan(
                    c.realized, step, cfg, c.time_of_variable, 0.9, carry.size() ? &seed : nullptr);
                if (rep.delta_min) {
                    dhat = *rep.delta_min;
                    ub = gldpc::upper_bound(*dhat, f, spreading.memory);
                }
                if (rep.crossing_argmax.size()) carry = rep.crossing_argmax;
            } catch (const std::exception& e) {
                term_err = e.what();
            }
        }
        if (want_tail) {
            try {
                gldpc::CoupledProtograph c = gldpc::tailbite(block, spreading, f);
                tail_rate = gldpc::design_rate(c.realized);
                const Eigen::VectorXd seed = padded_to(c.realized.num_variables);
                gldpc::GrowthRateReport rep = gldpc::growth_rate_scan(
                    c.realized, step, cfg, c.time_of_variable, 0.9, carry.size() ? &seed : nullptr);
                if (rep.delta_min) {
                    dcheck = *rep.delta_min;
                    lb = gldpc::lower_bound(*dcheck, f, spreading.memory);
                }
                if (!want_term && rep.crossing_argmax.size()) carry = rep.crossing_argmax;
            } catch (const std::exception& e) {
                tail_err = e.what();
            }
        }
        const bool coincide = ub && lb && std::abs(*ub - *lb) <= tolerance;
        const std::string coincide_cell = (ub && lb) ? (coincide ? "1" : "0") : "";
        const std::string dfree_cell = coincide ? format_double(0.5 * (*ub + *lb)) : "";
        if (want_term)
            t.rows.push_back({std::to_string(f), "terminated",
                              term_err.empty() ? format_rational(term_rate) : "", opt_cell(dhat), opt_cell(lb),
                              opt_cell(ub), coincide_cell, dfree_cell, term_err});
        if (want_tail)
            t.rows.push_back({std::to_string(f), "tailbiting",
                              tail_err.empty() ? format_rational(tail_rate) : "", opt_cell(dcheck), opt_cell(lb),
                              opt_cell(ub), coincide_cell, dfree_cell, tail_err});
    }
    emit(t, o.out_path, o.format, "");
    return kExitOk;
}

int cmd_bounds(const CommonOpts& o, std::size_t min_T, std::size_t max_T, double tolerance) {
    if (min_T < 1 || max_T < min_T) throw gldpc::InputError("bounds: need 1 <= min-T <= max-T");
    const double step = o.grid_step > 0 ? o.grid_step : 0.002;
    gldpc::Protograph block = gldpc::load_protograph_file(o.protograph_path);
    if (o.spreading_path.empty()) throw gldpc::InputError("--spreading is required for bounds");
    gldpc::EdgeSpreading spreading = gldpc::load_spreading_file(o.spreading_path, block);

    std::vector<std::size_t> range;
    for (std::size_t T = min_T; T <= max_T; ++T) range.push_back(T);
    std::vector<gldpc::FreeDistanceBounds> rows =
        gldpc::scan(block, spreading, range, tolerance, optimizer_config(o), step);

    Table t;
    t.config = base_config("bounds", o, step);
    t.config.emplace_back("min_T", std::to_string(min_T));
    t.config.emplace_back("max_T", std::to_string(max_T));
    t.config.emplace_back("memory", std::to_string(spreading.memory));
    t.config.emplace_back("coincidence_tolerance", format_double(tolerance, 6));
    t.columns = {"T",           "delta_min_terminated", "delta_min_tailbiting", "lower_bound", "upper_bound",
                 "coincide",    "delta_free",           "uncertainty",          "terminated_rate", "error"};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.period), opt_cell(r.delta_min_terminated), opt_cell(r.delta_min_tailbiting),
                          opt_cell(r.lower), opt_cell(r.upper), (r.lower && r.upper) ? (r.coincide ? "1" : "0") : "",
                          opt_cell(r.delta_free), r.delta_free ? format_double(r.uncertainty) : "",
                          r.error.empty() ? format_rational(r.terminated_rate) : "", r.error});
    }
    emit(t, o.out_path, o.format, "");
    return kExitOk;
}

int cmd_rate(const CommonOpts& o, const EnsembleSelect& sel) {
    std::vector<Ensemble> ensembles = build_ensembles(o, sel);
    Table t;
    t.config = base_config("rate", o, 0);
    t.columns = {"ensemble", "kind", "factor", "num_variables", "rate", "rate_decimal", "rate_correction"};
    for (const auto& e : ensembles) {
        t.rows.push_back({e.label, e.kind, e.factor ? std::to_string(*e.factor) : "",
                          std::to_string(e.graph.num_variables), format_rational(e.rate),
                          format_double(static_cast<double>(e.rate)),
                          std::to_string(gldpc::delta_correction(e.graph))});
    }
    emit(t, o.out_path, o.format, "");
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, const gldpc::VerificationOptions& opts) {
    std::vector<gldpc::VerificationCheck> checks = gldpc::run_verification(opts);
    Table t;
    ConfigEcho c;
    c.emplace_back("command", "verify");
    c.emplace_back("seed", std::to_string(opts.seed));
    c.emplace_back("instances", std::to_string(opts.instances));
    c.emplace_back("max_N", std::to_string(opts.max_N));
    c.emplace_back("max_edges", std::to_string(opts.max_edges));
    t.config = std::move(c);
    t.columns = {"check", "result", "detail"};
    bool all_ok = true;
    for (const auto& ch : checks) {
        const std::string result = ch.skipped ? "skip" : (ch.passed ? "pass" : "fail");
        if (!ch.skipped && !ch.passed) all_ok = false;
        t.rows.push_back({ch.name, result, ch.detail});
        if (ch.skipped)
            std::cout << "[SKIP] " << ch.name << " — " << ch.detail << " (warning: guard limit exceeded)\n";
        else
            std::cout << (ch.passed ? "[PASS] " : "[FAIL] ") << ch.name << " — " << ch.detail << "\n";
    }
    if (!o.out_path.empty()) emit(t, o.out_path, o.format, "");
    std::cout << (all_ok ? "verification passed" : "verification FAILED") << "\n";
    return all_ok ? kExitOk : kExitAnalysis;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"protograph GLDPC ensemble analysis"};
    app.require_subcommand(1);

    CommonOpts shape_o, sweep_o, bounds_o, rate_o, verify_o;
    EnsembleSelect shape_sel, rate_sel;

    CLI::App* shape = app.add_subcommand("shape", "spectral shape curves");
    add_common(shape, shape_o, true);
    add_selectors(shape, shape_sel);

    CLI::App* sweep = app.add_subcommand("sweep", "growth rates over coupling-factor ranges");
    add_common(sweep, sweep_o, true);
    std::size_t sweep_min = 7, sweep_max = 20;
    std::string sweep_kind = "both";
    double sweep_tol = 0.01;
    sweep->add_option("--min-factor", sweep_min, "smallest L / lambda");
    sweep->add_option("--max-factor", sweep_max, "largest L / lambda");
    sweep->add_option("--kind", sweep_kind, "which family to sweep")
        ->check(CLI::IsMember({"both", "terminated", "tailbiting"}));
    sweep->add_option("--coincidence-tol", sweep_tol, "bound coincidence tolerance");

    CLI::App* bounds = app.add_subcommand("bounds", "free-distance growth-rate bounds");
    add_common(bounds, bounds_o, true);
    std::size_t bounds_min = 10, bounds_max = 20;
    double bounds_tol = 0.01;
    bounds->add_option("--min-T", bounds_min, "smallest period");
    bounds->add_option("--max-T", bounds_max, "largest period");
    bounds->add_option("--coincidence-tol", bounds_tol, "bound coincidence tolerance");

    CLI::App* rate = app.add_subcommand("rate", "exact design rates");
    add_common(rate, rate_o, true);
    add_selectors(rate, rate_sel);

    CLI::App* verify = app.add_subcommand("verify", "oracle self-check suite");
    verify_o.seed = 42; // verification suite default
    add_common(verify, verify_o, false);
    gldpc::VerificationOptions vopts;
    verify->add_option("--instances", vopts.instances, "number of random tiny instances");
    verify->add_option("--max-N", vopts.max_N, "lifting guard for the brute-force oracle");
    verify->add_option("--max-edges", vopts.max_edges, "edge guard for the brute-force oracle");
    verify->add_flag("--perturb-product-formula", vopts.perturb_product_formula,
                     "test hook: corrupt the product formula to prove the gate detects it")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    vopts.seed = verify_o.seed;

    try {
        if (shape->parsed()) return cmd_shape(shape_o, shape_sel);
        if (sweep->parsed()) return cmd_sweep(sweep_o, sweep_min, sweep_max, sweep_kind, sweep_tol);
        if (bounds->parsed()) return cmd_bounds(bounds_o, bounds_min, bounds_max, bounds_tol);
        if (rate->parsed()) return cmd_rate(rate_o, rate_sel);
        if (verify->parsed()) return cmd_verify(verify_o, vopts);
    } catch (const gldpc::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    }
    return kExitInput;
}
