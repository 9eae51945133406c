#pragma once

// Protograph data model: variable nodes plus generalized constraint nodes
// whose sockets map code positions to variable nodes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gldpc/gf2.hpp"

namespace gldpc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// One edge of the protograph: position `position` of the owning constraint's
/// code is wired to variable node `variable`.
struct Socket {
    std::size_t position;
    std::size_t variable;
};

struct GeneralizedConstraint {
    ConstraintCode code;
    std::vector<Socket> sockets;
    // Effective checks of the unshortened code this node descends from.
    // Equals code.num_checks_effective for nodes that were never shortened;
    // the difference summed over nodes is the rate correction.
    std::size_t parent_checks = 0;

    GeneralizedConstraint() = default;
    GeneralizedConstraint(ConstraintCode c, std::vector<Socket> s)
        : code(std::move(c)), sockets(std::move(s)), parent_checks(code.num_checks_effective) {}
};

struct Protograph {
    std::string name;
    std::size_t num_variables = 0;
    std::vector<GeneralizedConstraint> constraints;

    std::vector<std::size_t> variable_degrees() const {
        std::vector<std::size_t> deg(num_variables, 0);
        for (const auto& cn : constraints)
            for (const auto& s : cn.sockets)
                if (s.variable < num_variables) ++deg[s.variable];
        return deg;
    }

    /// Integer bi-adjacency matrix: entry (i,j) = number of sockets of
    /// constraint i wired to variable j (parallel edges allowed).
    std::vector<std::vector<int>> base_matrix() const {
        std::vector<std::vector<int>> b(constraints.size(), std::vector<int>(num_variables, 0));
        for (std::size_t i = 0; i < constraints.size(); ++i)
            for (const auto& s : constraints[i].sockets)
                if (s.variable < num_variables) ++b[i][s.variable];
        return b;
    }
};

struct ValidationIssue {
    std::optional<std::size_t> constraint; // offending node, if any
    std::optional<std::size_t> position;   // offending socket position, if any
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::vector<std::size_t> degrees;
    std::vector<std::vector<int>> base_matrix;
    bool ok() const { return issues.empty(); }
};

inline ValidationReport validate(const Protograph& p) {
    ValidationReport rep;
    auto issue = [&rep](std::optional<std::size_t> c, std::optional<std::size_t> pos, std::string msg) {
        rep.issues.push_back({c, pos, std::move(msg)});
    };

    if (p.num_variables == 0) issue({}, {}, "protograph has no variable nodes");
    if (p.constraints.empty()) issue({}, {}, "protograph has no constraint nodes");

    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& cn = p.constraints[i];
        const std::size_t n = cn.code.length;
        if (cn.code.codewords.empty()) {
            issue(i, {}, "constraint code has no codewords");
            continue;
        }
        if (cn.sockets.size() != n)
            issue(i, {}, "constraint has " + std::to_string(cn.sockets.size()) +
                             " sockets for a length-" + std::to_string(n) + " code");
        std::vector<int> seen(n, 0);
        for (const auto& s : cn.sockets) {
            if (s.position >= n) {
                issue(i, s.position, "socket position out of range");
                continue;
            }
            if (seen[s.position]++)
                issue(i, s.position, "duplicate socket at code position");
            if (s.variable >= p.num_variables)
                issue(i, s.position, "socket variable " + std::to_string(s.variable) + " out of range");
        }
    }

    rep.degrees = p.variable_degrees();
    for (std::size_t j = 0; j < rep.degrees.size(); ++j)
        if (rep.degrees[j] == 0)
            issue({}, {}, "variable " + std::to_string(j) + " has degree 0");

    rep.base_matrix = p.base_matrix();
    return rep;
}

/// Design rate R = 1 - (sum of effective checks) / n_v, exact.
/// Boundary-shortened nodes enter with their reduced check counts, which
/// realizes the rate correction of terminated chains automatically.
inline Rational design_rate(const Protograph& p) {
    if (p.num_variables == 0)
        throw std::invalid_argument("design_rate: protograph has no variables");
    BigInt checks = 0;
    for (const auto& cn : p.constraints) checks += cn.code.num_checks_effective;
    return Rational(1) - Rational(checks, BigInt(p.num_variables));
}

/// Total rate correction: sum over nodes of (parent checks - effective checks).
inline std::size_t delta_correction(const Protograph& p) {
    std::size_t d = 0;
    for (const auto& cn : p.constraints) {
        if (cn.parent_checks > cn.code.num_checks_effective)
            d += cn.parent_checks - cn.code.num_checks_effective;
    }
    return d;
}

} // namespace gldpc
