#pragma once

// Edge spreading and the two termination transforms: spatially coupled
// termination (with boundary shortening) and tail-biting (modular wraparound).

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gldpc/protograph.hpp"

namespace gldpc {

struct ComponentAssignment {
    std::size_t constraint;
    std::size_t position;
    std::size_t component;
};

/// Partition of a block protograph's sockets among memory+1 components.
/// component_of[c][p] is the component of constraint c's socket at position p.
struct EdgeSpreading {
    std::size_t memory = 0;
    std::vector<std::vector<std::size_t>> component_of;
};

/// Validates an assignment against the block protograph: every socket covered
/// exactly once, components within 0..memory.
inline EdgeSpreading spread(const Protograph& block, std::size_t memory,
                            const std::vector<ComponentAssignment>& assignment) {
    EdgeSpreading s;
    s.memory = memory;
    s.component_of.resize(block.constraints.size());
    std::vector<std::vector<bool>> covered(block.constraints.size());
    for (std::size_t c = 0; c < block.constraints.size(); ++c) {
        s.component_of[c].assign(block.constraints[c].code.length, 0);
        covered[c].assign(block.constraints[c].code.length, false);
    }
    for (const auto& a : assignment) {
        if (a.constraint >= block.constraints.size())
            throw std::out_of_range("spread: constraint " + std::to_string(a.constraint) + " out of range");
        if (a.position >= block.constraints[a.constraint].code.length)
            throw std::out_of_range("spread: position " + std::to_string(a.position) +
                                    " out of range for constraint " + std::to_string(a.constraint));
        if (a.component > memory)
            throw std::out_of_range("spread: component " + std::to_string(a.component) +
                                    " exceeds memory " + std::to_string(memory));
        if (covered[a.constraint][a.position])
            throw std::invalid_argument("spread: duplicate assignment for constraint " +
                                        std::to_string(a.constraint) + " position " +
                                        std::to_string(a.position));
        covered[a.constraint][a.position] = true;
        s.component_of[a.constraint][a.position] = a.component;
    }
    for (std::size_t c = 0; c < covered.size(); ++c)
        for (std::size_t p = 0; p < covered[c].size(); ++p)
            if (!covered[c][p])
                throw std::invalid_argument("spread: uncovered socket at constraint " +
                                            std::to_string(c) + " position " + std::to_string(p));
    return s;
}

/// Component base matrix B_i: edges of component i only.
inline std::vector<std::vector<int>> component_base_matrix(const Protograph& block,
                                                           const EdgeSpreading& s,
                                                           std::size_t component) {
    std::vector<std::vector<int>> b(block.constraints.size(), std::vector<int>(block.num_variables, 0));
    for (std::size_t c = 0; c < block.constraints.size(); ++c)
        for (const auto& sock : block.constraints[c].sockets)
            if (s.component_of[c][sock.position] == component) ++b[c][sock.variable];
    return b;
}

enum class CouplingKind { terminated, tailbiting };

/// Time-indexed protograph produced by terminating or tail-biting a spreading.
struct CoupledProtograph {
    CouplingKind kind;
    std::size_t factor; // L or lambda
    Protograph block;
    EdgeSpreading spreading;
    Protograph realized;
    std::vector<std::size_t> time_of_variable;
    std::vector<std::size_t> time_of_constraint;
    std::vector<std::string> warnings;
};

namespace detail {

// Builds the realized constraint for block constraint `c` at time `t`.
// keep(p) yields the variable time for position p, or -1 to drop the socket.
template <typename KeepFn>
inline void emit_constraint(const Protograph& block, std::size_t c, std::size_t t,
                            std::size_t b_v, KeepFn&& keep, CoupledProtograph& out) {
    const auto& cn = block.constraints[c];
    std::vector<std::size_t> kept_positions;
    std::vector<std::size_t> kept_targets; // realized variable ids, parallel to kept_positions
    std::vector<Socket> by_position(cn.code.length);
    std::vector<bool> have(cn.code.length, false);
    for (const auto& sock : cn.sockets) {
        by_position[sock.position] = sock;
        have[sock.position] = true;
    }
    for (std::size_t p = 0; p < cn.code.length; ++p) {
        if (!have[p]) continue; // block node itself shortened; its spreading entry is moot
        const long long tt = keep(p);
        if (tt < 0) continue;
        kept_positions.push_back(p);
        kept_targets.push_back(static_cast<std::size_t>(tt) * b_v + by_position[p].variable);
    }
    if (kept_positions.empty()) {
        out.warnings.push_back("constraint " + std::to_string(c) + " at time " + std::to_string(t) +
                               " lost all sockets and was dropped");
        return;
    }

    std::set<std::size_t> removed;
    for (std::size_t p = 0; p < cn.code.length; ++p)
        if (std::find(kept_positions.begin(), kept_positions.end(), p) == kept_positions.end())
            removed.insert(p);

    GeneralizedConstraint rc;
    rc.code = shorten(cn.code, removed);
    rc.parent_checks = cn.code.num_checks_effective;
    rc.sockets.reserve(kept_positions.size());
    for (std::size_t i = 0; i < kept_positions.size(); ++i)
        rc.sockets.push_back(Socket{i, kept_targets[i]}); // positions remapped to the shortened code
    out.realized.constraints.push_back(std::move(rc));
    out.time_of_constraint.push_back(t);
}

} // namespace detail

/// Terminated (spatially coupled) chain: variables at times 0..L-1,
/// constraints at times 0..L-1+memory. A socket of component i at constraint
/// time t reaches the variable at time t-i; sockets falling outside the chain
/// are shortened away.
inline CoupledProtograph terminate(const Protograph& block, const EdgeSpreading& s, std::size_t L) {
    if (L < 1) throw std::invalid_argument("terminate: L must be >= 1");
    CoupledProtograph out{CouplingKind::terminated, L, block, s, {}, {}, {}, {}};
    const std::size_t b_v = block.num_variables;
    out.realized.name = block.name.empty() ? "terminated" : block.name + "-terminated-L" + std::to_string(L);
    out.realized.num_variables = L * b_v;
    out.time_of_variable.resize(L * b_v);
    for (std::size_t t = 0; t < L; ++t)
        for (std::size_t j = 0; j < b_v; ++j) out.time_of_variable[t * b_v + j] = t;

    for (std::size_t t = 0; t < L + s.memory; ++t) {
        for (std::size_t c = 0; c < block.constraints.size(); ++c) {
            detail::emit_constraint(block, c, t, b_v,
                                    [&](std::size_t p) -> long long {
                                        const long long tt = static_cast<long long>(t) -
                                                             static_cast<long long>(s.component_of[c][p]);
                                        return (tt >= 0 && tt < static_cast<long long>(L)) ? tt : -1;
                                    },
                                    out);
        }
    }
    return out;
}

/// Tail-biting wraparound: variables and constraints at times 0..lambda-1,
/// source times taken modulo lambda. No shortening; every realized node is a
/// full copy of its block constraint.
inline CoupledProtograph tailbite(const Protograph& block, const EdgeSpreading& s, std::size_t lambda) {
    if (lambda < 1 || lambda < s.memory)
        throw std::invalid_argument("tailbite: lambda must satisfy lambda >= max(1, memory)");
    CoupledProtograph out{CouplingKind::tailbiting, lambda, block, s, {}, {}, {}, {}};
    const std::size_t b_v = block.num_variables;
    out.realized.name = block.name.empty() ? "tailbiting" : block.name + "-tailbiting-l" + std::to_string(lambda);
    out.realized.num_variables = lambda * b_v;
    out.time_of_variable.resize(lambda * b_v);
    for (std::size_t t = 0; t < lambda; ++t)
        for (std::size_t j = 0; j < b_v; ++j) out.time_of_variable[t * b_v + j] = t;

    for (std::size_t t = 0; t < lambda; ++t) {
        for (std::size_t c = 0; c < block.constraints.size(); ++c) {
            detail::emit_constraint(block, c, t, b_v,
                                    [&](std::size_t p) -> long long {
                                        const long long lam = static_cast<long long>(lambda);
                                        long long tt = (static_cast<long long>(t) -
                                                        static_cast<long long>(s.component_of[c][p])) % lam;
                                        if (tt < 0) tt += lam;
                                        return tt;
                                    },
                                    out);
        }
    }
    return out;
}

} // namespace gldpc
