#pragma once

// JSON ingestion for protographs and edge spreadings, plus small CSV/JSON
// emission helpers. Loader errors name the offending field.

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gldpc/coupling.hpp"
#include "gldpc/gf2.hpp"
#include "gldpc/protograph.hpp"

namespace gldpc {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

template <typename T>
T field(const nlohmann::json& j, const std::string& name, const std::string& where) {
    if (!j.contains(name)) throw InputError("missing field '" + name + "' in " + where);
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError("field '" + name + "' in " + where + " has the wrong type");
    }
}

} // namespace detail

/// Protograph JSON:
/// { "name": str, "num_variables": int,
///   "codes": { id: { "parity_check": [[0|1,...],...] }, ... },
///   "constraints": [ { "code": id, "sockets": [ {"position": int, "variable": int}, ... ] }, ... ] }
inline Protograph load_protograph(const nlohmann::json& j, const std::string& where = "protograph") {
    Protograph p;
    p.name = detail::field<std::string>(j, "name", where);
    p.num_variables = detail::field<std::size_t>(j, "num_variables", where);
    const auto codes_json = detail::field<nlohmann::json>(j, "codes", where);
    if (!codes_json.is_object()) throw InputError("field 'codes' in " + where + " must be an object");
    std::map<std::string, ConstraintCode> codes;
    for (const auto& [id, cj] : codes_json.items()) {
        const auto rows = detail::field<std::vector<std::vector<int>>>(cj, "parity_check", where + ".codes." + id);
        try {
            codes.emplace(id, enumerate_codewords(BinaryMatrix::from_rows(rows)));
        } catch (const std::exception& e) {
            throw InputError("invalid 'parity_check' for code '" + id + "': " + e.what());
        }
    }
    const auto constraints = detail::field<nlohmann::json>(j, "constraints", where);
    if (!constraints.is_array()) throw InputError("field 'constraints' in " + where + " must be an array");
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        const std::string ctx = where + ".constraints[" + std::to_string(c) + "]";
        GeneralizedConstraint gc;
        const auto code_id = detail::field<std::string>(constraints[c], "code", ctx);
        const auto it = codes.find(code_id);
        if (it == codes.end()) throw InputError("field 'code' in " + ctx + " names unknown code '" + code_id + "'");
        gc.code = it->second;
        gc.parent_checks = gc.code.num_checks_effective;
        const auto sockets = detail::field<nlohmann::json>(constraints[c], "sockets", ctx);
        if (!sockets.is_array()) throw InputError("field 'sockets' in " + ctx + " must be an array");
        for (std::size_t s = 0; s < sockets.size(); ++s) {
            const std::string sctx = ctx + ".sockets[" + std::to_string(s) + "]";
            Socket sock;
            sock.position = detail::field<std::size_t>(sockets[s], "position", sctx);
            sock.variable = detail::field<std::size_t>(sockets[s], "variable", sctx);
            gc.sockets.push_back(sock);
        }
        p.constraints.push_back(std::move(gc));
    }
    ValidationReport report = validate(p);
    if (!report.ok()) {
        std::ostringstream os;
        os << "invalid protograph '" << p.name << "':";
        for (const auto& issue : report.issues) os << " [" << issue.message << "]";
        throw InputError(os.str());
    }
    return p;
}

inline Protograph load_protograph_file(const std::string& path) {
    return load_protograph(detail::parse_file(path), path);
}

/// Spreading JSON:
/// { "memory": int, "components": [ {"constraint": int, "position": int, "component": int}, ... ] }
inline EdgeSpreading load_spreading(const nlohmann::json& j, const Protograph& block,
                                    const std::string& where = "spreading") {
    const auto memory = detail::field<std::size_t>(j, "memory", where);
    const auto comps = detail::field<nlohmann::json>(j, "components", where);
    if (!comps.is_array()) throw InputError("field 'components' in " + where + " must be an array");
    std::vector<ComponentAssignment> assignment;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string ctx = where + ".components[" + std::to_string(i) + "]";
        ComponentAssignment a;
        a.constraint = detail::field<std::size_t>(comps[i], "constraint", ctx);
        a.position = detail::field<std::size_t>(comps[i], "position", ctx);
        a.component = detail::field<std::size_t>(comps[i], "component", ctx);
        assignment.push_back(a);
    }
    try {
        return spread(block, memory, assignment);
    } catch (const std::exception& e) {
        throw InputError("invalid spreading in " + where + ": " + e.what());
    }
}

inline EdgeSpreading load_spreading_file(const std::string& path, const Protograph& block) {
    return load_spreading(detail::parse_file(path), block, path);
}

/// CSV writer: `config` pairs are echoed as leading comment lines so every
/// artifact records how it was produced.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& config,
              const std::vector<std::string>& columns)
        : os_(os) {
        for (const auto& [k, v] : config) os_ << "# " << k << "=" << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
        os_ << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << "\n";
    }

  private:
    std::ostream& os_;
};

inline std::string format_double(double v, int precision = 9) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

inline std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace gldpc
