/**
 * @file json_io.hpp
 * @brief JSON encodings shared by the library and the command-line tool.
 *
 *   frame:   {"d": int, "m": int, "vectors": [[[re, im], ...], ...]}
 *   matrix:  row-major [[[re, im], ...], ...]
 *   report:  {"iterations": n, "residual": x, "unitary_distance": x, "converged": bool}
 *
 * Complex entries are written as [re, im] pairs; plain numbers are accepted on
 * input as real entries. Doubles are written in shortest round-trip form.
 */
#pragma once

#include "framecraft/frame.hpp"
#include "framecraft/perturb.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace framecraft {

using Json = nlohmann::json;

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            "complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_to_json(const CVec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

inline Json frame_to_json(const Frame& f) {
    Json vectors = Json::array();
    for (std::size_t j = 0; j < f.size(); ++j) vectors.push_back(vector_to_json(f.vector(j)));
    return Json{{"d", f.dim()}, {"m", f.size()}, {"vectors", std::move(vectors)}};
}

inline Frame frame_from_json(const Json& j) {
    require(j.is_object() && j.contains("vectors") && j["vectors"].is_array(), "frame JSON needs a \"vectors\" array");
    const Json& vecs = j["vectors"];
    require(!vecs.empty(), "frame JSON has no vectors");
    require(vecs[0].is_array(), "frame vectors must be arrays");
    const std::size_t d = j.contains("d") ? j["d"].get<std::size_t>() : vecs[0].size();
    const std::size_t m = j.contains("m") ? j["m"].get<std::size_t>() : vecs.size();
    require(vecs.size() == m, "frame JSON: \"m\" does not match the number of vectors");
    std::vector<CVec> columns;
    columns.reserve(m);
    for (const Json& v : vecs) {
        require(v.is_array() && v.size() == d, "frame JSON: vector length differs from \"d\"");
        CVec c(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) c(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
        columns.push_back(std::move(c));
    }
    return Frame(d, columns);
}

inline Json matrix_to_json(const CMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
    return rows;
}

inline CMat matrix_from_json(const Json& j) {
    const Json& rows = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
    require(rows.is_array() && !rows.empty() && rows[0].is_array(), "matrix JSON must be a non-empty array of rows");
    const std::size_t r = rows.size();
    const std::size_t c = rows[0].size();
    CMat m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
        require(rows[i].is_array() && rows[i].size() == c, "matrix JSON rows must have equal length");
        for (std::size_t k = 0; k < c; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(rows[i][k]);
    }
    return m;
}

inline Json report_to_json(const SectionSolveReport& r) {
    Json out{{"iterations", r.iterations},
             {"residual", r.residual},
             {"unitary_distance", r.unitary_distance},
             {"converged", r.converged}};
    if (r.reducible) out["warning"] = "reducible";
    return out;
}

inline SectionSolveReport report_from_json(const Json& j) {
    SectionSolveReport r;
    r.iterations = j.at("iterations").get<int>();
    r.residual = j.at("residual").get<double>();
    r.unitary_distance = j.at("unitary_distance").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.reducible = j.contains("warning");
    return r;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::invalid_input, path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace framecraft
