#include "knotgate/jsonio.hpp"

#include "knotgate/errors.hpp"
#include "knotgate/word.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace knotgate {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid JSON input: ") + e.what());
    }
}

json json_complex(const cplx& z) { return json::array({z.real(), z.imag()}); }

json json_mat2(const Mat2& m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back(json_complex(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json json_mat4(const Mat4& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(json_complex(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json json_imat2(const IMat2& m) {
    return json::array({json::array({m.e[0], m.e[1]}), json::array({m.e[2], m.e[3]})});
}

json json_quat(const Quaternion& q) { return json::array({q.a, q.b, q.c, q.d}); }

json json_axis_angle(const Mat2& u) {
    const double alpha = std::arg(det(u)) / 2.0;
    const Mat2 v = cplx(std::cos(-alpha), std::sin(-alpha)) * u;
    Quaternion q = su2_to_quat(v);
    // pick the sheet with a non negative leading component so the form is
    // unique for both lifts of the same rotation
    const bool flip = q.a < 0 ||
                      (q.a == 0 && (q.b < 0 || (q.b == 0 && (q.c < 0 || (q.c == 0 && q.d < 0)))));
    if (flip) q = Quaternion{-q.a, -q.b, -q.c, -q.d};
    const double vn = std::sqrt(q.b * q.b + q.c * q.c + q.d * q.d);
    const double angle = 2.0 * std::atan2(vn, q.a);
    // quaternion components sit along (i, j, k) = i(sigma_z, sigma_y, sigma_x)
    json axis = vn > 1e-15 ? json::array({q.d / vn, q.c / vn, q.b / vn})
                           : json::array({0.0, 0.0, 1.0});
    return json{{"global_phase", alpha}, {"angle", angle}, {"axis", std::move(axis)}};
}

Mat2 mat2_from_json(const json& j) {
    const json* node = &j;
    for (const char* key : {"result", "achieved", "matrix", "target"})
        if (node->is_object() && node->contains(key)) node = &node->at(key);
    if (!node->is_array() || node->size() != 2)
        throw ValidationError("matrix JSON must be a 2x2 row-major array");
    Mat2 m;
    try {
        for (int r = 0; r < 2; ++r) {
            const json& row = node->at(static_cast<size_t>(r));
            if (!row.is_array() || row.size() != 2)
                throw ValidationError("matrix JSON must be a 2x2 row-major array");
            for (int c = 0; c < 2; ++c) {
                const json& cell = row.at(static_cast<size_t>(c));
                if (cell.is_array()) {
                    if (cell.size() != 2)
                        throw ValidationError("matrix entries must be [re, im] pairs");
                    m.at(r, c) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
                } else {
                    m.at(r, c) = cplx(cell.get<double>(), 0.0);
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed matrix JSON: ") + e.what());
    }
    return m;
}

json json_word(const Word& w) { return format_word(w); }

json json_presentation(const Presentation& p) {
    json rels = json::array();
    for (const Word& r : p.relators) rels.push_back(format_word(r));
    return json{{"generators", p.generators}, {"relators", std::move(rels)}};
}

Presentation presentation_from_json(const json& j) {
    const json* node = &j;
    if (node->is_object() && node->contains("result")) node = &node->at("result");
    if (node->is_object() && node->contains("presentation")) node = &node->at("presentation");
    if (!node->is_object() || !node->contains("generators") || !node->contains("relators"))
        throw ValidationError(
            "presentation JSON must carry 'generators' and 'relators' fields");
    try {
        std::vector<std::string> gens;
        for (const json& g : node->at("generators")) gens.push_back(g.get<std::string>());
        std::vector<Word> rels;
        for (const json& r : node->at("relators")) rels.push_back(parse_word(r.get<std::string>()));
        return make_presentation(std::move(gens), std::move(rels));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed presentation JSON: ") + e.what());
    }
}

json json_representation(const Representation& rep) {
    json images = json::object();
    json quats = json::object();
    for (size_t i = 0; i < rep.images.size(); ++i) {
        const std::string& name = rep.presentation.generators[i];
        images[name] = json_mat2(quat_to_su2(rep.images[i]));
        quats[name] = json_quat(rep.images[i]);
    }
    json out = json::object();
    if (!rep.label.empty()) out["label"] = rep.label;
    out["presentation"] = json_presentation(rep.presentation);
    out["images"] = std::move(images);
    out["quaternions"] = std::move(quats);
    out["residual"] = rep.residual;
    return out;
}

json json_character_points(const std::vector<CharacterPoint>& pts) {
    json rows = json::array();
    for (const CharacterPoint& p : pts)
        rows.push_back(json::array({p.x, p.y, p.z, p.residual}));
    return json{{"columns", json::array({"x", "y", "z", "residual"})}, {"points", std::move(rows)}};
}

std::string character_csv(const std::vector<CharacterPoint>& pts) {
    std::ostringstream out;
    out << "x,y,z,residual\n";
    out.precision(17);
    for (const CharacterPoint& p : pts)
        out << p.x << ',' << p.y << ',' << p.z << ',' << p.residual << '\n';
    return out.str();
}

json json_compile_result(const CompileResult& r) {
    return json{{"word", format_word(r.word)},
                {"length", r.word.size()},
                {"dist", r.dist},
                {"explored", r.explored},
                {"achieved", json_mat2(r.achieved)},
                {"achieved_axis_angle", json_axis_angle(r.achieved)}};
}

json json_coverage(const CoverageReport& r) {
    return json{{"epsilon", r.epsilon},
                {"max_len", r.max_len},
                {"sample_count", r.sample_count},
                {"covered_fraction", r.covered_fraction},
                {"seed", r.seed}};
}

json json_gate(const TwoQubitGate& g) {
    return json{{"hamiltonian", json_mat4(g.hamiltonian)},
                {"time", g.time},
                {"unitary", json_mat4(g.unitary)}};
}

json envelope(const std::string& command, json inputs, json result) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"result", std::move(result)},
                {"version", kToolVersion}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

} // namespace knotgate
