#pragma once

#include "knotgate/algebra.hpp"
#include "knotgate/compile.hpp"
#include "knotgate/linkgate.hpp"
#include "knotgate/presentation.hpp"
#include "knotgate/reps.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace knotgate {

inline constexpr const char* kToolVersion = "0.1.0";

// insertion-ordered so repeated runs serialize byte-identically
using json = nlohmann::ordered_json;

/// json::parse with parse failures rethrown as ValidationError
json parse_json(const std::string& text);

json json_complex(const cplx& z); // [re, im]
json json_mat2(const Mat2& m);    // row-major 2x2 of [re, im]
json json_mat4(const Mat4& m);
json json_imat2(const IMat2& m); // row-major 2x2 of integers
json json_quat(const Quaternion& q); // [a, b, c, d] along 1, i, j, k

/// Splits a 2x2 unitary into a global phase and an SU(2) rotation:
/// u = e^{i global_phase} exp(i (angle/2) axis.sigma) with axis in the
/// (sigma_x, sigma_y, sigma_z) basis, angle in [0, pi], axis [0,0,1] for
/// phase-only matrices.
json json_axis_angle(const Mat2& u);

/// Reads a matrix in json_mat2 form: a 2x2 row-major array whose entries are
/// [re, im] pairs (bare reals also accepted). Unwraps "result", "achieved",
/// "matrix", or "target" wrapper objects first.
Mat2 mat2_from_json(const json& j);

json json_word(const Word& w); // formatted string
json json_presentation(const Presentation& p);

/// Accepts a bare presentation object, an output envelope wrapping one
/// under "result", or an object carrying one under "presentation"; this is
/// what lets `present --json` pipe into `rep --solve`.
Presentation presentation_from_json(const json& j);

json json_representation(const Representation& rep);
json json_character_points(const std::vector<CharacterPoint>& pts);
std::string character_csv(const std::vector<CharacterPoint>& pts); // x,y,z,residual lines
json json_compile_result(const CompileResult& r);
json json_coverage(const CoverageReport& r);
json json_gate(const TwoQubitGate& g);

/// the stable outer schema: {command, inputs, result, version}
json envelope(const std::string& command, json inputs, json result);

/// envelope serialized for output: two-space indent plus trailing newline
std::string dump_json(const json& j);

} // namespace knotgate
