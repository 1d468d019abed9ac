#pragma once

#include "knotgate/algebra.hpp"
#include "knotgate/reps.hpp"

namespace knotgate::detail {

// shared by the search engine and the reference enumerator so both reject
// exactly the same inputs
void check_compile_inputs(const Representation& rep, int max_len, double epsilon);
Quaternion target_quat(const Mat2& target);

} // namespace knotgate::detail
