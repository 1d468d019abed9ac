#include "knotgate/compile.hpp"

#include "compile_internal.hpp"

#include <limits>
#include <vector>

namespace knotgate {

namespace {

// depth-first enumeration of freely reduced words of one fixed length, in
// lexicographic order (letter codes a=0, A=1, b=2, B=3)
struct Enumerator {
    const Representation* rep;
    Quaternion target;
    double best_dist = std::numeric_limits<double>::infinity();
    Word best_word;
    std::uint64_t explored = 0;
    Word scratch;

    void consider() {
        const double d = distance(compile_eval(*rep, scratch), target);
        ++explored;
        if (d < best_dist || (d == best_dist && word_lex_less(scratch, best_word))) {
            best_dist = d;
            best_word = scratch;
        }
    }

    void extend(int remaining) {
        if (remaining == 0) {
            consider();
            return;
        }
        const int last = scratch.empty() ? -1
                                         : scratch.back().gen * 2 + (scratch.back().exp > 0 ? 0 : 1);
        for (int code = 0; code < 4; ++code) {
            if (last >= 0 && (last ^ 1) == code) continue;
            scratch.push_back(Letter{code / 2, (code & 1) ? -1 : 1});
            extend(remaining - 1);
            scratch.pop_back();
        }
    }
};

} // namespace

CompileResult reference_search(const Representation& rep, const Mat2& target, int max_len,
                               double epsilon) {
    detail::check_compile_inputs(rep, max_len, epsilon);

    Enumerator e;
    e.rep = &rep;
    e.target = detail::target_quat(target);
    for (int len = 0; len <= max_len; ++len) {
        e.extend(len);
        if (e.best_dist <= epsilon) break;
    }

    CompileResult result;
    result.word = e.best_word;
    result.achieved = quat_to_su2(compile_eval(rep, e.best_word));
    result.dist = e.best_dist;
    result.explored = e.explored;
    return result;
}

} // namespace knotgate
