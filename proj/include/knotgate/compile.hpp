#pragma once

#include "knotgate/algebra.hpp"
#include "knotgate/reps.hpp"
#include "knotgate/word.hpp"

#include <cstdint>

namespace knotgate {

struct CompileResult {
    Word word;
    Mat2 achieved;
    double dist = 0.0;
    std::uint64_t explored = 0;
};

/// Canonical evaluation shared by the search engine and the reference
/// enumerator: the word splits at ceil(len/2), each half multiplies left to
/// right, then the halves multiply. One shared association order makes
/// minima found by different search strategies comparable bitwise.
Quaternion compile_eval(const Representation& rep, const Word& w);

/// the pinned tie-break order: letters a < A < b < B, prefixes before their
/// extensions
bool word_lex_less(const Word& u, const Word& v);

/// Meet-in-the-middle search over freely reduced words in the two generator
/// images and their inverses, depth by depth up to max_len (<= 24). Returns
/// the lexicographically least word among those attaining the minimal
/// projective distance seen so far, stopping after the first depth whose
/// best distance is <= epsilon. Deterministic for fixed inputs, independent
/// of thread count.
CompileResult compile_word(const Representation& rep, const Mat2& target, int max_len,
                           double epsilon);

/// plain exhaustive enumeration with the same evaluation, total order, and
/// depth-wise early exit; the oracle for search exactness
CompileResult reference_search(const Representation& rep, const Mat2& target, int max_len,
                               double epsilon);

struct CoverageReport {
    double epsilon = 0.0;
    int max_len = 0;
    int sample_count = 0;
    double covered_fraction = 0.0;
    std::uint64_t seed = 0;
};

/// fraction of seeded Haar-random targets compiled to within epsilon;
/// deterministic given the seed, monotone in max_len for a fixed seed
CoverageReport coverage(const Representation& rep, double epsilon, int max_len, int samples,
                        std::uint64_t seed);

} // namespace knotgate
