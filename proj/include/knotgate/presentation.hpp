#pragma once

#include "knotgate/word.hpp"

#include <string>
#include <vector>

namespace knotgate {

/// Finitely presented group: ordered generator names plus relator words
/// (each asserted = e). Relators are stored freely and cyclically reduced
/// and never empty; every letter index is < generators.size().
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
};

/// Validates indices, reduces relators, drops the ones that reduce to e.
Presentation make_presentation(std::vector<std::string> generators, std::vector<Word> relators);

/// "a".."z" then "g26", "g27", ... (matches the word letter syntax).
std::vector<std::string> default_generator_names(int count);

/// Tietze elimination: solve relators[defining] for generator g (which must
/// occur in it exactly once, up to cyclic rotation) as g = w, substitute w
/// throughout, drop the defining relator, re-reduce, drop trivial relators
/// and equivalent_relator duplicates. Throws NotSolvable (ValidationError)
/// when no rotation isolates g.
Presentation eliminate_generator(const Presentation& p, int g, int defining);

/// Repeatedly eliminates the highest-indexed solvable generator (defining
/// relator: the shortest that isolates it, ties to the first) until nothing
/// is solvable. Deterministic.
Presentation reduce_presentation(const Presentation& p);

/// Substitutes word w for generator g in every relator (pure rewrite; used
/// by eliminate_generator and available for tests).
Word substitute(const Word& target, int g, const Word& w);

/// Braid group B_n on n-1 generators s1..s_{n-1}: braid relators
/// s_i s_{i+1} s_i (s_{i+1} s_i s_{i+1})^-1 and far commutators. n >= 2.
Presentation braid_presentation(int n);

std::string presentation_to_text(const Presentation& p);

} // namespace knotgate
