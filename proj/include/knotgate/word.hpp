#pragma once

#include <string>
#include <vector>

namespace knotgate {

/// One group letter: generator index with exponent +1 or -1.
struct Letter {
    int gen = 0;
    int exp = 1;

    bool operator==(const Letter&) const = default;
};

/// Plain letter sequence; exponent-±1 letters only, no power compression.
/// The empty word is the identity.
using Word = std::vector<Letter>;

/// Text form: lowercase letter = generator (a..z -> 0..25), uppercase = its
/// inverse; `g12`/`G12` address generators by number (a bare `g` with no
/// digits following is plain generator 6). Whitespace is ignored; "" is the
/// identity. Throws ValidationError on anything else.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

/// Unique freely reduced form (no adjacent x x^-1); idempotent,
/// length-non-increasing.
Word free_reduce(const Word& w);

/// Free reduction plus cancellation across the word ends (conjugacy-class
/// normal direction); idempotent.
Word cyclic_reduce(const Word& w);

Word word_inverse(const Word& w);
Word word_concat(const Word& x, const Word& y); // plain concatenation

/// free_reduce(x y x^-1 y^-1)
Word commutator(const Word& x, const Word& y);

/// True iff the cyclic reductions agree up to cyclic rotation and global
/// inversion. Equivalence relation on words.
bool equivalent_relator(const Word& u, const Word& v);

/// Largest generator index used, or -1 for the empty word.
int max_generator(const Word& w);

} // namespace knotgate
