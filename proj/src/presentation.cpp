#include "knotgate/presentation.hpp"

#include "knotgate/errors.hpp"

#include <algorithm>

namespace knotgate {

std::vector<std::string> default_generator_names(int count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (int i = 0; i < count; ++i) {
        if (i < 26)
            names.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            names.push_back("g" + std::to_string(i));
    }
    return names;
}

Presentation make_presentation(std::vector<std::string> generators, std::vector<Word> relators) {
    Presentation p;
    p.generators = std::move(generators);
    const int n = static_cast<int>(p.generators.size());
    for (const Word& r : relators) {
        if (max_generator(r) >= n)
            throw ValidationError("relator uses a generator index beyond the generator list");
        Word c = cyclic_reduce(r);
        if (!c.empty()) p.relators.push_back(std::move(c));
    }
    return p;
}

Word substitute(const Word& target, int g, const Word& w) {
    Word out;
    const Word winv = word_inverse(w);
    for (const Letter& l : target) {
        if (l.gen != g) {
            out.push_back(l);
        } else {
            const Word& rep = l.exp > 0 ? w : winv;
            out.insert(out.end(), rep.begin(), rep.end());
        }
    }
    return out;
}

namespace {

int occurrence_count(const Word& w, int g) {
    int n = 0;
    for (const Letter& l : w) n += l.gen == g;
    return n;
}

// w with every index above g shifted down one (g itself must not occur)
Word drop_index(const Word& w, int g) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) out.push_back(Letter{l.gen > g ? l.gen - 1 : l.gen, l.exp});
    return out;
}

void append_deduplicated(std::vector<Word>& kept, Word r) {
    if (r.empty()) return;
    for (const Word& prev : kept)
        if (equivalent_relator(prev, r)) return;
    kept.push_back(std::move(r));
}

} // namespace

Presentation eliminate_generator(const Presentation& p, int g, int defining) {
    if (g < 0 || g >= static_cast<int>(p.generators.size()))
        throw ValidationError("NotSolvable: no such generator");
    if (defining < 0 || defining >= static_cast<int>(p.relators.size()))
        throw ValidationError("NotSolvable: no such relator");

    const Word rel = p.relators[defining]; // stored cyclically reduced
    if (occurrence_count(rel, g) != 1)
        throw ValidationError("NotSolvable: no cyclic rotation isolates '" +
                              p.generators[g] + "' exactly once");

    // rotate the unique g^e occurrence to the front: g^e rest = e
    size_t pos = 0;
    while (rel[pos].gen != g) ++pos;
    Word rest(rel.begin() + pos + 1, rel.end());
    rest.insert(rest.end(), rel.begin(), rel.begin() + pos);
    // g = rest^-1 when e = +1, g = rest when e = -1
    const Word w = rel[pos].exp > 0 ? word_inverse(rest) : rest;

    std::vector<Word> kept;
    for (size_t i = 0; i < p.relators.size(); ++i) {
        if (static_cast<int>(i) == defining) continue;
        append_deduplicated(kept, cyclic_reduce(substitute(p.relators[i], g, w)));
    }

    Presentation out;
    out.generators = p.generators;
    out.generators.erase(out.generators.begin() + g);
    out.relators.reserve(kept.size());
    for (const Word& r : kept) out.relators.push_back(drop_index(r, g));
    return out;
}

Presentation reduce_presentation(const Presentation& p) {
    // normalize: reduce, drop trivial and duplicate relators
    Presentation cur;
    cur.generators = p.generators;
    for (const Word& r : p.relators) append_deduplicated(cur.relators, cyclic_reduce(r));

    for (;;) {
        int best_gen = -1, best_rel = -1;
        for (int g = static_cast<int>(cur.generators.size()) - 1; g >= 0 && best_gen < 0; --g) {
            for (size_t ri = 0; ri < cur.relators.size(); ++ri) {
                if (occurrence_count(cur.relators[ri], g) != 1) continue;
                if (best_rel < 0 ||
                    cur.relators[ri].size() < cur.relators[best_rel].size()) {
                    best_gen = g;
                    best_rel = static_cast<int>(ri);
                }
            }
        }
        if (best_gen < 0) return cur;
        cur = eliminate_generator(cur, best_gen, best_rel);
    }
}

Presentation braid_presentation(int n) {
    if (n < 2) throw ValidationError("braid group needs at least 2 strands");
    const int gens = n - 1;
    std::vector<std::string> names;
    for (int i = 1; i <= gens; ++i) names.push_back("s" + std::to_string(i));

    std::vector<Word> relators;
    for (int i = 0; i + 1 < gens; ++i) {
        // s_i s_{i+1} s_i s_{i+1}^-1 s_i^-1 s_{i+1}^-1
        relators.push_back(Word{{i, 1}, {i + 1, 1}, {i, 1}, {i + 1, -1}, {i, -1}, {i + 1, -1}});
    }
    for (int i = 0; i < gens; ++i)
        for (int j = i + 2; j < gens; ++j)
            relators.push_back(Word{{i, 1}, {j, 1}, {i, -1}, {j, -1}});
    return make_presentation(std::move(names), std::move(relators));
}

std::string presentation_to_text(const Presentation& p) {
    std::string out = "< ";
    for (size_t i = 0; i < p.generators.size(); ++i) {
        if (i) out += ", ";
        out += p.generators[i];
    }
    out += " |";
    for (size_t i = 0; i < p.relators.size(); ++i) {
        out += i ? ", " : " ";
        out += format_word(p.relators[i]);
    }
    out += " >";
    return out;
}

} // namespace knotgate
