#include "knotgate/word.hpp"

#include "knotgate/errors.hpp"

#include <algorithm>
#include <cctype>

namespace knotgate {

Word parse_word(const std::string& text) {
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const bool lower = ch >= 'a' && ch <= 'z';
        const bool upper = ch >= 'A' && ch <= 'Z';
        if (!lower && !upper)
            throw ValidationError(std::string("MalformedWord: unexpected character '") + ch + "'");
        const int exp = lower ? 1 : -1;
        if ((ch == 'g' || ch == 'G') && i + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            size_t j = i + 1;
            long idx = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                idx = idx * 10 + (text[j] - '0');
                if (idx > 1'000'000) throw ValidationError("MalformedWord: generator index too large");
                ++j;
            }
            w.push_back(Letter{static_cast<int>(idx), exp});
            i = j;
        } else {
            w.push_back(Letter{lower ? ch - 'a' : ch - 'A', exp});
            ++i;
        }
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string out;
    for (const Letter& l : w) {
        if (l.gen < 26) {
            out += static_cast<char>((l.exp > 0 ? 'a' : 'A') + l.gen);
        } else {
            out += l.exp > 0 ? 'g' : 'G';
            out += std::to_string(l.gen);
        }
    }
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo].gen == r[hi - 1].gen && r[lo].exp == -r[hi - 1].exp) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + lo, r.begin() + hi);
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(Letter{it->gen, -it->exp});
    return out;
}

Word word_concat(const Word& x, const Word& y) {
    Word out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

Word commutator(const Word& x, const Word& y) {
    return free_reduce(word_concat(word_concat(x, y), word_concat(word_inverse(x), word_inverse(y))));
}

namespace {

bool rotation_match(const Word& u, const Word& v) {
    const size_t n = u.size();
    for (size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = u[(i + shift) % n] == v[i];
        if (ok) return true;
    }
    return false;
}

} // namespace

bool equivalent_relator(const Word& u, const Word& v) {
    const Word cu = cyclic_reduce(u);
    const Word cv = cyclic_reduce(v);
    if (cu.size() != cv.size()) return false;
    if (cu.empty()) return true;
    return rotation_match(cu, cv) || rotation_match(word_inverse(cu), cv);
}

int max_generator(const Word& w) {
    int m = -1;
    for (const Letter& l : w) m = std::max(m, l.gen);
    return m;
}

} // namespace knotgate
