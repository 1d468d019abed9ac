#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knotgate/errors.hpp"
#include "knotgate/rng.hpp"
#include "knotgate/word.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace knotgate;

namespace {

Word random_word(Rng& rng, int max_len, int gens) {
    const int n = static_cast<int>(rng.next_u64() % (max_len + 1));
    Word w;
    for (int i = 0; i < n; ++i) {
        const int g = static_cast<int>(rng.next_u64() % gens);
        const int e = (rng.next_u64() & 1) ? 1 : -1;
        w.push_back({g, e});
    }
    return w;
}

bool freely_reduced(const Word& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i].gen == w[i - 1].gen && w[i].exp == -w[i - 1].exp) return false;
    return true;
}

} // namespace

TEST_CASE("parse_word basic forms") {
    CHECK(parse_word("").empty());
    CHECK(parse_word("  \t\n ").empty());

    const Word w = parse_word("babABA");
    REQUIRE(w.size() == 6);
    CHECK(w[0] == Letter{1, 1});
    CHECK(w[1] == Letter{0, 1});
    CHECK(w[2] == Letter{1, 1});
    CHECK(w[3] == Letter{0, -1});
    CHECK(w[4] == Letter{1, -1});
    CHECK(w[5] == Letter{0, -1});

    // whitespace anywhere between letters
    CHECK(parse_word("b a b  A\nB\tA") == w);

    // z is generator 25
    CHECK(parse_word("zZ") == Word{{25, 1}, {25, -1}});
}

TEST_CASE("parse_word numeric generator tokens") {
    // g followed by digits is a numeric token, bare g is generator 6
    CHECK(parse_word("g12") == Word{{12, 1}});
    CHECK(parse_word("G12") == Word{{12, -1}});
    CHECK(parse_word("g") == Word{{6, 1}});
    CHECK(parse_word("ag30B") == Word{{0, 1}, {30, 1}, {1, -1}});
    CHECK(parse_word("g0") == Word{{0, 1}});
}

TEST_CASE("parse_word rejects malformed input") {
    CHECK_THROWS_AS(parse_word("ab!"), ValidationError);
    CHECK_THROWS_AS(parse_word("a1b"), ValidationError);
    CHECK_THROWS_AS(parse_word("g99999999"), ValidationError);
    CHECK_THROWS_AS(parse_word("a-b"), ValidationError);
}

TEST_CASE("format_word inverts parse_word") {
    CHECK(format_word(parse_word("")) == "");
    CHECK(format_word(parse_word("babABA")) == "babABA");
    // indices below 26 always format as letters; g-tokens only from 26 up
    CHECK(format_word(parse_word("g12G13z")) == "mNz");
    CHECK(format_word(parse_word("g26G27")) == "g26G27");

    // round-trip on random words, including indices past 25
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        const Word w = random_word(rng, 24, 30);
        CHECK(parse_word(format_word(w)) == w);
    }
}

TEST_CASE("free_reduce") {
    CHECK(free_reduce(parse_word("aAb")) == parse_word("b"));
    CHECK(free_reduce(Word{}).empty());
    // already-reduced relator is a fixed point
    CHECK(free_reduce(parse_word("babABA")) == parse_word("babABA"));
    // cancellation can cascade through the middle
    CHECK(free_reduce(parse_word("abBA")).empty());
    CHECK(free_reduce(parse_word("abBAc")) == parse_word("c"));
}

TEST_CASE("free_reduce is idempotent and length-non-increasing") {
    Rng rng(12);
    for (int it = 0; it < 500; ++it) {
        const Word w = random_word(rng, 30, 4);
        const Word r = free_reduce(w);
        CHECK(r.size() <= w.size());
        CHECK(freely_reduced(r));
        CHECK(free_reduce(r) == r);
        // parity of length is preserved: cancellations remove pairs
        CHECK((w.size() - r.size()) % 2 == 0);
    }
}

TEST_CASE("cyclic_reduce strips conjugating ends") {
    // stripping cascades: aBcbA -> Bcb -> c
    CHECK(cyclic_reduce(parse_word("aBcb A")) == parse_word("c"));
    CHECK(cyclic_reduce(parse_word("abA")) == parse_word("b"));
    CHECK(cyclic_reduce(parse_word("aA")).empty());
    CHECK(cyclic_reduce(parse_word("babABA")) == parse_word("babABA"));
    // a single letter cannot cancel with itself
    CHECK(cyclic_reduce(parse_word("a")) == parse_word("a"));
}

TEST_CASE("cyclic_reduce properties") {
    Rng rng(13);
    for (int it = 0; it < 500; ++it) {
        const Word w = random_word(rng, 20, 3);
        const Word r = cyclic_reduce(w);
        CHECK(free_reduce(r) == r);
        CHECK(cyclic_reduce(r) == r);
        // ends may not be inverse of each other
        if (r.size() >= 2) {
            const bool ends_cancel = r.front().gen == r.back().gen &&
                                     r.front().exp == -r.back().exp;
            CHECK_FALSE(ends_cancel);
        }
        // conjugating by a generator never changes the cyclic reduction
        Word conj;
        conj.push_back({2, 1});
        conj.insert(conj.end(), w.begin(), w.end());
        conj.push_back({2, -1});
        CHECK(equivalent_relator(cyclic_reduce(conj), r));
    }
}

TEST_CASE("word_inverse and word_concat") {
    CHECK(word_inverse(parse_word("abC")) == parse_word("cBA"));
    CHECK(word_inverse(Word{}).empty());
    // concat does not reduce; reduction is a separate step
    CHECK(word_concat(parse_word("ab"), parse_word("BA")) == parse_word("abBA"));
    CHECK(free_reduce(word_concat(parse_word("ab"), parse_word("BA"))).empty());
    CHECK(word_concat(parse_word("ab"), parse_word("c")) == parse_word("abc"));

    Rng rng(14);
    for (int it = 0; it < 200; ++it) {
        const Word w = random_word(rng, 16, 4);
        CHECK(free_reduce(word_concat(w, word_inverse(w))).empty());
        CHECK(word_inverse(word_inverse(w)) == w);
    }
}

TEST_CASE("commutator") {
    CHECK(commutator(parse_word("a"), parse_word("b")) == parse_word("abAB"));
    CHECK(commutator(parse_word("a"), parse_word("a")).empty());
    CHECK(commutator(parse_word("x"), parse_word("Y")) == parse_word("xYXy"));
    // commutator of inverse words is conjugate to the inverse commutator
    const Word c = commutator(parse_word("ab"), parse_word("cB"));
    CHECK(free_reduce(c) == c);
}

TEST_CASE("equivalent_relator examples") {
    CHECK(equivalent_relator(parse_word("babABA"), parse_word("abaBAB")));
    CHECK(equivalent_relator(Word{}, Word{}));
    CHECK_FALSE(equivalent_relator(parse_word("abAB"), parse_word("abab")));
    // rotation alone
    CHECK(equivalent_relator(parse_word("abc"), parse_word("cab")));
    // inversion alone
    CHECK(equivalent_relator(parse_word("abc"), parse_word("CBA")));
    // unreduced inputs are cyclically reduced before comparison
    CHECK(equivalent_relator(parse_word("d abc D"), parse_word("abc")));
    CHECK_FALSE(equivalent_relator(parse_word("abc"), parse_word("ab")));
}

TEST_CASE("equivalent_relator is an equivalence relation") {
    Rng rng(15);
    std::vector<Word> pool;
    for (int i = 0; i < 40; ++i) pool.push_back(random_word(rng, 8, 3));
    for (const Word& u : pool) {
        CHECK(equivalent_relator(u, u));
        for (const Word& v : pool) {
            const bool uv = equivalent_relator(u, v);
            CHECK(uv == equivalent_relator(v, u));
            if (!uv) continue;
            for (const Word& w : pool)
                if (equivalent_relator(v, w)) CHECK(equivalent_relator(u, w));
        }
    }
}

TEST_CASE("max_generator") {
    CHECK(max_generator(Word{}) == -1);
    CHECK(max_generator(parse_word("abA")) == 1);
    CHECK(max_generator(parse_word("g12aB")) == 12);
}
