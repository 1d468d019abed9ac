#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knotgate/diagram.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

using namespace knotgate;

namespace {

const char* kTrefoil = "X(1,4,2,5); X(3,6,4,1); X(5,2,6,3)";

bool same_pd(const PDCode& x, const PDCode& y) {
    if (x.arc_count != y.arc_count || x.num_components != y.num_components) return false;
    if (x.component_of != y.component_of) return false;
    if (x.crossings.size() != y.crossings.size()) return false;
    for (size_t i = 0; i < x.crossings.size(); ++i) {
        const Crossing &p = x.crossings[i], &q = y.crossings[i];
        if (p.a != q.a || p.b != q.b || p.c != q.c || p.d != q.d || p.sign != q.sign) return false;
    }
    return true;
}

// independent count of over-strand runs: b/d slots joined across crossings,
// plus every label no crossing touches (an unknotted circle)
int over_run_count(const PDCode& pd) {
    std::vector<int> parent(pd.arc_count + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> touched(pd.arc_count + 1, false);
    for (const Crossing& c : pd.crossings) {
        touched[c.a] = touched[c.b] = touched[c.c] = touched[c.d] = true;
        parent[find(c.b)] = find(c.d);
    }
    std::vector<bool> seen(pd.arc_count + 1, false);
    int runs = 0;
    for (int l = 1; l <= pd.arc_count; ++l) {
        if (!touched[l]) {
            ++runs; // 0-crossing circle
            continue;
        }
        const int r = find(l);
        if (!seen[r]) {
            seen[r] = true;
            ++runs;
        }
    }
    return runs;
}

// random valid code: n crossings, 2n labels, each used exactly twice
PDCode random_pd(Rng& rng, int n) {
    std::vector<int> slots;
    for (int l = 1; l <= 2 * n; ++l) {
        slots.push_back(l);
        slots.push_back(l);
    }
    for (size_t i = slots.size(); i > 1; --i)
        std::swap(slots[i - 1], slots[rng.next_u64() % i]);
    std::string text;
    for (int i = 0; i < n; ++i) {
        text += "X(" + std::to_string(slots[4 * i]) + "," + std::to_string(slots[4 * i + 1]) + "," +
                std::to_string(slots[4 * i + 2]) + "," + std::to_string(slots[4 * i + 3]);
        text += (rng.next_u64() & 1) ? ";+)" : ";-)";
        text += "\n";
    }
    return parse_pd(text);
}

} // namespace

TEST_CASE("parse_pd trefoil example") {
    const PDCode pd = parse_pd(kTrefoil);
    CHECK(pd.crossings.size() == 3);
    CHECK(pd.arc_count == 6);
    CHECK(pd.num_components == 1);
    REQUIRE(pd.component_of.size() == 6);
    for (int c : pd.component_of) CHECK(c == 0);
    // unsigned tokens default to +
    for (const Crossing& c : pd.crossings) CHECK(c.sign == 1);
}

TEST_CASE("parse_pd rejects bad input") {
    CHECK_THROWS_AS(parse_pd(""), ValidationError);
    CHECK_THROWS_AS(parse_pd("  # only a comment\n"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4,5)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("Y(1,2,3,4)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(a,2,3,4)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(0,1,2,3)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4;*)"), ValidationError);
    // arc-degree violations
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4)"), ValidationError);
    CHECK_THROWS_AS(parse_pd("X(1,1,1,2)"), ValidationError);
}

TEST_CASE("parse_pd degree rule is literal") {
    // each of 1,2 appears exactly twice: accepted even though degenerate
    const PDCode pd = parse_pd("X(1,1,2,2)");
    CHECK(pd.crossings.size() == 1);
    CHECK(pd.arc_count == 2);
    CHECK(pd.num_components == 1);
    // the kink relator reduces to e, leaving a free group of rank 1
    const Presentation p = wirtinger_presentation(pd);
    CHECK(p.generators.size() == 1);
    CHECK(p.relators.empty());
}

TEST_CASE("parse_pd labels are renumbered by first appearance") {
    // same diagram written with scattered labels
    const PDCode a = parse_pd("X(7,40,9,50); X(11,60,40,7); X(50,9,60,11)");
    const PDCode b = parse_pd(kTrefoil);
    CHECK(same_pd(a, b));
}

TEST_CASE("parse_pd separators, comments, and signs") {
    const PDCode base = parse_pd(kTrefoil);
    const PDCode alt = parse_pd("X(1,4,2,5) # first\nX(3,6,4,1)\nX(5,2,6,3)");
    CHECK(same_pd(base, alt));

    const PDCode neg = parse_pd("X(1,4,2,5;-); X(3,6,4,1;+); X(5,2,6,3;-)");
    CHECK(neg.crossings[0].sign == -1);
    CHECK(neg.crossings[1].sign == 1);
    CHECK(neg.crossings[2].sign == -1);

    // unicode minus is accepted
    const PDCode uni = parse_pd("X(1,4,2,5;−); X(3,6,4,1); X(5,2,6,3)");
    CHECK(uni.crossings[0].sign == -1);
}

TEST_CASE("U tokens are unknotted circles") {
    const PDCode u = parse_pd("U");
    CHECK(u.crossings.empty());
    CHECK(u.arc_count == 1);
    CHECK(u.num_components == 1);

    const PDCode uu = parse_pd("U; U");
    CHECK(uu.arc_count == 2);
    CHECK(uu.num_components == 2);

    const PDCode mixed = parse_pd(std::string(kTrefoil) + "; U");
    CHECK(mixed.arc_count == 7);
    CHECK(mixed.num_components == 2);
    CHECK(wirtinger_presentation(mixed).generators.size() == 4);
}

TEST_CASE("serialize then parse is the identity") {
    for (const std::string& name : catalog_names()) {
        const PDCode pd = catalog(name).pd;
        CHECK(same_pd(parse_pd(serialize_pd(pd)), pd));
    }
    const PDCode mixed = parse_pd("U; " + std::string(kTrefoil) + "; U");
    CHECK(same_pd(parse_pd(serialize_pd(mixed)), mixed));

    Rng rng(21);
    for (int it = 0; it < 200; ++it) {
        const PDCode pd = random_pd(rng, 1 + static_cast<int>(rng.next_u64() % 7));
        CHECK(same_pd(parse_pd(serialize_pd(pd)), pd));
    }
}

TEST_CASE("wirtinger presentation of the trefoil matches the classical one") {
    const Presentation p = wirtinger_presentation(parse_pd(kTrefoil));
    REQUIRE(p.generators.size() == 3);
    REQUIRE(p.relators.size() == 3);
    // relators c=Aba, b=Cac, a=Bcb under some renaming of the 3 generators
    const std::vector<Word> want = {parse_word("CAba"), parse_word("BCac"), parse_word("ABcb")};
    std::vector<int> perm = {0, 1, 2};
    std::sort(perm.begin(), perm.end());
    bool any = false;
    do {
        bool all = true;
        for (size_t i = 0; i < want.size() && all; ++i) {
            Word renamed = want[i];
            for (Letter& l : renamed) l.gen = perm[l.gen];
            bool hit = false;
            for (const Word& r : p.relators) hit = hit || equivalent_relator(r, renamed);
            all = hit;
        }
        any = any || all;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(any);
}

TEST_CASE("wirtinger generator count equals over-run count") {
    Rng rng(22);
    for (int it = 0; it < 300; ++it) {
        const PDCode pd = random_pd(rng, 1 + static_cast<int>(rng.next_u64() % 8));
        const Presentation p = wirtinger_presentation(pd);
        CHECK(p.generators.size() == static_cast<size_t>(over_run_count(pd)));
        // one relator per crossing before normalization drops trivial ones
        CHECK(p.relators.size() <= pd.crossings.size());
    }
}

TEST_CASE("catalog names and unknown lookups") {
    const auto names = catalog_names();
    CHECK(names == std::vector<std::string>{"trefoil", "figure8", "hopf", "whitehead", "unknot",
                                            "unlink2"});
    for (const auto& n : names) CHECK(catalog(n).name == n);
    CHECK_THROWS_AS(catalog("granny"), ValidationError);
}

TEST_CASE("catalog expected presentations") {
    CHECK(equivalent_relator(catalog("trefoil").expected_presentation.relators.at(0),
                             parse_word("babABA")));
    CHECK(equivalent_relator(catalog("figure8").expected_presentation.relators.at(0),
                             parse_word("baBabABaBA")));
    CHECK(equivalent_relator(catalog("hopf").expected_presentation.relators.at(0),
                             commutator(parse_word("a"), parse_word("b"))));
    // whitehead relator is the commutator chain [x,y][x,yI][xI,yI][xI,y]
    const Word x = parse_word("a"), y = parse_word("b");
    const Word xi = parse_word("A"), yi = parse_word("B");
    Word chain = word_concat(commutator(x, y), commutator(x, yi));
    chain = word_concat(chain, commutator(xi, yi));
    chain = word_concat(chain, commutator(xi, y));
    CHECK(equivalent_relator(catalog("whitehead").expected_presentation.relators.at(0),
                             free_reduce(chain)));
    CHECK(catalog("unknot").expected_presentation.relators.empty());
    CHECK(catalog("unlink2").expected_presentation.relators.empty());
}

TEST_CASE("catalog diagrams reduce to their expected presentations") {
    for (const std::string& name : catalog_names()) {
        CAPTURE(name);
        const CatalogEntry e = catalog(name);
        const Presentation red = reduce_presentation(wirtinger_presentation(e.pd));
        REQUIRE(red.generators.size() == e.expected_presentation.generators.size());
        REQUIRE(red.relators.size() == e.expected_presentation.relators.size());
        if (red.relators.empty()) continue;
        // all entries have at most one expected relator; two generators may
        // be renamed, so compare up to the swap
        Word got = red.relators[0];
        const Word want = e.expected_presentation.relators[0];
        Word swapped = got;
        for (Letter& l : swapped) l.gen = 1 - l.gen;
        CHECK((equivalent_relator(got, want) || equivalent_relator(swapped, want)));
    }
}

TEST_CASE("catalog crossing counts") {
    CHECK_FALSE(catalog("trefoil").crossing_counts.has_value());
    CHECK_FALSE(catalog("figure8").crossing_counts.has_value());
    CHECK_FALSE(catalog("unknot").crossing_counts.has_value());
    REQUIRE(catalog("hopf").crossing_counts.has_value());
    REQUIRE(catalog("whitehead").crossing_counts.has_value());
    REQUIRE(catalog("unlink2").crossing_counts.has_value());
    CHECK(catalog("hopf").crossing_counts->over == 1);
    CHECK(catalog("hopf").crossing_counts->under == 1);
    CHECK(catalog("whitehead").crossing_counts->over == 2);
    CHECK(catalog("whitehead").crossing_counts->under == 2);
    CHECK(catalog("unlink2").crossing_counts->over == 0);
    CHECK(catalog("unlink2").crossing_counts->under == 0);

    // the stored counts agree with the diagrams: inter-component crossings
    // split by which component runs over
    for (const char* name : {"hopf", "whitehead", "unlink2"}) {
        const CatalogEntry e = catalog(name);
        REQUIRE(e.pd.num_components == 2);
        int over0 = 0, under0 = 0;
        for (const Crossing& c : e.pd.crossings) {
            const int cu = e.pd.component_of[c.a - 1];
            const int co = e.pd.component_of[c.b - 1];
            if (cu == co) continue;
            (co == 0 ? over0 : under0) += 1;
        }
        CHECK((e.crossing_counts->over == std::max(over0, under0) ||
               e.crossing_counts->over == std::min(over0, under0)));
        CHECK(e.crossing_counts->over + e.crossing_counts->under == over0 + under0);
    }

    // every 2-component entry carries counts; no 1-component entry does
    for (const std::string& name : catalog_names()) {
        const CatalogEntry e = catalog(name);
        CHECK(e.crossing_counts.has_value() == (e.pd.num_components == 2));
    }
}
