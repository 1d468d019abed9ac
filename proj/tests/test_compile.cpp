#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knotgate/compile.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/reps.hpp"
#include "knotgate/rng.hpp"
#include "knotgate/word.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <vector>

using namespace knotgate;

namespace {

bool same_quat(const Quaternion& p, const Quaternion& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
}

bool same_mat(const Mat2& x, const Mat2& y) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (x.at(r, c) != y.at(r, c)) return false;
    return true;
}

bool same_result(const CompileResult& x, const CompileResult& y) {
    return x.dist == y.dist && x.word == y.word && x.explored == y.explored &&
           same_mat(x.achieved, y.achieved);
}

// two-generator free group with commuting diagonal images; every word image
// stays on the circle of rotations about one axis
Representation abelian_rep() {
    Representation rep;
    rep.presentation = make_presentation({"a", "b"}, {});
    rep.images = {Quaternion{std::cos(0.7), std::sin(0.7), 0, 0},
                  Quaternion{std::cos(1.9), std::sin(1.9), 0, 0}};
    rep.residual = verify(rep);
    return rep;
}

Mat2 haar_target(Rng& rng) { return quat_to_su2(rng.haar_quaternion()); }

} // namespace

TEST_CASE("word_lex_less realizes the letter order a < A < b < B") {
    const Word empty;
    const Word a = parse_word("a"), A = parse_word("A"), b = parse_word("b"), B = parse_word("B");
    CHECK(word_lex_less(empty, a));
    CHECK(word_lex_less(a, A));
    CHECK(word_lex_less(A, b));
    CHECK(word_lex_less(b, B));
    CHECK_FALSE(word_lex_less(B, b));
    CHECK_FALSE(word_lex_less(a, a));

    // prefixes sort before their extensions; first difference decides
    CHECK(word_lex_less(a, parse_word("aa")));
    CHECK(word_lex_less(parse_word("ab"), b));
    CHECK(word_lex_less(parse_word("aB"), b));
    CHECK(word_lex_less(parse_word("abA"), parse_word("abB")));
    CHECK_FALSE(word_lex_less(parse_word("ba"), parse_word("aB")));
}

TEST_CASE("compile_eval splits at the midpoint and multiplies halves") {
    const Representation rep = fibonacci_rep();

    // empty word evaluates to the identity quaternion exactly
    CHECK(same_quat(compile_eval(rep, {}), Quaternion{1, 0, 0, 0}));

    // single letters give the image or its conjugate exactly
    CHECK(same_quat(compile_eval(rep, parse_word("a")), rep.images[0]));
    CHECK(same_quat(compile_eval(rep, parse_word("B")), quat_conj(rep.images[1])));

    // a five letter word splits 3 + 2, each half left to right
    const Word w = parse_word("abAbB");
    Quaternion h0 = quat_mul(quat_mul(rep.images[0], rep.images[1]), quat_conj(rep.images[0]));
    Quaternion h1 = quat_mul(rep.images[1], quat_conj(rep.images[1]));
    CHECK(same_quat(compile_eval(rep, w), quat_mul(h0, h1)));

    // generator without an image
    Representation one_gen;
    one_gen.presentation = make_presentation({"a"}, {});
    one_gen.images = {rep.images[0]};
    CHECK_THROWS_AS(compile_eval(one_gen, parse_word("b")), ValidationError);
}

TEST_CASE("identity target compiles to the empty word at depth zero") {
    const Representation rep = fibonacci_rep();
    const CompileResult r = compile_word(rep, Mat2::identity(), 6, 0.0);
    CHECK(r.word.empty());
    CHECK(r.dist == 0.0);
    CHECK(r.explored == 1);
    CHECK(same_mat(r.achieved, Mat2::identity()));

    const CompileResult ref = reference_search(rep, Mat2::identity(), 6, 0.0);
    CHECK(same_result(r, ref));
}

TEST_CASE("generator image targets compile to single letters") {
    const Representation rep = fibonacci_rep();

    const CompileResult ra = compile_word(rep, quat_to_su2(rep.images[0]), 4, 0.0);
    CHECK(format_word(ra.word) == "a");
    CHECK(ra.dist == 0.0);
    CHECK(ra.explored == 5); // the empty word plus the four one letter words

    const CompileResult rB = compile_word(rep, quat_to_su2(quat_conj(rep.images[1])), 4, 0.0);
    CHECK(format_word(rB.word) == "B");
    CHECK(rB.dist == 0.0);

    // with max_len 0 only the empty word is reachable
    const CompileResult r0 = compile_word(rep, quat_to_su2(rep.images[0]), 0, 0.0);
    CHECK(r0.word.empty());
    CHECK(r0.dist > 0.1);
}

TEST_CASE("search equals plain enumeration bitwise over random targets") {
    const Representation rep = fibonacci_rep();
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const Mat2 target = haar_target(rng);
        const CompileResult fast = compile_word(rep, target, 6, 0.0);
        const CompileResult slow = reference_search(rep, target, 6, 0.0);
        REQUIRE(fast.dist == slow.dist);
        REQUIRE(fast.word == slow.word);
        REQUIRE(fast.explored == slow.explored);
        REQUIRE(same_mat(fast.achieved, slow.achieved));
    }
}

TEST_CASE("early exit parity between search and enumeration") {
    const Representation rep = fibonacci_rep();
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat2 target = haar_target(rng);
        const CompileResult fast = compile_word(rep, target, 8, 0.3);
        const CompileResult slow = reference_search(rep, target, 8, 0.3);
        REQUIRE(fast.dist == slow.dist);
        REQUIRE(fast.word == slow.word);
        REQUIRE(fast.explored == slow.explored);
    }
}

TEST_CASE("results are freely reduced and reproducible from the word") {
    const Representation rep = fibonacci_rep();
    Rng rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        const Mat2 target = haar_target(rng);
        const Quaternion t = su2_to_quat(target);
        const CompileResult r = compile_word(rep, target, 5, 0.0);

        // the reported word is freely reduced
        CHECK(free_reduce(r.word) == r.word);

        // achieved and dist reproduce bitwise from the word alone
        const Quaternion q = compile_eval(rep, r.word);
        CHECK(same_mat(quat_to_su2(q), r.achieved));
        CHECK(distance(q, t) == r.dist);
        CHECK(distance(su2_to_quat(r.achieved), t) == r.dist);
    }
}

TEST_CASE("repeated runs are bitwise identical") {
    const Representation rep = fibonacci_rep();
    Rng rng(1234);
    const Mat2 target = haar_target(rng);
    const CompileResult first = compile_word(rep, target, 10, 0.0);
    const CompileResult second = compile_word(rep, target, 10, 0.0);
    CHECK(same_result(first, second));

#ifdef _OPENMP
    // thread count must not change any output
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const CompileResult serial = compile_word(rep, target, 10, 0.0);
    omp_set_num_threads(saved);
    CHECK(same_result(first, serial));
#endif
}

TEST_CASE("deep searches agree with enumeration through the indexed path") {
    // depth 16 is the first level whose pair count exceeds the direct scan
    // budget, so this exercises the tree-indexed branch end to end
    const Representation rep = fibonacci_rep();
    Rng rng(2024);
    const Mat2 target = haar_target(rng);

    const CompileResult fast = compile_word(rep, target, 16, 0.0);
    const CompileResult slow = reference_search(rep, target, 16, 0.0);
    CHECK(fast.dist == slow.dist);
    CHECK(fast.word == slow.word);
    CHECK(same_mat(fast.achieved, slow.achieved));
    CHECK(fast.dist < 0.2); // depth 16 approximates a generic target well

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(2);
    const CompileResult two = compile_word(rep, target, 16, 0.0);
    omp_set_num_threads(saved);
    CHECK(same_result(fast, two));
#endif
}

TEST_CASE("longer budgets never increase the distance") {
    const Representation rep = fibonacci_rep();
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const Mat2 target = haar_target(rng);
        double prev = 3.0;
        for (int len : {2, 4, 6, 8}) {
            const double d = compile_word(rep, target, len, 0.0).dist;
            CHECK(d <= prev);
            prev = d;
        }
    }
}

TEST_CASE("fibonacci images approximate generic targets at depth 12") {
    const Representation rep = fibonacci_rep();
    Rng rng(5150);
    std::vector<double> dists;
    for (int trial = 0; trial < 16; ++trial)
        dists.push_back(compile_word(rep, haar_target(rng), 12, 0.0).dist);
    std::sort(dists.begin(), dists.end());
    CHECK(dists[dists.size() / 2] < 0.35);
}

TEST_CASE("coverage fields, determinism, and trivial epsilon") {
    const Representation rep = fibonacci_rep();

    // the projective distance never exceeds sqrt(2), so epsilon 2 covers all
    const CoverageReport all = coverage(rep, 2.0, 4, 50, 11);
    CHECK(all.covered_fraction == 1.0);
    CHECK(all.epsilon == 2.0);
    CHECK(all.max_len == 4);
    CHECK(all.sample_count == 50);
    CHECK(all.seed == 11);

    const CoverageReport a = coverage(rep, 0.25, 6, 80, 3);
    const CoverageReport b = coverage(rep, 0.25, 6, 80, 3);
    CHECK(a.covered_fraction == b.covered_fraction);

    CHECK_THROWS_AS(coverage(rep, 0.25, 6, 0, 3), ValidationError);
}

TEST_CASE("coverage grows with the length budget at fixed seed") {
    const Representation rep = fibonacci_rep();
    double prev = -1.0;
    for (int len : {4, 6, 8}) {
        const CoverageReport r = coverage(rep, 0.25, len, 200, 7);
        CHECK(r.covered_fraction >= prev);
        prev = r.covered_fraction;
    }
    CHECK(prev > 0.0);
}

TEST_CASE("commuting images cover only a thin tube around their circle") {
    const Representation rep = abelian_rep();
    CHECK(rep.residual == 0.0);
    const CoverageReport six = coverage(rep, 0.2, 6, 150, 19);
    const CoverageReport ten = coverage(rep, 0.2, 10, 150, 19);
    CHECK(six.covered_fraction < 0.2);
    CHECK(ten.covered_fraction < 0.2);
    CHECK(ten.covered_fraction >= six.covered_fraction);
}

TEST_CASE("input validation") {
    const Representation rep = fibonacci_rep();
    const Mat2 id = Mat2::identity();

    // target must be special unitary
    Mat2 scaled;
    scaled.at(0, 0) = 0.5;
    scaled.at(1, 1) = 0.5;
    CHECK_THROWS_WITH_AS(compile_word(rep, scaled, 4, 0.1) /**/,
                         doctest::Contains("TargetNotSU2"), ValidationError);
    Mat2 shear = Mat2::identity();
    shear.at(0, 1) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(reference_search(rep, shear, 4, 0.1), ValidationError);

    // length budget bounds
    CHECK_THROWS_AS(compile_word(rep, id, 25, 0.1), ValidationError);
    CHECK_THROWS_AS(compile_word(rep, id, -1, 0.1), ValidationError);
    CHECK_THROWS_AS(reference_search(rep, id, 25, 0.1), ValidationError);

    // epsilon must be a non negative number
    CHECK_THROWS_AS(compile_word(rep, id, 4, -0.1), ValidationError);
    CHECK_THROWS_AS(compile_word(rep, id, 4, std::nan("")), ValidationError);

    // exactly two generators
    Representation three;
    three.presentation = make_presentation({"a", "b", "c"}, {});
    three.images = {Quaternion{0, 1, 0, 0}, Quaternion{0, 0, 1, 0}, Quaternion{0, 0, 0, 1}};
    CHECK_THROWS_AS(compile_word(three, id, 4, 0.1), ValidationError);
    CHECK_THROWS_AS(coverage(three, 0.2, 4, 10, 1), ValidationError);

    // representations that fail verification are rejected
    Representation broken = fibonacci_rep();
    broken.images[0] = Quaternion{0, 1, 0, 0};
    CHECK_THROWS_WITH_AS(compile_word(broken, id, 4, 0.1) /**/,
                         doctest::Contains("InvalidRepresentation"), ValidationError);
}
