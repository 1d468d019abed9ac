#include "knotgate/compile.hpp"

#include "compile_internal.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/rng.hpp"
#include "knotgate/tolerances.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace knotgate {

namespace {

// letter codes 0..3 realize the pinned order a < A < b < B; the inverse of a
// code flips its low bit
int letter_code(const Letter& l) { return l.gen * 2 + (l.exp > 0 ? 0 : 1); }
Letter code_letter(int c) { return Letter{c / 2, (c & 1) ? -1 : 1}; }
constexpr std::uint8_t kNoLetter = 4; // sentinel for the empty word

Word decode_word(std::uint64_t packed, int len) {
    Word w;
    w.reserve(static_cast<size_t>(len));
    for (int i = len - 1; i >= 0; --i)
        w.push_back(code_letter(static_cast<int>((packed >> (2 * i)) & 3)));
    return w;
}

double coord(const Quaternion& q, int dim) {
    switch (dim) {
    case 0: return q.a;
    case 1: return q.b;
    case 2: return q.c;
    default: return q.d;
    }
}

// all freely reduced words of one length, lexicographic order, with their
// left-to-right image products
struct Level {
    std::vector<std::uint64_t> packed;
    std::vector<Quaternion> quat;
    std::vector<std::uint8_t> first, last;
};

// 4-d kd-tree over unit quaternions for radius queries
struct KdTree {
    struct Node {
        int lo, hi, left, right, dim;
        double val;
    };
    std::vector<Node> nodes;
    std::vector<int> order;
    const std::vector<Quaternion>* pts = nullptr;
    static constexpr int kLeafSize = 16;

    void build(const std::vector<Quaternion>& p) {
        pts = &p;
        order.resize(p.size());
        std::iota(order.begin(), order.end(), 0);
        nodes.clear();
        if (!p.empty()) build_range(0, static_cast<int>(p.size()), 0);
    }

    int build_range(int lo, int hi, int depth) {
        const int me = static_cast<int>(nodes.size());
        nodes.push_back(Node{lo, hi, -1, -1, -1, 0.0});
        if (hi - lo <= kLeafSize) return me;
        const int dim = depth % 4;
        const int mid = (lo + hi) / 2;
        const std::vector<Quaternion>& p = *pts;
        // tie-break on index so the partition is a deterministic set
        std::nth_element(order.begin() + lo, order.begin() + mid, order.begin() + hi,
                         [&](int x, int y) {
                             const double cx = coord(p[static_cast<size_t>(x)], dim);
                             const double cy = coord(p[static_cast<size_t>(y)], dim);
                             return cx < cy || (cx == cy && x < y);
                         });
        nodes[me].dim = dim;
        nodes[me].val = coord(p[static_cast<size_t>(order[static_cast<size_t>(mid)])], dim);
        const int l = build_range(lo, mid, depth + 1);
        const int r = build_range(mid, hi, depth + 1);
        nodes[me].left = l;
        nodes[me].right = r;
        return me;
    }

    void query(const Quaternion& center, double radius, std::vector<int>& out) const {
        if (nodes.empty()) return;
        walk(0, center, radius, radius * radius, out);
    }

    void walk(int n, const Quaternion& c, double radius, double r2, std::vector<int>& out) const {
        const Node& node = nodes[static_cast<size_t>(n)];
        if (node.left < 0) {
            const std::vector<Quaternion>& p = *pts;
            for (int i = node.lo; i < node.hi; ++i) {
                const int idx = order[static_cast<size_t>(i)];
                const Quaternion& q = p[static_cast<size_t>(idx)];
                const double da = q.a - c.a, db = q.b - c.b, dc = q.c - c.c, dd = q.d - c.d;
                if (da * da + db * db + dc * dc + dd * dd <= r2) out.push_back(idx);
            }
            return;
        }
        const double side = coord(c, node.dim) - node.val;
        walk(side < 0.0 ? node.left : node.right, c, radius, r2, out);
        if (std::abs(side) <= radius) walk(side < 0.0 ? node.right : node.left, c, radius, r2, out);
    }
};

// cross a full level scan or a kd-assisted scan once combinations get large
constexpr std::uint64_t kPairBudget = 32'000'000;

struct LevelBest {
    double dist = std::numeric_limits<double>::infinity();
    std::uint64_t pre = 0, suf = 0;
    bool set = false;
};

bool level_better(const LevelBest& x, const LevelBest& y) {
    if (!x.set || !y.set) return x.set;
    if (x.dist != y.dist) return x.dist < y.dist;
    if (x.pre != y.pre) return x.pre < y.pre; // numeric order on packed = lex
    return x.suf < y.suf;
}

struct Engine {
    const Representation* rep = nullptr;
    std::array<Quaternion, 4> letter_q;
    std::vector<Level> levels;   // index = word length
    std::vector<KdTree> trees;   // per suffix length; empty unless needed
    std::vector<char> has_tree;

    void build(const Representation& r, int max_len) {
        rep = &r;
        letter_q = {r.images[0], quat_conj(r.images[0]), r.images[1], quat_conj(r.images[1])};
        const int half = (max_len + 1) / 2;
        levels.resize(static_cast<size_t>(half) + 1);
        levels[0].packed = {0};
        levels[0].quat = {Quaternion{1, 0, 0, 0}};
        levels[0].first = {kNoLetter};
        levels[0].last = {kNoLetter};
        for (int n = 1; n <= half; ++n) {
            const Level& prev = levels[static_cast<size_t>(n - 1)];
            Level& cur = levels[static_cast<size_t>(n)];
            const size_t grown = prev.packed.size() * (n == 1 ? 4 : 3);
            cur.packed.reserve(grown);
            cur.quat.reserve(grown);
            cur.first.reserve(grown);
            cur.last.reserve(grown);
            for (size_t i = 0; i < prev.packed.size(); ++i)
                for (std::uint8_t c = 0; c < 4; ++c) {
                    if (prev.last[i] != kNoLetter && (prev.last[i] ^ 1) == c) continue;
                    cur.packed.push_back((prev.packed[i] << 2) | c);
                    cur.quat.push_back(quat_mul(prev.quat[i], letter_q[c]));
                    cur.first.push_back(n == 1 ? c : prev.first[i]);
                    cur.last.push_back(c);
                }
        }
        // decide which suffix lengths need a tree
        trees.resize(static_cast<size_t>(half) + 1);
        has_tree.assign(static_cast<size_t>(half) + 1, 0);
        for (int len = 2; len <= max_len; ++len) {
            const int p = (len + 1) / 2, q = len - p;
            const std::uint64_t pairs = static_cast<std::uint64_t>(levels[static_cast<size_t>(p)].packed.size()) *
                                        levels[static_cast<size_t>(q)].packed.size();
            if (pairs > kPairBudget && !has_tree[static_cast<size_t>(q)]) {
                trees[static_cast<size_t>(q)].build(levels[static_cast<size_t>(q)].quat);
                has_tree[static_cast<size_t>(q)] = 1;
            }
        }
    }

    CompileResult run(const Quaternion& t, int max_len, double epsilon) const {
        double best_dist = std::numeric_limits<double>::infinity();
        Word best_word;
        int best_pre_len = 0, best_suf_len = 0;
        std::uint64_t best_pre = 0, best_suf = 0;
        std::uint64_t explored = 0;

        int slots = 1;
#ifdef _OPENMP
        slots = omp_get_max_threads();
#endif

        for (int len = 0; len <= max_len; ++len) {
            const int p = (len + 1) / 2, q = len - p;
            const Level& pre = levels[static_cast<size_t>(p)];
            const Level& suf = levels[static_cast<size_t>(q)];
            const int np = static_cast<int>(pre.packed.size());
            const std::uint64_t pairs = static_cast<std::uint64_t>(np) * suf.packed.size();

            std::vector<LevelBest> slot_best(static_cast<size_t>(slots));
            std::vector<std::uint64_t> slot_count(static_cast<size_t>(slots), 0);

            if (pairs <= kPairBudget) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
                for (int i = 0; i < np; ++i) {
                    int slot = 0;
#ifdef _OPENMP
                    slot = omp_get_thread_num();
#endif
                    LevelBest& lb = slot_best[static_cast<size_t>(slot)];
                    // 0xff forbids nothing; kNoLetter would wrongly match an
                    // empty suffix's sentinel
                    const std::uint8_t forbid =
                        pre.last[static_cast<size_t>(i)] == kNoLetter
                            ? std::uint8_t{0xff}
                            : static_cast<std::uint8_t>(pre.last[static_cast<size_t>(i)] ^ 1);
                    const Quaternion& qp = pre.quat[static_cast<size_t>(i)];
                    for (size_t j = 0; j < suf.packed.size(); ++j) {
                        if (suf.first[j] == forbid) continue;
                        const double d = distance(quat_mul(qp, suf.quat[j]), t);
                        ++slot_count[static_cast<size_t>(slot)];
                        LevelBest cand{d, pre.packed[static_cast<size_t>(i)], suf.packed[j], true};
                        if (level_better(cand, lb)) lb = cand;
                    }
                }
            } else {
                const KdTree& tree = trees[static_cast<size_t>(q)];
                // radius frozen for the whole depth so candidate sets do not
                // depend on scan order or thread count
                const double radius = best_dist + 1e-9;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
                for (int i = 0; i < np; ++i) {
                    int slot = 0;
#ifdef _OPENMP
                    slot = omp_get_thread_num();
#endif
                    LevelBest& lb = slot_best[static_cast<size_t>(slot)];
                    const std::uint8_t forbid =
                        static_cast<std::uint8_t>(pre.last[static_cast<size_t>(i)] ^ 1);
                    const Quaternion& qp = pre.quat[static_cast<size_t>(i)];
                    // q_pre * q_suf near +-t iff q_suf near +-(q_pre^-1 t)
                    const Quaternion center = quat_mul(quat_conj(qp), t);
                    const Quaternion anti{-center.a, -center.b, -center.c, -center.d};
                    std::vector<int> found;
                    found.reserve(64);
                    tree.query(center, radius, found);
                    tree.query(anti, radius, found);
                    // a point can land in both balls once the radius exceeds 1
                    std::sort(found.begin(), found.end());
                    found.erase(std::unique(found.begin(), found.end()), found.end());
                    for (const int j : found) {
                        if (suf.first[static_cast<size_t>(j)] == forbid) continue;
                        const double d =
                            distance(quat_mul(qp, suf.quat[static_cast<size_t>(j)]), t);
                        ++slot_count[static_cast<size_t>(slot)];
                        LevelBest cand{d, pre.packed[static_cast<size_t>(i)],
                                       suf.packed[static_cast<size_t>(j)], true};
                        if (level_better(cand, lb)) lb = cand;
                    }
                }
            }

            LevelBest merged;
            for (const LevelBest& lb : slot_best)
                if (level_better(lb, merged)) merged = lb;
            for (const std::uint64_t c : slot_count) explored += c;

            if (merged.set) {
                const bool strictly = merged.dist < best_dist;
                bool tie_lex = false;
                Word w;
                if (strictly || merged.dist == best_dist) {
                    w = decode_word(merged.pre, p);
                    const Word tail = decode_word(merged.suf, q);
                    w.insert(w.end(), tail.begin(), tail.end());
                    if (!strictly) tie_lex = word_lex_less(w, best_word);
                }
                if (strictly || tie_lex) {
                    best_dist = merged.dist;
                    best_word = w;
                    best_pre = merged.pre;
                    best_suf = merged.suf;
                    best_pre_len = p;
                    best_suf_len = q;
                }
            }
            if (best_dist <= epsilon) break;
        }

        CompileResult result;
        result.word = best_word;
        // same association order as the scan: stored halves multiplied once
        const Quaternion achieved =
            quat_mul(levels[static_cast<size_t>(best_pre_len)]
                         .quat[static_cast<size_t>(index_of(best_pre_len, best_pre))],
                     levels[static_cast<size_t>(best_suf_len)]
                         .quat[static_cast<size_t>(index_of(best_suf_len, best_suf))]);
        result.achieved = quat_to_su2(achieved);
        result.dist = best_dist;
        result.explored = explored;
        return result;
    }

    // position of a packed word inside its (sorted) level
    size_t index_of(int len, std::uint64_t packed) const {
        const std::vector<std::uint64_t>& v = levels[static_cast<size_t>(len)].packed;
        return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), packed) - v.begin());
    }
};

} // namespace

namespace detail {

void check_compile_inputs(const Representation& rep, int max_len, double epsilon) {
    if (rep.presentation.generators.size() != 2)
        throw ValidationError("compile requires a representation with exactly 2 generators, got " +
                              std::to_string(rep.presentation.generators.size()));
    const double residual = verify(rep);
    if (residual > tol::rep)
        throw ValidationError("InvalidRepresentation: residual " + std::to_string(residual) +
                              " exceeds tolerance");
    if (max_len < 0 || max_len > 24)
        throw ValidationError("max_len must lie in [0, 24], got " + std::to_string(max_len));
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
}

Quaternion target_quat(const Mat2& target) {
    if (!is_special_unitary(target, 1e-9))
        throw ValidationError("TargetNotSU2: target matrix is not special-unitary");
    return su2_to_quat(target);
}

} // namespace detail

Quaternion compile_eval(const Representation& rep, const Word& w) {
    const size_t split = (w.size() + 1) / 2;
    Quaternion halves[2] = {Quaternion{1, 0, 0, 0}, Quaternion{1, 0, 0, 0}};
    for (size_t i = 0; i < w.size(); ++i) {
        const Letter& l = w[i];
        if (l.gen < 0 || static_cast<size_t>(l.gen) >= rep.images.size())
            throw ValidationError("word uses a generator with no image");
        const Quaternion& g = rep.images[static_cast<size_t>(l.gen)];
        Quaternion& acc = halves[i < split ? 0 : 1];
        acc = quat_mul(acc, l.exp > 0 ? g : quat_conj(g));
    }
    return quat_mul(halves[0], halves[1]);
}

bool word_lex_less(const Word& u, const Word& v) {
    const size_t n = std::min(u.size(), v.size());
    for (size_t i = 0; i < n; ++i) {
        const int cu = letter_code(u[i]), cv = letter_code(v[i]);
        if (cu != cv) return cu < cv;
    }
    return u.size() < v.size();
}

CompileResult compile_word(const Representation& rep, const Mat2& target, int max_len,
                           double epsilon) {
    detail::check_compile_inputs(rep, max_len, epsilon);
    const Quaternion t = detail::target_quat(target);
    Engine engine;
    engine.build(rep, max_len);
    return engine.run(t, max_len, epsilon);
}

CoverageReport coverage(const Representation& rep, double epsilon, int max_len, int samples,
                        std::uint64_t seed) {
    detail::check_compile_inputs(rep, max_len, epsilon);
    if (samples < 1) throw ValidationError("coverage needs at least one sample");

    Rng rng(seed);
    std::vector<Quaternion> targets;
    targets.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) targets.push_back(rng.haar_quaternion());

    Engine engine;
    engine.build(rep, max_len);

    int covered = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : covered)
#endif
    for (int i = 0; i < samples; ++i) {
        const CompileResult r = engine.run(targets[static_cast<size_t>(i)], max_len, epsilon);
        covered += r.dist <= epsilon ? 1 : 0;
    }

    CoverageReport report;
    report.epsilon = epsilon;
    report.max_len = max_len;
    report.sample_count = samples;
    report.covered_fraction = static_cast<double>(covered) / samples;
    report.seed = seed;
    return report;
}

} // namespace knotgate
