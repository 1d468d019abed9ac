#include "knotgate/diagram.hpp"

#include "knotgate/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace knotgate {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    bool comment = false;
    int depth = 0; // the sign separator lives inside X(...;s) parens
    for (const char ch : text) {
        if (ch == '\n') {
            comment = false;
            depth = 0;
            tokens.push_back(cur);
            cur.clear();
        } else if (comment) {
            continue;
        } else if (ch == '#') {
            comment = true;
        } else if (ch == ';' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            if (ch == '(') ++depth;
            if (ch == ')') depth = std::max(0, depth - 1);
            cur += ch;
        }
    }
    tokens.push_back(cur);
    for (std::string& t : tokens) {
        const auto b = t.find_first_not_of(" \t\r");
        const auto e = t.find_last_not_of(" \t\r");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    }
    std::erase_if(tokens, [](const std::string& t) { return t.empty(); });
    return tokens;
}

// raw crossing as written: labels not yet renumbered, sign resolved
struct RawToken {
    bool is_circle = false;
    long labels[4] = {0, 0, 0, 0};
    int sign = 1;
};

RawToken parse_token(const std::string& tok) {
    RawToken out;
    if (tok == "U") {
        out.is_circle = true;
        return out;
    }
    if (tok.size() < 2 || tok[0] != 'X' || tok[1] != '(' || tok.back() != ')')
        throw ValidationError("MalformedToken: expected X(a,b,c,d[;s]) or U, got '" + tok + "'");
    const std::string body = tok.substr(2, tok.size() - 3);

    size_t i = 0;
    for (int field = 0; field < 4; ++field) {
        if (field > 0) {
            if (i >= body.size() || body[i] != ',')
                throw ValidationError("MalformedToken: expected ',' in '" + tok + "'");
            ++i;
        }
        while (i < body.size() && body[i] == ' ') ++i;
        size_t j = i;
        long v = 0;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) {
            v = v * 10 + (body[j] - '0');
            if (v > 1'000'000) throw ValidationError("MalformedToken: label too large in '" + tok + "'");
            ++j;
        }
        if (j == i || v < 1)
            throw ValidationError("MalformedToken: labels must be integers >= 1 in '" + tok + "'");
        out.labels[field] = v;
        i = j;
        while (i < body.size() && body[i] == ' ') ++i;
    }
    if (i < body.size()) {
        if (body[i] != ';')
            throw ValidationError("MalformedToken: unexpected trailing text in '" + tok + "'");
        std::string s = body.substr(i + 1);
        std::erase(s, ' ');
        if (s == "+")
            out.sign = 1;
        else if (s == "-" || s == "\xE2\x88\x92") // ASCII or U+2212 minus
            out.sign = -1;
        else
            throw ValidationError("MalformedToken: sign must be + or - in '" + tok + "'");
    }
    return out;
}

} // namespace

PDCode parse_pd(const std::string& text) {
    const std::vector<std::string> tokens = split_tokens(text);
    if (tokens.empty()) throw ValidationError("EmptyInput: no diagram tokens");

    std::vector<RawToken> raw;
    raw.reserve(tokens.size());
    for (const std::string& t : tokens) raw.push_back(parse_token(t));

    // renumber labels to 1..n in order of first appearance; U circles take
    // the next label at their own position
    std::map<long, int> renumber;
    int next = 0;
    PDCode pd;
    for (const RawToken& r : raw) {
        if (r.is_circle) {
            ++next; // fresh arc, never referenced by a crossing
            continue;
        }
        int mapped[4];
        for (int f = 0; f < 4; ++f) {
            auto [it, fresh] = renumber.try_emplace(r.labels[f], next + 1);
            if (fresh) ++next;
            mapped[f] = it->second;
        }
        pd.crossings.push_back(Crossing{mapped[0], mapped[1], mapped[2], mapped[3], r.sign});
    }
    pd.arc_count = next;

    std::vector<int> degree(pd.arc_count, 0);
    for (const Crossing& c : pd.crossings)
        for (const int l : {c.a, c.b, c.c, c.d}) ++degree[l - 1];
    for (int l = 1; l <= pd.arc_count; ++l) {
        if (degree[l - 1] != 0 && degree[l - 1] != 2)
            throw ValidationError("ArcCountMismatch: arc " + std::to_string(l) + " appears " +
                                  std::to_string(degree[l - 1]) + " times (want 2)");
    }

    // strand connectivity: under-strand a-c and over-strand b-d of each
    // crossing stay on one component
    UnionFind uf(pd.arc_count);
    for (const Crossing& c : pd.crossings) {
        uf.unite(c.a - 1, c.c - 1);
        uf.unite(c.b - 1, c.d - 1);
    }
    pd.component_of.assign(pd.arc_count, -1);
    std::vector<int> comp_of_root(pd.arc_count, -1);
    for (int l = 0; l < pd.arc_count; ++l) {
        const int r = uf.find(l);
        if (comp_of_root[r] < 0) comp_of_root[r] = pd.num_components++;
        pd.component_of[l] = comp_of_root[r];
    }
    return pd;
}

std::string serialize_pd(const PDCode& pd) {
    // emit tokens so that re-parsing assigns identical labels: walk labels in
    // order, inserting U circles at their label positions between crossings
    std::vector<bool> referenced(pd.arc_count, false);
    for (const Crossing& c : pd.crossings)
        for (const int l : {c.a, c.b, c.c, c.d}) referenced[l - 1] = true;

    std::vector<std::string> tokens;
    std::vector<bool> introduced(pd.arc_count, false);
    size_t ci = 0;
    auto emit_crossing = [&] {
        const Crossing& c = pd.crossings[ci++];
        tokens.push_back("X(" + std::to_string(c.a) + "," + std::to_string(c.b) + "," +
                         std::to_string(c.c) + "," + std::to_string(c.d) +
                         (c.sign > 0 ? ";+)" : ";-)"));
        for (const int l : {c.a, c.b, c.c, c.d}) introduced[l - 1] = true;
    };
    for (int l = 1; l <= pd.arc_count; ++l) {
        if (introduced[l - 1]) continue;
        if (!referenced[l - 1]) {
            tokens.push_back("U");
            introduced[l - 1] = true;
        } else {
            while (ci < pd.crossings.size() && !introduced[l - 1]) emit_crossing();
        }
    }
    while (ci < pd.crossings.size()) emit_crossing();

    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += "; ";
        out += tokens[i];
    }
    return out;
}

Presentation wirtinger_presentation(const PDCode& pd) {
    // generators = over-strand runs: arcs joined through the b/d slots of
    // each crossing, plus isolated circles
    UnionFind uf(pd.arc_count);
    for (const Crossing& c : pd.crossings) uf.unite(c.b - 1, c.d - 1);

    std::vector<int> gen_of_root(pd.arc_count, -1);
    int gen_count = 0;
    for (int l = 0; l < pd.arc_count; ++l) {
        const int r = uf.find(l);
        if (gen_of_root[r] < 0) gen_of_root[r] = gen_count++;
    }
    const auto gen = [&](int label) { return gen_of_root[uf.find(label - 1)]; };

    std::vector<Word> relators;
    relators.reserve(pd.crossings.size());
    for (const Crossing& c : pd.crossings) {
        const int in = gen(c.a), out = gen(c.c), over = gen(c.b);
        // out = over^{-s} in over^{s}, stored as the relator
        // out^-1 over^{-s} in over^{s}
        relators.push_back(Word{
            {out, -1}, {over, -c.sign}, {in, 1}, {over, c.sign}});
    }
    return make_presentation(default_generator_names(gen_count), std::move(relators));
}

namespace {

CatalogEntry make_entry(std::string name, const std::string& pd_text,
                        std::vector<std::string> gens, std::vector<std::string> relator_texts,
                        std::optional<CrossingCounts> counts) {
    CatalogEntry e;
    e.name = std::move(name);
    e.pd = parse_pd(pd_text);
    std::vector<Word> relators;
    for (const std::string& t : relator_texts) relators.push_back(parse_word(t));
    e.expected_presentation = make_presentation(std::move(gens), std::move(relators));
    e.crossing_counts = counts;
    return e;
}

} // namespace

CatalogEntry catalog(const std::string& name) {
    if (name == "trefoil")
        return make_entry("trefoil", "X(1,4,2,5); X(3,6,4,1); X(5,2,6,3)", {"a", "b"},
                          {"babABA"}, std::nullopt);
    if (name == "figure8")
        return make_entry("figure8", "X(4,2,5,1;-); X(8,6,1,5;-); X(6,3,7,4;+); X(2,7,3,8;+)",
                          {"a", "b"}, {"baBabABaBA"}, std::nullopt);
    if (name == "hopf")
        return make_entry("hopf", "X(4,1,3,2); X(2,3,1,4)", {"a", "b"}, {"abAB"},
                          CrossingCounts{1, 1});
    if (name == "whitehead")
        return make_entry("whitehead",
                          "X(1,2,3,4;-); X(2,5,6,7;+); X(7,8,4,3;-); X(8,6,9,10;+); X(10,9,5,1;+)",
                          {"a", "b"}, {"abABaBAbABabAbaB"}, CrossingCounts{2, 2});
    if (name == "unknot") return make_entry("unknot", "U", {"a"}, {}, std::nullopt);
    if (name == "unlink2")
        return make_entry("unlink2", "U; U", {"a", "b"}, {}, CrossingCounts{0, 0});
    throw ValidationError("UnknownName: no catalog entry '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"trefoil", "figure8", "hopf", "whitehead", "unknot", "unlink2"};
}

} // namespace knotgate
