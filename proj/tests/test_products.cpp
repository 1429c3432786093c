#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "classchar/products.hpp"

using namespace cc;

namespace {

struct Built {
    EnumeratedGroup G;
    StructureConstants sc;
    CharTable t;
};

Built build(const std::string& s) {
    EnumeratedGroup G = enumerate(parse_spec(s));
    StructureConstants sc = structure_constants(G);
    CharTable t = dixon_table(G, sc);
    return {std::move(G), std::move(sc), std::move(t)};
}

// Classes met by the product set x^G x^G, element by element.
std::vector<char> brute_square(const EnumeratedGroup& G, int x) {
    std::vector<char> hit(G.num_classes(), 0);
    for (eid a : G.members[x])
        for (eid b : G.members[x]) hit[G.class_of[G.mul(a, b)]] = 1;
    return hit;
}

// Classes missed by {a^N b^N}, element by element.
std::vector<int> brute_power_word(const EnumeratedGroup& G, long N) {
    std::set<eid> powers;
    for (eid a = 0; a < G.order(); ++a) powers.insert(G.power(a, N));
    std::vector<char> hit(G.num_classes(), 0);
    for (eid a : powers)
        for (eid b : powers) hit[G.class_of[G.mul(a, b)]] = 1;
    std::vector<int> missed;
    for (int c = 0; c < G.num_classes(); ++c)
        if (!hit[c]) missed.push_back(c);
    return missed;
}

std::map<std::pair<std::string, long>, std::vector<int>> load_power_golden() {
    std::ifstream in(std::string(CLASSCHAR_GOLDEN_DIR) + "/powerword.csv");
    REQUIRE(in);
    std::map<std::pair<std::string, long>, std::vector<int>> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const std::size_t a = line.find("),") + 1, b = line.find(',', a + 1);
        std::istringstream ids(line.substr(b + 1));
        std::vector<int> missed;
        for (int c; ids >> c;) missed.push_back(c);
        out[{line.substr(0, a), std::stol(line.substr(a + 1, b - a - 1))}] = missed;
    }
    return out;
}

}  // namespace

TEST_CASE("class squares against the product set") {
    for (std::string s : {"SL(3,2)", "SL(2,5)", "SU(3,2)"}) {
        CAPTURE(s);
        const Built b = build(s);
        for (int x = 1; x < b.G.num_classes(); ++x) {
            const CoverReport r = class_square(b.G, b.sc, b.t, x);
            CHECK(r.sc_agrees);
            const std::vector<char> brute = brute_square(b.G, x);
            for (int g = 0; g < b.G.num_classes(); ++g) {
                CHECK((r.frob[g] != 0) == static_cast<bool>(brute[g]));
                if (!r.mod_center) CHECK(r.covered[g] == brute[g]);
            }
        }
    }
}

TEST_CASE("Thompson witnesses") {
    // First witness in scan order, frozen.
    const std::map<std::string, int> expect = {{"SL(3,2)", 4}, {"SL(2,5)", 6}, {"SU(3,3)", 9}};
    for (const auto& [s, w] : expect) {
        CAPTURE(s);
        const Built b = build(s);
        const ThompsonResult r = thompson_search(b.G, b.sc, b.t);
        REQUIRE(r.first_witness);
        CHECK(*r.first_witness == w);
        CHECK(r.discrepancy_free);
        CHECK(r.mod_center == (s == "SL(2,5)"));
        // The witness square meets every class (modulo the center).
        const std::vector<char> brute = brute_square(b.G, w);
        if (!r.mod_center)
            for (char h : brute) CHECK(h);
    }
    for (std::string s : {"SL(2,3)", "Sp(4,2)"}) {
        const Built b = build(s);
        const ThompsonResult r = thompson_search(b.G, b.sc, b.t);
        CHECK_FALSE(r.first_witness);
        CHECK(!r.note.empty());
    }
}

TEST_CASE("flip conjugacy in block-diagonal embeddings") {
    const FlipResult sp = flip_conjugacy_check(parse_spec("Sp(2,3)"), parse_spec("Sp(2,3)"));
    CHECK(sp.ambient == "Sp(4,3)");
    CHECK(sp.rows.size() == 49);
    CHECK(sp.all_conjugate());
    CHECK(flip_report(sp).overall() == Verdict::Pass);

    const FlipResult o = flip_conjugacy_check(parse_spec("O+(2,2)"), parse_spec("O+(4,2)"));
    CHECK(o.all_conjugate());

    const FlipResult odd = flip_conjugacy_check(parse_spec("O+(2,3)"), parse_spec("O+(2,3)"));
    CHECK_FALSE(odd.hypothesis);
    CHECK(flip_report(odd).count(Verdict::Fail) == 0);

    const Mat a = identity(2), c = mat_scale(*make_field_q(3), 2, identity(1));
    const Mat d = block_diag(a, c);
    CHECK(d.n == 3);
    CHECK(d(2, 2) == 2);
    CHECK(d(0, 2) == 0);
    CHECK(pad_identity(c, 3)(1, 1) == 1);
}

TEST_CASE("union of covered classes") {
    CHECK(union_check(parse_spec("Sp(2,2)"), parse_spec("Sp(2,2)")).count(Verdict::Fail) == 0);
    CHECK(union_check(parse_spec("Sp(2,3)"), parse_spec("Sp(2,3)")).count(Verdict::Fail) == 0);
}

TEST_CASE("commutator counts") {
    for (std::string s : {"SL(2,3)", "SL(3,2)", "Sp(4,2)"}) {
        CAPTURE(s);
        const Built b = build(s);
        const BoundReport r = commutator_report(b.G, b.t, 1000);
        CHECK(r.count(Verdict::Fail) == 0);
        CHECK(r.count(Verdict::Pass) > 0);
    }
}

TEST_CASE("power words match the element scan and the goldens") {
    const auto golden = load_power_golden();
    CHECK(golden.size() == 18);
    for (std::string s : {"SL(3,2)", "SL(2,5)", "Sp(4,2)"}) {
        const Built b = build(s);
        for (long N : {1L, 2L, 3L, 6L, 12L, 30L}) {
            CAPTURE(s);
            CAPTURE(N);
            const BoundReport r = power_word_check(b.G, b.sc, N);
            const std::vector<int> missed = r.extra["missed"].get<std::vector<int>>();
            CHECK(missed == brute_power_word(b.G, N));
            CHECK(missed == golden.at({s, N}));
            CHECK(r.extra["surjective"].get<bool>() == missed.empty());
        }
    }
}

TEST_CASE("regular semisimple squares") {
    for (std::string s : {"SL(3,2)", "SL(2,7)", "SU(3,2)"}) {
        CAPTURE(s);
        const Built b = build(s);
        const BoundReport r = singer_square_scan(b.G, b.sc, b.t);
        CHECK(r.count(Verdict::Fail) == 0);
        CHECK(!r.rows.empty());
    }
    const Built b = build("Sp(4,2)");
    CHECK_THROWS_AS(singer_square_scan(b.G, b.sc, b.t), Error);
}
