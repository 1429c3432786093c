#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "classchar/element.hpp"
#include "classchar/grp.hpp"

using namespace cc;

namespace {

// Conjugacy classes by direct matrix conjugation, keyed by the sorted member list.
std::set<std::vector<eid>> brute_classes(const EnumeratedGroup& G) {
    const Field& F = *G.field;
    std::vector<char> seen(G.order(), 0);
    std::set<std::vector<eid>> out;
    std::vector<Mat> all, invs;
    for (eid i = 0; i < G.order(); ++i) {
        all.push_back(G.element(i));
        invs.push_back(inverse(F, all.back()));
    }
    for (eid g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        std::set<eid> cls;
        for (eid x = 0; x < G.order(); ++x) {
            const long long id = G.find(mat_mul(F, invs[x], mat_mul(F, all[g], all[x])));
            REQUIRE(id >= 0);
            cls.insert(static_cast<eid>(id));
        }
        for (eid c : cls) seen[c] = 1;
        out.insert({cls.begin(), cls.end()});
    }
    return out;
}

std::string temp_dir(const std::string& tag) {
    const auto p = std::filesystem::temp_directory_path() / ("classchar_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_CASE("closure size equals the order formula") {
    for (std::string s : {"SL(2,2)", "SL(2,3)", "SL(2,4)", "SL(2,5)", "SL(2,7)", "SL(3,2)", "SU(3,2)", "Sp(2,3)",
                          "Sp(4,2)", "SO(3,3)", "O+(4,2)", "O-(4,2)", "O+(4,3)", "O-(4,3)"}) {
        CAPTURE(s);
        const GroupSpec spec = parse_spec(s);
        const EnumeratedGroup G = enumerate(spec);
        CHECK(mpz_class(static_cast<unsigned long>(G.order())) == group_order(spec));
        mpz_class total = 0;
        for (const ClassData& c : G.classes) {
            total += c.size;
            CHECK(c.size * c.centralizer_order == group_order(spec));
        }
        CHECK(total == group_order(spec));
        CHECK(G.classes[0].size == 1);
        CHECK(G.element(G.classes[0].rep) == identity(spec.n));
    }
}

TEST_CASE("classes agree with brute-force conjugation") {
    for (std::string s : {"SL(2,3)", "SL(3,2)", "SU(3,2)", "O-(4,2)"}) {
        CAPTURE(s);
        const EnumeratedGroup G = enumerate(parse_spec(s));
        std::set<std::vector<eid>> ours;
        for (const auto& m : G.members) ours.insert(m);
        CHECK(ours == brute_classes(G));
    }
}

TEST_CASE("known class numbers") {
    // Computed from the brute-force classes above, then frozen.
    const std::map<std::string, int> expect = {{"SL(2,3)", 7},  {"SL(2,5)", 9},  {"SL(3,2)", 6},
                                               {"Sp(4,2)", 11}, {"SU(3,2)", 16}, {"SO(3,3)", 5}};
    for (const auto& [s, k] : expect) {
        CAPTURE(s);
        CHECK(enumerate(parse_spec(s)).num_classes() == k);
    }
}

TEST_CASE("class data invariants") {
    const EnumeratedGroup G = enumerate(parse_spec("SL(2,5)"));
    const Field& F = *G.field;
    for (const ClassData& c : G.classes) {
        CHECK(G.classes[c.inverse_class].inverse_class == c.id);
        CHECK(c.is_real == (c.inverse_class == c.id));
        CHECK(c.order_of_rep == matrix_order(F, G.element(c.rep)));
        CHECK(G.class_of[G.inv[c.rep]] == c.inverse_class);
        for (long long k = 0; k < 7; ++k) CHECK(G.power_class(c.id, k) == G.class_of[G.power(c.rep, k)]);
    }
    const auto central = G.central_classes();
    CHECK(central.size() == 2);  // +-I
}

TEST_CASE("structure constants against pair counting") {
    for (std::string s : {"SL(2,3)", "SL(3,2)", "O-(4,2)"}) {
        CAPTURE(s);
        const EnumeratedGroup G = enumerate(parse_spec(s));
        const StructureConstants sc = structure_constants(G);
        const int k = G.num_classes();
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                std::vector<long long> count(k, 0);
                for (eid x : G.members[i])
                    for (eid y : G.members[j]) {
                        const eid z = G.mul(x, y);
                        if (z == G.classes[G.class_of[z]].rep) ++count[G.class_of[z]];
                    }
                for (int l = 0; l < k; ++l) CHECK(sc(i, j, l) == count[l]);
            }
    }
}

TEST_CASE("parallel and serial structure constants agree") {
    for (std::string s : {"Sp(4,2)", "SU(3,2)", "SL(2,7)"}) {
        const EnumeratedGroup G = enumerate(parse_spec(s));
        CHECK(structure_constants(G).a == structure_constants_serial(G).a);
    }
}

TEST_CASE("class convolution is a probability vector") {
    const EnumeratedGroup G = enumerate(parse_spec("SL(3,2)"));
    const StructureConstants sc = structure_constants(G);
    Distribution d = point_class(G, 1);
    for (int step = 0; step < 4; ++step) {
        d = convolve_class(G, sc, 2, d);
        mpq_class total = 0;
        for (const mpq_class& p : d.p) {
            CHECK(p >= 0);
            total += p;
        }
        CHECK(total == 1);
    }
}

TEST_CASE("cache round trip") {
    const std::string dir = temp_dir("grp_cache");
    const GroupSpec spec = parse_spec("Sp(4,2)");
    const EnumeratedGroup a = load_or_enumerate(spec, dir, true);
    CHECK(!std::filesystem::is_empty(dir));
    const EnumeratedGroup b = load_or_enumerate(spec, dir, true);
    CHECK(a.elems == b.elems);
    CHECK(a.class_of == b.class_of);
    CHECK(a.num_classes() == b.num_classes());
    for (int i = 0; i < a.num_classes(); ++i) CHECK(a.classes[i].size == b.classes[i].size);
    CHECK(b.find(a.element(17)) == 17);
    std::filesystem::remove_all(dir);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate(parse_spec("SL(3,3)"), 100), Error);
}

TEST_CASE("uniform sampler is reproducible and hits classes in proportion") {
    const EnumeratedGroup G = enumerate(parse_spec("SL(3,2)"));
    UniformSampler a(G, 5, 0), b(G, 5, 0), c(G, 5, 1);
    bool streams_differ = false;
    for (int i = 0; i < 100; ++i) {
        const eid x = a.next();
        CHECK(x == b.next());
        streams_differ |= x != c.next();
    }
    CHECK(streams_differ);
    const long trials = 168000;
    std::vector<long> hits(G.num_classes(), 0);
    UniformSampler s(G, 9);
    for (long t = 0; t < trials; ++t) ++hits[G.class_of[s.next()]];
    for (const ClassData& cl : G.classes) {
        const double expect = trials * cl.size.get_d() / 168.0;
        CHECK(std::abs(hits[cl.id] - expect) < 6 * std::sqrt(expect));
    }
}

TEST_CASE("product replacement stays in the group") {
    const GroupSpec spec = parse_spec("Sp(4,3)");
    const auto gens = generators(spec);
    ProductReplacement pr(spec, gens, 3), pr2(spec, gens, 3);
    for (int i = 0; i < 50; ++i) {
        const Mat x = pr.next();
        CHECK(is_member(spec, x));
        CHECK(x == pr2.next());
    }
}
