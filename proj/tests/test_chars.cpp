#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>

#include "classchar/chars.hpp"

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

std::vector<long> degrees(const CharTable& t) {
    std::vector<long> d;
    for (const mpz_class& x : t.degrees) d.push_back(x.get_si());
    return d;
}

mpz_class qbinom(long q, int n, int k) {
    mpz_class num = 1, den = 1, qq = q;
    for (int i = 0; i < k; ++i) {
        mpz_class a, b;
        mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), n - i);
        mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

}  // namespace

TEST_CASE("character degrees of small groups") {
    // From Dixon tables certified by orthogonality, then frozen.
    const std::map<std::string, std::vector<long>> expect = {
        {"SL(2,3)", {1, 1, 1, 2, 2, 2, 3}},
        {"SL(3,2)", {1, 3, 3, 6, 7, 8}},
        {"SL(2,5)", {1, 2, 2, 3, 3, 4, 4, 5, 6}},
        {"Sp(4,2)", {1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16}},
        {"SO(3,3)", {1, 1, 2, 3, 3}},
    };
    for (const auto& [s, d] : expect) {
        CAPTURE(s);
        CHECK(degrees(build(s).t) == d);
    }
}

TEST_CASE("orthogonality certificate") {
    for (std::string s : {"SL(2,2)", "SL(2,4)", "SL(2,7)", "SU(3,2)", "O-(4,2)", "O+(4,3)", "Sp(2,3)"}) {
        CAPTURE(s);
        const Built b = build(s);
        const Orthogonality o = check_orthogonality(b.t);
        CHECK(o.ok());
        mpq_class total = 0;
        for (const mpq_class& p : plancherel(b.t)) total += p;
        CHECK(total == 1);
    }
}

TEST_CASE("column sums of |chi(g)|^2 give centralizer orders") {
    const Built b = build("SL(2,5)");
    for (int c = 0; c < b.t.k; ++c) {
        Cyclotomic s;
        for (int chi = 0; chi < b.t.k; ++chi) s += b.t(chi, c).abs2();
        CHECK(s.rational() == b.G.classes[c].centralizer_order);
    }
}

TEST_CASE("central characters multiply like class sums") {
    // omega(C_i) omega(C_j) = sum_l a_ijl omega(C_l) with omega(C) = |C| chi(g) / chi(1).
    for (std::string s : {"SL(2,3)", "SL(3,2)"}) {
        const Built b = build(s);
        const int k = b.t.k;
        for (int chi = 0; chi < k; ++chi) {
            std::vector<Cyclotomic> w(k);
            for (int c = 0; c < k; ++c)
                w[c] = b.t(chi, c) * mpq_class(b.G.classes[c].size, b.t.degrees[chi]);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    Cyclotomic rhs;
                    for (int l = 0; l < k; ++l) rhs += w[l] * mpq_class(static_cast<long>(b.sc(i, j, l)));
                    CHECK(w[i] * w[j] == rhs);
                }
        }
        CHECK(structure_constants_match(b.sc, b.t));
        CHECK(power_map_consistent(b.G, b.t));
    }
}

TEST_CASE("quasisimplicity and faithfulness") {
    CHECK(is_quasisimple(build("SL(2,5)").t));
    CHECK(is_quasisimple(build("SL(3,2)").t));
    CHECK_FALSE(is_quasisimple(build("SL(2,3)").t));
    CHECK_FALSE(is_quasisimple(build("Sp(4,2)").t));
    const Built b = build("SL(2,5)");
    // The kernel of a nontrivial character is 1 or Z = {+-I}; faithful iff chi(-I) = -chi(1).
    const int minus_one = b.G.central_classes().at(1);
    int faithful = 0;
    for (int chi = 1; chi < b.t.k; ++chi) {
        const bool expect = b.t(chi, minus_one) == Cyclotomic(mpq_class(-b.t.degrees[chi]));
        CHECK(b.t.is_faithful(chi) == expect);
        faithful += expect;
    }
    CHECK(faithful == 4);
    CHECK_FALSE(b.t.is_faithful(0));
    CHECK(characters_of_degree(b.t, 6).size() == 1);
}

TEST_CASE("hook unipotent degrees") {
    // Hook (n-j, 1^j): q^(j(j+1)/2) times the q-binomial [n-1, j]; unitary case by q -> -q.
    for (int n = 1; n <= 6; ++n)
        for (int j = 0; j < n; ++j)
            for (long q : {2L, 3L, 4L}) {
                mpz_class pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), q, j * (j + 1) / 2);
                CHECK(hook_unipotent_degree(n, q, 1, j) == pw * qbinom(q, n - 1, j));
                mpz_class u = pw * qbinom(-q, n - 1, j);
                if (u < 0) u = -u;
                CHECK(hook_unipotent_degree(n, q, -1, j) == u);
            }
    CHECK_THROWS_AS(hook_unipotent_degree(3, 2, 1, 3), Error);
    // The GL(3,2) hooks appear among the SL(3,2) degrees.
    const Built b = build("SL(3,2)");
    CHECK(!characters_of_degree(b.t, hook_unipotent_degree(3, 2, 1, 1)).empty());
    CHECK(!characters_of_degree(b.t, hook_unipotent_degree(3, 2, 1, 2)).empty());
}

TEST_CASE("Steinberg and permutation character checks") {
    for (std::string s : {"SL(2,5)", "SL(3,2)", "SU(3,2)", "Sp(4,2)", "O-(4,3)"}) {
        CAPTURE(s);
        const Built b = build(s);
        CHECK(steinberg_check(b.G, b.t).count(Verdict::Fail) == 0);
    }
    for (std::string s : {"SL(3,2)", "SL(4,2)"}) {
        const Built b = build(s);
        const BoundReport r = sln2_tau_check(b.G, b.t);
        CHECK(r.count(Verdict::Fail) == 0);
        CHECK(r.count(Verdict::Pass) > 0);
    }
}

TEST_CASE("table json round trip") {
    const Built b = build("SL(2,7)");
    const CharTable back = CharTable::from_json(b.t.to_json());
    CHECK(back.k == b.t.k);
    CHECK(back.exponent == b.t.exponent);
    CHECK(back.degrees == b.t.degrees);
    for (int i = 0; i < b.t.k; ++i)
        for (int j = 0; j < b.t.k; ++j) CHECK(back(i, j) == b.t(i, j));
}
