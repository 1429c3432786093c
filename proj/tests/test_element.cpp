#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "classchar/element.hpp"
#include "classchar/grp.hpp"

using namespace cc;

namespace {

Mat random_invertible(const Field& F, int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, F.q() - 1);
    while (true) {
        Mat m(n);
        for (fe& x : m.a) x = static_cast<fe>(d(rng));
        if (det(F, m) != 0) return m;
    }
}

Mat conj_by(const Field& F, const Mat& g, const Mat& x) { return mat_mul(F, inverse(F, x), mat_mul(F, g, x)); }

// Nilpotent Jordan matrix with the given block sizes, plus the identity.
Mat unipotent_jordan(const std::vector<int>& blocks) {
    int n = 0;
    for (int b : blocks) n += b;
    Mat m = identity(n);
    int at = 0;
    for (int b : blocks) {
        for (int i = 0; i + 1 < b; ++i) m(at + i, at + i + 1) = 1;
        at += b;
    }
    return m;
}

// Gl centralizer dimension of a unipotent element: sum_{i,j} min(b_i, b_j).
long gl_cent_from_blocks(const std::vector<int>& blocks) {
    long s = 0;
    for (int a : blocks)
        for (int b : blocks) s += std::min(a, b);
    return s;
}

std::vector<int> random_blocks(std::mt19937& rng, int n) {
    std::vector<int> out;
    while (n > 0) {
        const int b = std::uniform_int_distribution<int>(1, n)(rng);
        out.push_back(b);
        n -= b;
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

}  // namespace

TEST_CASE("support of diagonalizable matrices is n minus the largest multiplicity") {
    std::mt19937 rng(21);
    FieldPtr F = make_field_q(5);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 4;
        Mat d(n);
        std::vector<int> mult(5, 0);
        for (int i = 0; i < n; ++i) {
            d(i, i) = static_cast<fe>(1 + rng() % 4);
            ++mult[d(i, i)];
        }
        const int largest = *std::max_element(mult.begin(), mult.end());
        CHECK(support(*F, conj_by(*F, d, random_invertible(*F, n, rng))).supp == n - largest);
    }
}

TEST_CASE("support of special elements") {
    FieldPtr F = make_field_q(3);
    CHECK(support(*F, identity(4)).supp == 0);
    CHECK(support(*F, mat_scale(*F, 2, identity(4))).supp == 0);
    CHECK(support(*F, unipotent_jordan({2, 1, 1})).supp == 1);
    CHECK(support(*F, unipotent_jordan({4})).supp == 3);
    // An irreducible characteristic polynomial has distinct eigenvalues over the closure.
    FieldPtr F2 = make_field_q(2);
    CHECK(support(*F2, companion(*F2, Poly{1, 1, 0, 0, 1})).supp == 3);
}

TEST_CASE("transvection class sizes in Sp(4,q)") {
    // Anchors: (3^4 - 1)/2 = 40 in Sp(4,3) and 2^4 - 1 = 15 in Sp(4,2).
    for (auto [s, size] : {std::pair<std::string, int>{"Sp(4,3)", 40}, {"Sp(4,2)", 15}}) {
        CAPTURE(s);
        const EnumeratedGroup G = enumerate(parse_spec(s));
        const Field& F = *G.field;
        int found = 0;
        for (const ClassData& c : G.classes) {
            const Mat g = G.element(c.rep);
            if (c.support == 1 && rank(F, mat_sub(F, g, identity(4))) == 1) {
                CHECK(c.size == size);
                ++found;
            }
        }
        CHECK(found == (s == "Sp(4,3)" ? 2 : 1));
    }
}

TEST_CASE("commutant dimension from the kernel and from the Jordan type") {
    std::mt19937 rng(22);
    for (int q : {2, 3}) {
        FieldPtr F = make_field_q(q);
        for (int t = 0; t < 40; ++t) {
            const Mat g = random_invertible(*F, 4, rng);
            const JordanDecomposition jd = jordan_decompose(*F, g);
            CHECK(commutant_dim(*F, g) == gl_centralizer_dim(jd.type));
            CHECK(mat_mul(*F, jd.semisimple, jd.unipotent) == g);
            CHECK(mat_mul(*F, jd.unipotent, jd.semisimple) == g);
            CHECK(matrix_order(*F, jd.semisimple) % q != 0);
            const long uo = matrix_order(*F, jd.unipotent);
            CHECK((uo == 1 || uo % q == 0));
        }
    }
}

TEST_CASE("unipotent partitions and the GL centralizer formula") {
    std::mt19937 rng(23);
    FieldPtr F = make_field_q(3);
    for (int t = 0; t < 30; ++t) {
        const std::vector<int> blocks = random_blocks(rng, 2 + t % 6);
        const Mat u = conj_by(*F, unipotent_jordan(blocks), random_invertible(*F, unipotent_jordan(blocks).n, rng));
        const Partition p = unipotent_partition(*F, u);
        CHECK(blocks_descending(p) == blocks);
        CHECK(p == partition_from_blocks(blocks));
        CHECK(centralizer_dim2(p, CentFamily::GL) == 2 * gl_cent_from_blocks(blocks));
        CHECK(commutant_dim(*F, u) == gl_cent_from_blocks(blocks));
    }
}

TEST_CASE("two ways of counting agree") {
    std::mt19937 rng(24);
    for (int t = 0; t < 200; ++t) {
        const Partition p = partition_from_blocks(random_blocks(rng, 1 + t % 14));
        const auto [a, b] = two_ways(p);
        CHECK(a == b);
    }
    CHECK(two_ways_report(300, 14, 5).count(Verdict::Fail) == 0);
}

TEST_CASE("symplectic and orthogonal centralizer dimensions are integers") {
    std::mt19937 rng(25);
    for (int t = 0; t < 100; ++t) {
        std::vector<int> blocks = random_blocks(rng, 1 + t % 10);
        // Symplectic: odd parts with even multiplicity.
        std::vector<int> sp;
        for (int b : blocks) {
            sp.push_back(b);
            if (b % 2) sp.push_back(b);
        }
        std::sort(sp.rbegin(), sp.rend());
        const Partition p = partition_from_blocks(sp);
        CHECK(centralizer_dim2(p, CentFamily::Sp) % 2 == 0);
        CHECK(centralizer_dim2(p, CentFamily::Sp) > 0);
    }
}

TEST_CASE("class-size sandwich over small groups") {
    for (std::string s : {"SL(3,2)", "SL(3,3)", "Sp(4,2)", "Sp(4,3)", "SU(3,3)", "O-(6,2)", "O+(4,3)"}) {
        CAPTURE(s);
        const EnumeratedGroup G = enumerate(parse_spec(s));
        const BoundReport r = sandwich_report(G);
        CHECK(r.count(Verdict::Fail) == 0);
        CHECK(!r.rows.empty());
    }
}

TEST_CASE("unipotent centralizer windows") {
    for (std::string s : {"Sp(4,2)", "Sp(4,3)"}) {
        CAPTURE(s);
        const BoundReport r = unipotent_window_report(enumerate(parse_spec(s)), nullptr);
        CHECK(r.count(Verdict::Fail) == 0);
    }
    const EnumeratedGroup G = enumerate(parse_spec("O-(4,2)"));
    const EnumeratedGroup go = enumerate(parse_spec("GO-(4,2)"));
    CHECK(unipotent_window_report(G, &go).count(Verdict::Fail) == 0);
    CHECK_THROWS_AS(unipotent_window_report(enumerate(parse_spec("SL(2,3)")), nullptr), Error);
}

TEST_CASE("GL-context centralizer reports") {
    const EnumeratedGroup G = enumerate(parse_spec("SL(3,2)"));
    CHECK(gl_s_dimension_report(G).count(Verdict::Fail) == 0);
    CHECK(matrix_cent_report(G, {10, 25, 50, 75}).count(Verdict::Fail) == 0);
    CHECK(alpha_eps_report(G, {mpq_class(1, 3), mpq_class(2, 3)}).count(Verdict::Fail) == 0);
    CHECK_THROWS_AS(matrix_cent_report(enumerate(parse_spec("Sp(4,2)")), {50}), Error);
}
