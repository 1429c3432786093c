#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "classchar/matspace.hpp"

using namespace cc;

namespace {

Mat random_mat(const Field& F, int n, std::mt19937& rng) {
    Mat m(n);
    std::uniform_int_distribution<int> d(0, F.q() - 1);
    for (fe& x : m.a) x = static_cast<fe>(d(rng));
    return m;
}

// Leibniz expansion over all permutations.
fe leibniz_det(const Field& F, const Mat& m) {
    std::vector<int> perm(m.n);
    std::iota(perm.begin(), perm.end(), 0);
    fe total = 0;
    do {
        int inversions = 0;
        for (int i = 0; i < m.n; ++i)
            for (int j = i + 1; j < m.n; ++j) inversions += perm[i] > perm[j];
        fe term = 1;
        for (int i = 0; i < m.n; ++i) term = F.mul(term, m(i, perm[i]));
        total = inversions % 2 ? F.sub(total, term) : F.add(total, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Mat scalar_minus(const Field& F, fe a, const Mat& m) {
    Mat r(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r(i, j) = F.sub(i == j ? a : 0, m(i, j));
    return r;
}

Poly poly_pow(const Field& F, const Poly& f, int k) {
    Poly r{1};
    for (int i = 0; i < k; ++i) r = poly_mul(F, r, f);
    return r;
}

}  // namespace

TEST_CASE("determinant agrees with the Leibniz expansion") {
    std::mt19937 rng(11);
    for (int q : {2, 3, 4, 5, 9}) {
        FieldPtr F = make_field_q(q);
        for (int n = 1; n <= 5; ++n)
            for (int t = 0; t < 20; ++t) {
                const Mat m = random_mat(*F, n, rng);
                REQUIRE(det(*F, m) == leibniz_det(*F, m));
            }
    }
}

TEST_CASE("inverse and multiplicativity of det") {
    std::mt19937 rng(12);
    FieldPtr F = make_field_q(7);
    for (int t = 0; t < 50; ++t) {
        const Mat a = random_mat(*F, 4, rng), b = random_mat(*F, 4, rng);
        CHECK(det(*F, mat_mul(*F, a, b)) == F->mul(det(*F, a), det(*F, b)));
        if (det(*F, a) != 0) {
            CHECK(mat_mul(*F, a, inverse(*F, a)) == identity(4));
        } else {
            CHECK_THROWS(inverse(*F, a));
        }
    }
}

TEST_CASE("characteristic polynomial evaluates to det(aI - M)") {
    std::mt19937 rng(13);
    for (int q : {2, 3, 4, 5, 7, 8}) {
        FieldPtr F = make_field_q(q);
        for (int n = 1; n <= 5; ++n)
            for (int t = 0; t < 10; ++t) {
                const Mat m = random_mat(*F, n, rng);
                const Poly c = char_poly(*F, m);
                REQUIRE(deg(c) == n);
                CHECK(c.back() == 1);
                for (int a = 0; a < q; ++a) CHECK(poly_eval(*F, c, a) == det(*F, scalar_minus(*F, a, m)));
                // Cayley-Hamilton.
                CHECK(eval_poly_at_matrix(*F, c, m) == Mat(n));
            }
    }
}

TEST_CASE("companion matrix has the given characteristic polynomial") {
    FieldPtr F = make_field_q(5);
    const Poly f{2, 0, 3, 1, 1};
    CHECK(char_poly(*F, companion(*F, f)) == f);
}

TEST_CASE("factorization multiplies back and factors are irreducible") {
    std::mt19937 rng(14);
    for (int q : {2, 3, 4}) {
        FieldPtr F = make_field_q(q);
        for (int t = 0; t < 40; ++t) {
            const Mat m = random_mat(*F, 6, rng);
            const Poly c = char_poly(*F, m);
            Poly prod{1};
            for (const Factor& fac : factor_squarefree_irreducible(*F, c)) {
                CHECK(is_irreducible(*F, fac.poly));
                CHECK(fac.poly.back() == 1);
                prod = poly_mul(*F, prod, poly_pow(*F, fac.poly, fac.mult));
            }
            CHECK(prod == c);
        }
    }
    CHECK_THROWS_AS(factor_squarefree_irreducible(*make_field_q(2), Poly{}), Error);
}

TEST_CASE("irreducibility against root search for small degree") {
    FieldPtr F = make_field_q(3);
    // Degree 2 and 3 polynomials are irreducible iff they have no root.
    for (int code = 0; code < 27; ++code) {
        Poly f{static_cast<fe>(code % 3), static_cast<fe>(code / 3 % 3), static_cast<fe>(code / 9), 1};
        bool root = false;
        for (int a = 0; a < 3; ++a) root |= poly_eval(*F, f, a) == 0;
        CHECK(is_irreducible(*F, f) == !root);
    }
}

TEST_CASE("rank plus nullity and kernel vectors") {
    std::mt19937 rng(15);
    FieldPtr F = make_field_q(4);
    for (int t = 0; t < 30; ++t) {
        Mat m = random_mat(*F, 5, rng);
        // Force a dependency.
        for (int j = 0; j < 5; ++j) m(4, j) = F->add(m(0, j), m(1, j));
        const RankKernel rk = rank_and_kernel(*F, m);
        CHECK(rk.rank + static_cast<int>(rk.kernel.size()) == 5);
        CHECK(rk.rank <= 4);
        for (const Vec& v : rk.kernel) CHECK(mat_vec(*F, m, v) == Vec(5, 0));
        CHECK(rank(*F, transpose(m)) == rk.rank);
    }
}

TEST_CASE("polynomial division and gcd") {
    FieldPtr F = make_field_q(7);
    const Poly a{1, 2, 3, 4, 5}, b{3, 0, 1};
    const auto [quo, rem] = poly_divmod(*F, a, b);
    CHECK(poly_add(*F, poly_mul(*F, quo, b), rem) == a);
    CHECK(deg(rem) < deg(b));
    const Poly g = poly_gcd(*F, poly_mul(*F, a, b), poly_mul(*F, b, Poly{1, 1}));
    CHECK(g == poly_monic(*F, b));
}

TEST_CASE("matrix powers") {
    FieldPtr F = make_field_q(2);
    const Mat c = companion(*F, Poly{1, 1, 0, 1});  // x^3 + x + 1, primitive
    CHECK(mat_pow(*F, c, 7) == identity(3));
    CHECK(mat_pow(*F, c, 3) != identity(3));
    CHECK(mat_mul(*F, mat_pow(*F, c, -1), c) == identity(3));
}
