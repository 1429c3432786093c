#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "classchar/forms.hpp"

using namespace cc;

namespace {

mpz_class qpow(long q, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

// Classical order formulas, written out per family.
mpz_class order_oracle(Family fam, int n, long q, int eps) {
    mpz_class r = 1;
    switch (fam) {
        case Family::SL:
            r = qpow(q, n * (n - 1) / 2);
            for (int i = 2; i <= n; ++i) r *= qpow(q, i) - 1;
            return r;
        case Family::SU:
            r = qpow(q, n * (n - 1) / 2);
            for (int i = 2; i <= n; ++i) r *= qpow(q, i) - (i % 2 ? -1 : 1);
            return r;
        case Family::Sp: {
            const int m = n / 2;
            r = qpow(q, m * m);
            for (int i = 1; i <= m; ++i) r *= qpow(q, 2 * i) - 1;
            return r;
        }
        case Family::Omega:
        case Family::SO:
        case Family::GO: {
            mpz_class go;
            if (n % 2) {
                const int m = n / 2;
                go = 2 * qpow(q, m * m);
                for (int i = 1; i <= m; ++i) go *= qpow(q, 2 * i) - 1;
            } else {
                const int m = n / 2;
                go = 2 * qpow(q, m * (m - 1)) * (qpow(q, m) - eps);
                for (int i = 1; i < m; ++i) go *= qpow(q, 2 * i) - 1;
            }
            if (fam == Family::GO) return go;
            if (q % 2 == 0) return fam == Family::SO && n % 2 == 0 ? go : go / 2;
            return fam == Family::SO ? go / 2 : go / 4;
        }
        default:
            return 0;
    }
}

long brute_singular(const Field& F, const FormData& form, int n) {
    long c = 0;
    for (const Vec& v : all_vectors(F, n)) {
        bool zero = true;
        for (fe x : v) zero &= x == 0;
        if (!zero && quad_value(F, form, v) == 0) ++c;
    }
    return c;
}

const char* kSpecs[] = {"SL(2,3)", "SL(3,2)", "SL(4,3)", "SU(3,2)", "SU(4,2)", "SU(3,3)", "Sp(4,2)",  "Sp(6,3)",
                        "SO(3,3)", "SO(5,3)", "O+(4,2)", "O-(4,2)", "O+(4,3)", "O-(4,3)", "O+(6,2)",  "O-(6,3)",
                        "Omega(5,3)", "Omega(7,5)", "O-(8,2)"};

}  // namespace

TEST_CASE("order formulas") {
    for (std::string s : kSpecs) {
        CAPTURE(s);
        const GroupSpec g = parse_spec(s);
        CHECK(group_order(g) == order_oracle(g.family, g.n, g.q, g.eps));
    }
    // Known small orders.
    CHECK(group_order(parse_spec("Sp(4,2)")) == 720);
    CHECK(group_order(parse_spec("SU(3,2)")) == 216);
    CHECK(group_order(parse_spec("O-(6,2)")) == 25920);
    CHECK(group_order(parse_spec("O+(4,3)")) == 288);
    CHECK(group_order(parse_spec("SO(3,3)")) == 24);
}

TEST_CASE("generators preserve the form and have determinant one") {
    for (std::string s : kSpecs) {
        CAPTURE(s);
        const GroupSpec g = parse_spec(s);
        const Field& F = *g.field;
        for (const Mat& x : generators(g)) {
            CHECK(det(F, x) == 1);
            if (g.form.kind != FormKind::None) CHECK(is_isometry(F, g.form, x));
            CHECK(is_member(g, x));
        }
    }
}

TEST_CASE("parse and canonical names round trip") {
    for (const char* s : kSpecs) CHECK(parse_spec(parse_spec(s).name()).name() == parse_spec(s).name());
    CHECK(parse_spec("sp(4,3)").name() == "Sp(4,3)");
    CHECK(parse_spec("o-(6,2)").name() == parse_spec("Omega-(6,2)").name());
    CHECK(parse_spec("SU(3,2)").field->q() == 4);
    CHECK(parse_spec("SU(3,2)").q == 2);
    CHECK_THROWS_AS(parse_spec("Sp(3,2)"), Error);
    CHECK_THROWS_AS(parse_spec("SL(2,6)"), Error);
    CHECK_THROWS_AS(parse_spec("XY(2,3)"), Error);
    CHECK_THROWS_AS(parse_spec("O+(5,3)"), Error);
}

TEST_CASE("singular vector count and certified type") {
    for (int q : {2, 3, 4, 5}) {
        FieldPtr F = make_field_q(q);
        for (int n : {2, 3, 4, 5}) {
            for (int eps : (n % 2 ? std::vector<int>{0} : std::vector<int>{1, -1})) {
                if (n % 2 && q % 2 == 0) continue;
                const FormData form = standard_form(Family::Omega, n, *F, eps);
                const long brute = brute_singular(*F, form, n);
                CHECK(count_singular(*F, form, n) == brute);
                const int m = n / 2;
                long expected;
                if (n % 2) {
                    expected = static_cast<long>(std::pow(q, 2 * m)) - 1;
                } else {
                    expected = (static_cast<long>(std::pow(q, m)) - eps) * (static_cast<long>(std::pow(q, m - 1)) + eps);
                }
                CHECK(brute == expected);
                CHECK(certified_type(*F, form, n) == eps);
            }
        }
    }
}

TEST_CASE("standard forms are nondegenerate") {
    for (const char* s : {"Sp(6,3)", "SU(4,2)", "O-(6,3)", "O+(6,2)", "Omega(5,3)"}) {
        const GroupSpec g = parse_spec(s);
        CHECK(det(*g.field, g.form.gram) != 0);
    }
    const GroupSpec sp = parse_spec("Sp(4,5)");
    CHECK(transpose(sp.form.gram) == mat_scale(*sp.field, sp.field->neg(1), sp.form.gram));
}

TEST_CASE("reflections and Omega membership") {
    SUBCASE("even characteristic: orthogonal transvections have Dickson invariant one") {
        const GroupSpec g = parse_spec("O+(4,2)");
        const Field& F = *g.field;
        const Vec w{1, 1, 0, 0};  // Q(w) = 1
        const Mat r = reflection(F, g.form, w);
        CHECK(is_isometry(F, g.form, r));
        CHECK(dickson_invariant(F, r) == 1);
        CHECK_FALSE(omega_membership(F, g.form, r));
        CHECK(omega_membership(F, g.form, mat_mul(F, r, r)));
    }
    SUBCASE("odd characteristic: spinor norm of a product of two reflections") {
        const GroupSpec g = parse_spec("Omega(3,3)");
        const Field& F = *g.field;
        // Find w1, w2 with Q(w1) Q(w2) a nonsquare and v1, v2 with a square product.
        std::vector<Vec> square, nonsquare;
        for (const Vec& v : all_vectors(F, 3)) {
            const fe qv = quad_value(F, g.form, v);
            if (qv == 0) continue;
            (F.is_square(qv) ? square : nonsquare).push_back(v);
        }
        REQUIRE(!square.empty());
        REQUIRE(!nonsquare.empty());
        const Mat a = mat_mul(F, reflection(F, g.form, square[0]), reflection(F, g.form, nonsquare[0]));
        const Mat b = mat_mul(F, reflection(F, g.form, square[0]), reflection(F, g.form, square[1]));
        CHECK(det(F, a) == 1);
        CHECK_FALSE(omega_membership(F, g.form, a));
        CHECK(omega_membership(F, g.form, b));
        CHECK(det(F, reflection(F, g.form, square[0])) == F.neg(1));
    }
    SUBCASE("non-isometries are rejected") {
        const GroupSpec g = parse_spec("O+(4,3)");
        Mat x = identity(4);
        x(0, 1) = 1;
        CHECK_FALSE(is_isometry(*g.field, g.form, x));
        CHECK_THROWS_AS(omega_membership(*g.field, g.form, x), Error);
    }
}

TEST_CASE("order sandwich q^D / 2 < |G| < q^D") {
    for (std::string s : {"SL(3,2)", "SL(4,3)", "Sp(4,3)", "SU(3,3)", "SO(5,3)", "O-(6,2)", "O-(8,2)"}) {
        CAPTURE(s);
        CHECK(order_sandwich_holds(parse_spec(s)));
    }
    // For odd q, Omega has index 2 in SO, which drops it under q^D / 2.
    for (std::string s : {"Omega(5,3)", "Omega(7,5)", "O+(4,3)", "O-(4,3)"}) {
        CAPTURE(s);
        const GroupSpec g = parse_spec(s);
        CHECK_FALSE(order_sandwich_holds(g));
        CHECK(2 * group_order(g) < qpow(g.q, g.D()));
    }
    CHECK(parse_spec("SL(3,2)").D() == 8);
    CHECK(parse_spec("Sp(4,3)").D() == 10);
    CHECK(parse_spec("O-(6,2)").D() == 15);
}

TEST_CASE("hermitian product is sesquilinear") {
    const GroupSpec g = parse_spec("SU(3,2)");
    const Field& F = *g.field;
    const auto vs = all_vectors(F, 3);
    for (std::size_t i = 0; i < vs.size(); i += 5)
        for (std::size_t j = 0; j < vs.size(); j += 7) {
            const fe h = hermitian(F, g.form, vs[i], vs[j]);
            CHECK(hermitian(F, g.form, vs[j], vs[i]) == F.frobenius(h, 1));
        }
}
