#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "classchar/field.hpp"

using namespace cc;

namespace {

// Schoolbook multiplication of digit vectors modulo the field's modulus,
// independent of the log tables.
fe slow_mul(const Field& F, fe a, fe b) {
    const int p = F.p(), f = F.f();
    std::vector<int> x(f), y(f), prod(2 * f, 0);
    for (int i = 0; i < f; ++i) {
        x[i] = a % p;
        a /= p;
        y[i] = b % p;
        b /= p;
    }
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    const std::vector<int>& m = F.modulus();
    for (int d = 2 * f - 1; d >= f; --d) {
        const int c = prod[d];
        if (!c) continue;
        for (int i = 0; i <= f; ++i) prod[d - f + i] = ((prod[d - f + i] - c * m[i]) % p + p) % p;
    }
    int code = 0;
    for (int i = f - 1; i >= 0; --i) code = code * p + prod[i];
    return static_cast<fe>(code);
}

const int kOrders[] = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27};

}  // namespace

TEST_CASE("multiplication matches polynomial arithmetic") {
    for (int q : kOrders) {
        FieldPtr F = make_field_q(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) REQUIRE(F->mul(a, b) == slow_mul(*F, a, b));
    }
}

TEST_CASE("field axioms hold exhaustively") {
    for (int q : kOrders) {
        FieldPtr F = make_field_q(q);
        for (int a = 0; a < q; ++a) {
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                for (int c = 0; c < q; c += 3) CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            }
        }
    }
}

TEST_CASE("primitive element has order q - 1") {
    for (int q : kOrders) {
        FieldPtr F = make_field_q(q);
        CHECK(F->order(F->primitive()) == q - 1);
        for (int k = 0; k < q - 1; ++k) CHECK(F->log(F->exp(k)) == k);
    }
}

TEST_CASE("frobenius is the p-th power and has order f") {
    for (int q : kOrders) {
        FieldPtr F = make_field_q(q);
        for (int a = 0; a < q; ++a) {
            CHECK(F->frobenius(a, 1) == F->pow(a, F->p()));
            CHECK(F->frobenius(a, F->f()) == a);
            CHECK(F->frobenius(F->frobenius(a, 1), -1) == a);
        }
    }
}

TEST_CASE("characteristic two square roots") {
    for (int q : {2, 4, 8, 16}) {
        FieldPtr F = make_field_q(q);
        for (int a = 0; a < q; ++a) {
            const fe r = F->sqrt_char2(a);
            CHECK(F->mul(r, r) == a);
            CHECK(F->is_square(a));
        }
    }
}

TEST_CASE("odd characteristic has (q - 1) / 2 nonzero squares") {
    for (int q : {3, 5, 7, 9, 25, 27}) {
        FieldPtr F = make_field_q(q);
        int squares = 0;
        for (int a = 1; a < q; ++a) squares += F->is_square(a);
        CHECK(squares == (q - 1) / 2);
    }
}

TEST_CASE("least irreducible moduli") {
    CHECK(least_irreducible(2, 2) == std::vector<int>{1, 1, 1});
    CHECK(least_irreducible(2, 3) == std::vector<int>{1, 1, 0, 1});
    CHECK(least_irreducible(3, 2) == std::vector<int>{1, 0, 1});
    CHECK(least_irreducible(2, 4) == std::vector<int>{1, 1, 0, 0, 1});
    CHECK(make_field(2, 3)->modulus() == least_irreducible(2, 3));
}

TEST_CASE("prime power validation") {
    CHECK(is_prime(2));
    CHECK(is_prime(65537));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS_AS(make_field_q(6), Error);
    CHECK_THROWS_AS(make_field_q(1), Error);
    CHECK_THROWS_AS(make_field(4, 1), Error);
    CHECK(make_field_q(49)->f() == 2);
}

TEST_CASE("prime field embedding") {
    FieldPtr F = make_field_q(9);
    CHECK(F->from_int(3) == 0);
    CHECK(F->from_int(-1) == F->neg(1));
    CHECK(F->from_int(4) == 1);
}
