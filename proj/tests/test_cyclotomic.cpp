#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "classchar/cyclotomic.hpp"

using namespace cc;

namespace {

Cyclotomic random_value(std::mt19937& rng, int e) {
    std::vector<Cyclotomic::Term> terms;
    std::uniform_int_distribution<int> k(0, e - 1), c(-3, 3);
    for (int i = 0; i < 4; ++i) terms.push_back({k(rng), mpq_class(c(rng), 1 + rng() % 3)});
    return Cyclotomic::from_terms(e, terms);
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_CASE("sum of all e-th roots of unity vanishes") {
    for (int e = 2; e <= 40; ++e) {
        Cyclotomic s;
        for (int k = 0; k < e; ++k) s += Cyclotomic::root(e, k);
        CHECK(s.is_zero());
    }
    CHECK_FALSE(Cyclotomic::root(12, 1).is_zero());
}

TEST_CASE("cyclotomic polynomials have degree phi(e)") {
    for (int e = 1; e <= 60; ++e) {
        CHECK(static_cast<int>(cyclotomic_poly(e).size()) - 1 == euler_phi(e));
        CHECK(cyclotomic_poly(e).back() == 1);
    }
    CHECK(cyclotomic_poly(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("arithmetic matches the complex embedding") {
    std::mt19937 rng(31);
    for (int e : {3, 4, 5, 7, 8, 9, 12, 15, 20, 24}) {
        for (int t = 0; t < 20; ++t) {
            const Cyclotomic a = random_value(rng, e), b = random_value(rng, e);
            CHECK(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
            CHECK(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
            CHECK(close(a.conj().to_complex(), std::conj(a.to_complex())));
            CHECK(close(a.reduced().to_complex(), a.to_complex()));
            CHECK(a.reduced() == a);
            CHECK(a.reduced().reduced().terms() == a.reduced().terms());
            CHECK((a - a).is_zero());
            CHECK(std::abs(a.abs2().to_complex().real() - std::norm(a.to_complex())) < 1e-9);
        }
    }
}

TEST_CASE("mixed conductors compare in the common field") {
    CHECK(Cyclotomic::root(3, 1) == Cyclotomic::root(6, 2));
    CHECK(Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1) == Cyclotomic(-1));
    CHECK(Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2) == Cyclotomic(-1));
    const Cyclotomic x = Cyclotomic::root(5, 1) * Cyclotomic::root(3, 1);
    CHECK(x == Cyclotomic::root(15, 8));
    CHECK(Cyclotomic::root(5, 2).lift(15) == Cyclotomic::root(5, 2));
}

TEST_CASE("galois automorphisms compose") {
    std::mt19937 rng(32);
    const int e = 21;
    for (int t = 0; t < 20; ++t) {
        const Cyclotomic a = random_value(rng, e);
        for (long j : {2L, 4L, 5L, 8L})
            for (long k : {2L, 10L, 11L}) CHECK(a.galois(j).galois(k) == a.galois(j * k % e));
        CHECK(a.galois(e - 1) == a.conj());
    }
}

TEST_CASE("quadratic Gauss sums square to +-p") {
    for (int p : {3, 5, 7, 11, 13}) {
        Cyclotomic g;
        for (int k = 1; k < p; ++k) {
            long r = 1;
            for (int i = 0; i < (p - 1) / 2; ++i) r = r * k % p;
            g += Cyclotomic::root(p, k) * mpq_class(r == 1 ? 1 : -1);
        }
        const Cyclotomic sq = g * g;
        REQUIRE(sq.is_rational());
        CHECK(sq.rational() == (p % 4 == 1 ? p : -p));
    }
}

TEST_CASE("real sign of real cyclotomic values") {
    const Cyclotomic c7 = Cyclotomic::root(7, 1) + Cyclotomic::root(7, 6);  // 2 cos(2 pi / 7)
    CHECK(c7.real_sign() == 1);
    const Cyclotomic c5 = Cyclotomic::root(5, 2) + Cyclotomic::root(5, 3);  // (-1 - sqrt 5) / 2
    CHECK(c5.real_sign() == -1);
    const Cyclotomic r2 = Cyclotomic::root(8, 1) + Cyclotomic::root(8, 7);  // sqrt 2
    CHECK((r2 * r2 - Cyclotomic(2)).is_zero());
    CHECK((r2 - Cyclotomic(mpq_class(141421, 100000))).real_sign() == 1);
    CHECK((r2 - Cyclotomic(mpq_class(141422, 100000))).real_sign() == -1);
    CHECK(Cyclotomic(0).real_sign() == 0);
    CHECK_THROWS(Cyclotomic::root(3, 1).real_sign());
}

TEST_CASE("rationality and printing") {
    CHECK(Cyclotomic(mpq_class(3, 4)).rational() == mpq_class(3, 4));
    CHECK_THROWS(Cyclotomic::root(5, 1).rational());
    CHECK(Cyclotomic(2).str() == "2");
    const Cyclotomic z = Cyclotomic::root(7, 3) * mpq_class(-1, 2) + Cyclotomic(2);
    CHECK(z.str().find("z7^3") != std::string::npos);
    CHECK(to_bigfloat(mpq_class(1, 3)) * 3 == BigFloat(1));
    CHECK(Cyclotomic::root(12, 5).pow(12) == Cyclotomic(1));
}
