#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "classchar/verify.hpp"

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

// Tuples (v_1..v_k) of F_q^n with dim span(v, e_1..e_k) = k + r, by direct enumeration.
long brute_count_v(int q, int n, int k, int r) {
    FieldPtr F = make_field_q(q);
    const std::vector<Vec> all = all_vectors(*F, n);
    std::vector<std::size_t> idx(k, 0);
    long count = 0;
    while (true) {
        std::vector<Vec> vs;
        for (int i = 0; i < k; ++i) vs.push_back(unit_vector(n, i));
        for (int i = 0; i < k; ++i) vs.push_back(all[idx[i]]);
        if (span_dim(*F, vs, n) == k + r) ++count;
        int pos = 0;
        while (pos < k && ++idx[pos] == all.size()) idx[pos++] = 0;
        if (pos == k) break;
    }
    return count;
}

}  // namespace

TEST_CASE("constants") {
    const BoundConstants k = default_constants();
    CHECK(k.c == k.sigma / 5);
    CHECK(k.sigma > mpq_class(7, 1) / mpz_class("10000000000000000000000000000000"));
    CHECK(k.gamma * k.C == 2);
}

TEST_CASE("count-v: closed form, exhaustive count and brute force") {
    struct P {
        int q, n, k, r;
        long expect;  // from brute_count_v, frozen
    };
    for (const P& p : {P{2, 3, 1, 0, 2}, P{2, 3, 1, 1, 6}, P{2, 4, 2, 1, 144}, P{2, 4, 2, 2, 96}, P{3, 3, 1, 1, 24},
                       P{3, 4, 2, 1, 2592}, P{4, 3, 1, 1, 60}, P{2, 5, 2, 2, 672}}) {
        CAPTURE(p.q);
        CAPTURE(p.n);
        CAPTURE(p.k);
        CAPTURE(p.r);
        CHECK(brute_count_v(p.q, p.n, p.k, p.r) == p.expect);
        CHECK(count_v_formula(p.q, p.n, p.k, p.r) == p.expect);
        std::vector<Vec> w;
        for (int i = 0; i < p.k; ++i) w.push_back(unit_vector(p.n, i));
        CHECK(count_v_exhaustive(*make_field_q(p.q), p.n, w, p.r) == p.expect);
    }
    const BoundReport r = count_v_report({{2, 3, 1, 0, {}}, {2, 4, 2, 1, {}}, {3, 3, 1, 1, {}}});
    CHECK(r.count(Verdict::Fail) == 0);
    // k = 1, r = 0 meets the bound with equality.
    CHECK(r.rows[0].verdict == Verdict::Flagged);
}

TEST_CASE("pointwise stabilizer orders") {
    // |SL(n,q)_U| = q^(d(n-d)) |SL(n-d,q)|; here by filtering the group.
    const EnumeratedGroup G = enumerate(parse_spec("SL(3,2)"));
    long fixing = 0;
    for (eid i = 0; i < G.order(); ++i) {
        const fe* x = G.data(i);
        if (x[0] == 1 && x[3] == 0 && x[6] == 0) ++fixing;  // first column e_1
    }
    CHECK(fixing == 4 * 6);
    const std::vector<SubspacePoint> pts = {{"SL(3,2)", {unit_vector(3, 0)}, unit_vector(3, 1)},
                                            {"SL(5,2)", {unit_vector(5, 0)}, unit_vector(5, 1)},
                                            {"Sp(4,3)", {unit_vector(4, 0)}, unit_vector(4, 2)},
                                            {"O-(6,2)", {unit_vector(6, 0)}, unit_vector(6, 1)},
                                            {"SU(3,3)", {unit_vector(3, 0)}, unit_vector(3, 1)}};
    const BoundReport order = order_report(pts);
    CHECK(order.count(Verdict::Fail) == 0);
    CHECK(order.count(Verdict::Pass) >= 5);
    const BoundReport orbit2 = orbit2_report(pts);
    CHECK(orbit2.count(Verdict::Fail) == 0);
}

TEST_CASE("orbit1 and trans counts") {
    CHECK(orbit1_report({{"Sp(4,3)", {}, unit_vector(4, 0)},
                         {"O+(4,3)", {}, unit_vector(4, 0)},
                         {"O-(4,3)", {}, Vec{1, 1, 0, 0}},
                         {"SU(3,2)", {}, unit_vector(3, 0)},
                         {"Omega(5,3)", {}, unit_vector(5, 2)}})
              .count(Verdict::Fail) == 0);

    const GroupSpec spec = parse_spec("Sp(4,2)");
    const EnumeratedGroup G = enumerate(spec);
    for (int c = 1; c < G.num_classes(); ++c) {
        const Mat g = G.element(G.classes[c].rep);
        const std::vector<Vec> w{unit_vector(4, 0)}, v{unit_vector(4, 1)};
        CHECK(trans_count_orbit(spec, g, w, v) == trans_count_scan(G, g, w, v));
    }
    CHECK(trans_report({{"Sp(4,2)", 3, {}, {unit_vector(4, 0)}, {}}, {"O-(4,2)", 2, {}, {unit_vector(4, 0)}, {}}})
              .count(Verdict::Fail) == 0);
}

TEST_CASE("tuple orbits") {
    const GroupSpec spec = parse_spec("SL(3,2)");
    // SL(3,2) is transitive on nonzero vectors and on ordered bases.
    CHECK(tuple_orbit(*spec.field, generators(spec), {unit_vector(3, 0)}).size() == 7);
    CHECK(tuple_orbit(*spec.field, generators(spec), {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)}).size() ==
          168);
    CHECK_THROWS_AS(tuple_orbit(*spec.field, generators(spec), {unit_vector(3, 0), unit_vector(3, 1)}, 10), Error);
}

TEST_CASE("Wilson interval") {
    const Wilson w = wilson(50, 100);
    CHECK(w.lo == doctest::Approx(0.403832).epsilon(1e-5));
    CHECK(w.hi == doctest::Approx(0.596168).epsilon(1e-5));
    CHECK(wilson(0, 100).lo == doctest::Approx(0.0));
    CHECK(within_wilson(0.5, 50, 100));
    CHECK_FALSE(within_wilson(0.9, 50, 100));
}

TEST_CASE("largest low-degree kernel") {
    FieldPtr F = make_field_q(2);
    CHECK(max_kernel_low_degree(*F, identity(4), 2) == 4);
    // x^3 + x + 1 has no factor of degree < 2 over GF(2).
    CHECK(max_kernel_low_degree(*F, companion(*F, Poly{1, 1, 0, 1}), 2) == 0);
    CHECK(max_kernel_low_degree(*F, companion(*F, Poly{1, 1, 0, 1}), 4) == 3);
}

TEST_CASE("Frobenius identity on small groups") {
    for (std::string s : {"SL(2,3)", "SL(3,2)", "Sp(4,2)", "SU(3,2)"}) {
        CAPTURE(s);
        const Built b = build(s);
        const BoundReport r = frob_identity_check(b.G, b.sc, b.t);
        CHECK(r.count(Verdict::Fail) == 0);
        CHECK(r.count(Verdict::Pass) == r.rows.size());
    }
}

TEST_CASE("empirical exponent scans") {
    for (std::string s : {"SL(2,5)", "SL(3,2)", "SL(2,7)"}) {
        CAPTURE(s);
        const Built b = build(s);
        const RatioData rd = ratio_data(b.t);
        const BoundReport a = exponent_scan(b.G, b.t, rd);
        CHECK(a.count(Verdict::Fail) == 0);
        CHECK(a.extra["min_exponent"].get<double>() > 0.5);
        CHECK(a.extra["exact_agree"] == a.extra["exact_checked"]);
        CHECK(a.extra["exact_checked"].get<int>() > 0);
        for (const BoundReport& r : supp_exponent_scan(b.G, b.t, rd)) CHECK(r.count(Verdict::Fail) == 0);
        CHECK(cent_bound_scan(b.G, b.t, rd, {0.2, 0.5, 0.8}).count(Verdict::Fail) == 0);
    }
    // A nonlinear character trivial on a non-central element gives exponent 0.
    const Built b = build("SO(3,3)");
    const BoundReport a = exponent_scan(b.G, b.t, ratio_data(b.t));
    CHECK(a.extra["min_exponent"].get<double>() == 0.0);
    CHECK(a.count(Verdict::Advisory) > 0);
    CHECK(a.count(Verdict::Fail) == 0);
}

TEST_CASE("uniform Monte Carlo harness") {
    const Built b = build("SL(3,2)");
    UniformHarnessConfig cfg;
    cfg.cls = b.G.num_classes() - 1;
    cfg.trials = 50000;
    cfg.seed = 7;
    const BoundReport r1 = mc_uniform_harness(b.G, b.sc, cfg);
    CHECK(r1.count(Verdict::Fail) == 0);
    const BoundReport r2 = mc_uniform_harness(b.G, b.sc, cfg);
    CHECK(r1.to_json() == r2.to_json());
}

TEST_CASE("support growth under product replacement") {
    const GroupSpec spec = parse_spec("SL(6,2)");
    Mat t = identity(6);
    t(0, 5) = 1;
    const SupportGrowth s = mc_support_growth(spec, t, 4, 400, 3);
    REQUIRE(s.median.size() == 4);
    CHECK(s.median[0] == 1.0);  // a conjugate of a transvection
    for (std::size_t b = 0; b < s.median.size(); ++b) CHECK(s.median[b] <= b + 1);
    CHECK(s.csv().rfind("b,", 0) == 0);
}
