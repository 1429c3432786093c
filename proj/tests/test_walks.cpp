#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "classchar/walks.hpp"

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

// Element-level walk: P_{N+1}(y) = (1/|S|) sum_{s in S} P_N(y s^-1).
std::vector<std::vector<mpq_class>> element_walk(const EnumeratedGroup& G, int cls, int steps) {
    const std::size_t n = G.order();
    std::vector<mpq_class> p(n, 0);
    p[G.classes[0].rep] = 1;
    std::vector<std::vector<mpq_class>> per_class;
    const mpq_class w(1, G.members[cls].size());
    for (int N = 0; N <= steps; ++N) {
        std::vector<mpq_class> mass(G.num_classes(), 0);
        for (eid x = 0; x < n; ++x) mass[G.class_of[x]] += p[x];
        per_class.push_back(mass);
        std::vector<mpq_class> next(n, 0);
        for (eid x = 0; x < n; ++x) {
            if (p[x] == 0) continue;
            for (eid s : G.members[cls]) next[G.mul(x, s)] += p[x] * w;
        }
        p = std::move(next);
    }
    return per_class;
}

mpq_class inner(const CharTable& t, const std::vector<Cyclotomic>& f, int theta) {
    Cyclotomic s;
    for (int c = 0; c < t.k; ++c) s += f[c] * t(theta, c).conj() * mpq_class(t.class_sizes[c]);
    return s.rational() / mpq_class(t.order);
}

}  // namespace

TEST_CASE("character formula against the element-level walk") {
    for (std::string s : {"SL(3,2)", "SL(2,5)", "SU(3,2)"}) {
        CAPTURE(s);
        const Built b = build(s);
        for (int cls = 1; cls < b.G.num_classes(); cls += 2) {
            const WalkReport w = exact_walk(b.G, b.sc, b.t, cls, 8);
            const auto brute = element_walk(b.G, cls, std::min<int>(5, static_cast<int>(w.class_mass.size()) - 1));
            for (std::size_t N = 0; N < brute.size(); ++N) CHECK(w.class_mass[N] == brute[N]);
            CHECK(w.convolution_agrees);
            CHECK(w.monotone);
        }
    }
}

TEST_CASE("total variation from class masses") {
    const Built b = build("SL(3,2)");
    const WalkReport w = exact_walk(b.G, b.sc, b.t, 2);
    const mpq_class order(b.t.order);
    for (std::size_t N = 0; N < w.tv.size(); ++N) {
        mpq_class tv = 0;
        for (int c = 0; c < b.G.num_classes(); ++c) {
            const mpq_class size(b.G.classes[c].size);
            mpq_class d = w.class_mass[N][c] - size / order;
            tv += abs(d);
        }
        CHECK(w.tv[N] == tv);
    }
    CHECK(w.tv_in_convention(0) == w.tv[0]);
    WalkReport half = exact_walk(b.G, b.sc, b.t, 2, 64, TvConvention::Half);
    CHECK(half.tv_in_convention(1) * 2 == w.tv[1]);
    CHECK(parse_tv_convention("half") == TvConvention::Half);
    CHECK_THROWS(parse_tv_convention("l2"));
}

TEST_CASE("mixing times and diameters") {
    // Computed from the exact walks, cross-checked against the element-level walk, then frozen.
    const Built b = build("SL(3,2)");
    const std::vector<std::pair<int, int>> expect = {{3, 3}, {3, 3}, {3, 3}, {3, 2}, {2, 2}};
    for (int c = 1; c < b.G.num_classes(); ++c) {
        const WalkReport w = exact_walk(b.G, b.sc, b.t, c);
        REQUIRE(w.mixing_time);
        CHECK(*w.mixing_time == expect[c - 1].first);
        CHECK(*w.diameter == expect[c - 1].second);
        CHECK(class_diameter(b.G, b.sc, c) == w.diameter);
    }
}

TEST_CASE("periodic and non-generating walks") {
    const Built b = build("Sp(4,2)");
    int periodic = 0, nongen = 0;
    for (int c = 1; c < b.G.num_classes(); ++c) {
        const WalkReport w = exact_walk(b.G, b.sc, b.t, c);
        CHECK(w.monotone);
        if (!w.generating) {
            ++nongen;
            CHECK(!w.mixing_time);
            CHECK(!class_diameter(b.G, b.sc, c));
        } else if (w.period == 2) {
            ++periodic;
            CHECK(w.mixing_time);  // measured against the coset
        }
    }
    CHECK(periodic == 5);  // odd permutations of S6
    CHECK(nongen == 5);
    // -I in SL(2,5) generates only the center.
    const Built s = build("SL(2,5)");
    CHECK_FALSE(exact_walk(s.G, s.sc, s.t, 1).generating);
}

TEST_CASE("tensor multiplicities against inner products") {
    for (std::string s : {"SL(2,5)", "SL(3,2)"}) {
        const Built b = build(s);
        for (int chi = 1; chi < b.t.k; ++chi) {
            const auto mult = tensor_multiplicities(b.t, chi);
            for (int psi = 0; psi < b.t.k; ++psi) {
                std::vector<Cyclotomic> prod(b.t.k);
                for (int c = 0; c < b.t.k; ++c) prod[c] = b.t(chi, c) * b.t(psi, c);
                for (int theta = 0; theta < b.t.k; ++theta) CHECK(mult[psi][theta] == inner(b.t, prod, theta));
            }
        }
    }
}

TEST_CASE("McKay graphs: connected exactly when faithful") {
    for (std::string s : {"SL(2,5)", "Sp(4,2)", "SU(3,2)", "O+(4,3)"}) {
        CAPTURE(s);
        const Built b = build(s);
        for (int chi = 1; chi < b.t.k; ++chi) {
            const McKayGraph g = mckay_graph(b.t, chi);
            CHECK(g.connected == g.faithful);
            CHECK(g.connected == b.t.is_faithful(chi));
            CHECK(g.degree_sanity);
            if (!g.faithful) continue;
            const McKayWalk w = mckay_walk(b.t, chi, 0, 20);
            CHECK(w.inequality);
            CHECK(w.sums_to_one);
            CHECK(w.stationary);
            CHECK(w.closed_form_agrees);
            CHECK(w.tv_decreasing);
            CHECK(mckay_report(b.t, g, w).count(Verdict::Fail) == 0);
        }
    }
    // Diameters for SL(3,2), frozen.
    const Built b = build("SL(3,2)");
    const std::vector<int> diam = {3, 3, 3, 2, 2};
    for (int chi = 1; chi < b.t.k; ++chi) CHECK(*mckay_graph(b.t, chi).diameter == diam[chi - 1]);
}

TEST_CASE("covering numbers") {
    const Built b = build("SL(3,2)");
    // Frozen from the character computation.
    const std::vector<int> expect = {6, 6, 3, 2, 2};
    for (int chi = 1; chi < b.t.k; ++chi) CHECK(covering_number(b.t, chi) == expect[chi - 1]);
    // The center acts by a sign on faithful characters of SL(2,5), so no power contains everything.
    const Built s = build("SL(2,5)");
    for (int chi = 1; chi < s.t.k; ++chi) CHECK_FALSE(covering_number(s.t, chi));
    CHECK(character_products_check(b.t, {1, 2}).count(Verdict::Fail) == 0);
}

TEST_CASE("Monte Carlo walk is reproducible") {
    const GroupSpec spec = parse_spec("SL(4,2)");
    Mat t = identity(4);
    t(0, 3) = 1;
    const WalkReport a = mc_walk(spec, t, 3, 2000, 11), b = mc_walk(spec, t, 3, 2000, 11);
    CHECK(a.walk_hits == b.walk_hits);
    CHECK(a.uniform_hits == b.uniform_hits);
    CHECK(a.tv_lower >= 0);
    CHECK(walk_report(a).overall() == Verdict::Observational);
}
