#include "classchar/products.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "classchar/element.hpp"
#include "raw_values.hpp"

namespace cc {

using namespace cc::raw;

namespace {

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// Classes reached from g by multiplying with a central element.
std::vector<std::vector<int>> central_orbits(const EnumeratedGroup& G) {
    const std::vector<int> zc = G.central_classes();
    std::vector<std::vector<int>> out(G.num_classes());
    for (int c = 0; c < G.num_classes(); ++c)
        for (int z : zc) out[c].push_back(G.class_of[G.mul(G.classes[z].rep, G.classes[c].rep)]);
    return out;
}

}  // namespace

nlohmann::json CoverReport::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["class"] = x;
    j["mod_center"] = mod_center;
    std::vector<int> cov;
    for (std::size_t g = 0; g < covered.size(); ++g)
        if (covered[g]) cov.push_back(static_cast<int>(g));
    j["covered"] = cov;
    j["missed"] = missed;
    std::vector<std::string> f;
    for (const mpq_class& v : frob) f.push_back(v.get_str());
    j["frobenius_sums"] = f;
    j["structure_constants_agree"] = sc_agrees;
    return j;
}

CoverReport class_square(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int x) {
    CoverReport r;
    r.group = t.group;
    r.x = x;
    const int k = t.k, e = t.exponent;
    const std::vector<long> ram = ramanujan(e);
    const long phi = ram[0];
    // chi(x)^2 as dense integer sums, one per character.
    std::vector<std::vector<mpz_class>> sq(k);
    for (int i = 0; i < k; ++i) {
        const IntTerms v = int_terms(t.values[i][x], e);
        sq[i] = mul_sparse(mul_sparse(unit(e), v), v);
    }
    r.frob.assign(k, 0);
    r.covered.assign(k, 0);
#pragma omp parallel for schedule(dynamic)
    for (int g = 0; g < k; ++g) {
        mpq_class s = 0;
        for (int i = 0; i < k; ++i) {
            const mpz_class tr = dot(sq[i], trace_kernel(conj_terms(int_terms(t.values[i][g], e), e), ram));
            if (tr != 0) s += mpq_class(tr, t.degrees[i] * phi);
        }
        s.canonicalize();
        r.frob[g] = s;
    }
    const mpz_class& cx = t.class_sizes[x];
    for (int g = 0; g < k; ++g) {
        r.covered[g] = r.frob[g] > 0;
        if (r.frob[g] < 0) r.sc_agrees = false;
        mpq_class count = r.frob[g] * cx * cx / t.order;
        if (count != mpq_class(mpz_class(static_cast<long>(sc(x, x, g))))) r.sc_agrees = false;
        if (!r.covered[g]) r.missed.push_back(g);
    }
    // A real class squares onto the identity.
    if (G.classes[x].is_real && !r.covered[0]) r.sc_agrees = false;
    return r;
}

nlohmann::json ThompsonResult::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["mod_center"] = mod_center;
    j["scan_order"] = scan_order;
    std::vector<int> w;
    for (std::size_t c = 0; c < witness.size(); ++c)
        if (witness[c]) w.push_back(static_cast<int>(c));
    j["witnesses"] = w;
    j["first_witness"] = first_witness ? nlohmann::json(*first_witness) : nlohmann::json(nullptr);
    j["discrepancy_free"] = discrepancy_free;
    j["note"] = note;
    return j;
}

ThompsonResult thompson_search(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t) {
    ThompsonResult res;
    res.group = t.group;
    const int k = t.k;
    const auto zorb = central_orbits(G);
    res.mod_center = G.central_classes().size() > 1;
    res.scan_order.resize(k);
    std::iota(res.scan_order.begin(), res.scan_order.end(), 0);
    std::stable_sort(res.scan_order.begin(), res.scan_order.end(),
                     [&](int a, int b) { return G.classes[a].support > G.classes[b].support; });
    res.witness.assign(k, 0);
    for (int x : res.scan_order) {
        const CoverReport cr = class_square(G, sc, t, x);
        if (!cr.sc_agrees) res.discrepancy_free = false;
        bool all = true;
        for (int g = 0; g < k && all; ++g) {
            bool hit = false;
            for (int zg : zorb[g])
                if (cr.covered[zg]) hit = true;
            all = hit;
        }
        res.witness[x] = all;
        if (all && !res.first_witness) res.first_witness = x;
    }
    if (!is_quasisimple(t)) res.note = "not quasisimple: class squares lie in the kernel of every linear character";
    else if (res.mod_center) res.note = "verdict for G/Z(G): every coset gZ meets x^G x^G";
    if (!res.first_witness) res.note += std::string(res.note.empty() ? "" : "; ") + "NoWitness";
    return res;
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.n + b.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) m(a.n + i, a.n + j) = b(i, j);
    return m;
}

Mat pad_identity(const Mat& g, int n) {
    if (g.n > n) throw Error("BadArgument", "matrix larger than the ambient dimension");
    return block_diag(g, identity(n - g.n));
}

bool FlipResult::all_conjugate() const {
    for (const FlipRow& r : rows)
        if (!r.conjugate) return false;
    return true;
}

namespace {

GroupSpec ambient_of(const GroupSpec& a, const GroupSpec& b) {
    if (a.family != b.family || a.q != b.q) throw Error("BadArgument", "flip needs two groups of the same family and field");
    const int eps = a.orthogonal() ? 1 : 0;
    if (a.orthogonal() && (a.eps != 1 || b.eps != 1)) throw Error("BadArgument", "flip needs orthogonal groups of type +");
    const GroupSpec amb = make_spec(a.family, a.n + b.n, a.q, eps);
    // The ambient form must be the orthogonal sum of the two standard forms.
    const Mat& ga = a.orthogonal() ? a.form.qmat : a.form.gram;
    const Mat& gb = b.orthogonal() ? b.form.qmat : b.form.gram;
    const Mat& gm = amb.orthogonal() ? amb.form.qmat : amb.form.gram;
    if (amb.form.kind != FormKind::None && block_diag(ga, gb) != gm)
        throw Error("BadArgument", "ambient standard form is not the block sum of the factors");
    return amb;
}

bool flip_hypothesis(const GroupSpec& a, const GroupSpec& b) {
    if (a.family == Family::Omega && a.field->p() != 2) return (a.n / 2) % 2 == 0 && (b.n / 2) % 2 == 0;
    return true;
}

EnumeratedGroup get(const GroupSpec& s, const std::string& cache_dir) { return load_or_enumerate(s, cache_dir, !cache_dir.empty()); }

eid must_find(const EnumeratedGroup& G, const Mat& m) {
    const long long id = G.find(m);
    if (id < 0) throw Error("Inconsistent", "block matrix is not in the ambient group");
    return static_cast<eid>(id);
}

}  // namespace

FlipResult flip_conjugacy_check(const GroupSpec& a, const GroupSpec& b, const std::string& cache_dir) {
    FlipResult f;
    const GroupSpec amb = ambient_of(a, b);
    f.a = a.name();
    f.b = b.name();
    f.ambient = amb.name();
    f.hypothesis = flip_hypothesis(a, b);
    const EnumeratedGroup A = get(a, cache_dir), B = get(b, cache_dir), M = get(amb, cache_dir);
    for (const ClassData& cx : A.classes)
        for (const ClassData& cy : B.classes) {
            const Mat x = A.element(cx.rep), y = B.element(cy.rep);
            const eid u = must_find(M, block_diag(x, y)), v = must_find(M, block_diag(y, x));
            f.rows.push_back({cx.id, cy.id, M.conjugate(u, v)});
        }
    return f;
}

BoundReport flip_report(const FlipResult& f) {
    BoundReport rep;
    rep.claim = "flip";
    rep.group = f.ambient;
    long conj = 0;
    std::vector<std::string> bad;
    for (const FlipRow& r : f.rows) {
        if (r.conjugate) ++conj;
        else bad.push_back("(" + std::to_string(r.x) + "," + std::to_string(r.y) + ")");
    }
    BoundRow row;
    row.subject = f.a + " x " + f.b + " in " + f.ambient;
    row.measured = std::to_string(conj) + "/" + std::to_string(f.rows.size()) + " pairs conjugate";
    row.bound = "diag(x,y) ~ diag(y,x)";
    if (!f.hypothesis) row.bound += " [hypothesis violated: odd q, odd half-dimension]";
    if (!bad.empty()) {
        row.measured += "; not conjugate:";
        for (std::size_t i = 0; i < bad.size() && i < 12; ++i) row.measured += " " + bad[i];
    }
    row.verdict = f.all_conjugate() ? Verdict::Pass : (f.hypothesis ? Verdict::Fail : Verdict::Advisory);
    rep.rows.push_back(row);
    rep.extra["hypothesis"] = f.hypothesis;
    return rep;
}

CoverReport real_cover_check(const EnumeratedGroup& ambient, const StructureConstants& sc, const CharTable& t, const Mat& g,
                             std::vector<int>* real_witnesses) {
    const int target = ambient.class_of[must_find(ambient, pad_identity(g, ambient.n))];
    CoverReport r;
    r.group = t.group;
    r.x = target;  // here: the class being covered
    r.covered.assign(t.k, 0);
    for (const ClassData& z : ambient.classes) {
        if (!z.is_real) continue;
        if (sc(z.id, z.id, target) > 0) {
            r.covered[z.id] = 1;
            if (real_witnesses) real_witnesses->push_back(z.id);
        }
    }
    return r;
}

BoundReport union_check(const GroupSpec& a, const GroupSpec& b, const std::string& cache_dir) {
    BoundReport rep;
    rep.claim = "union";
    const GroupSpec amb = ambient_of(a, b);
    rep.group = amb.name();
    const bool hyp = flip_hypothesis(a, b);
    const EnumeratedGroup A = get(a, cache_dir), B = get(b, cache_dir), M = get(amb, cache_dir);
    const StructureConstants sa = structure_constants(A), sb = structure_constants(B), sm = structure_constants(M);
    long checked = 0, failed = 0;
    for (const ClassData& cx : A.classes) {
        if (!cx.is_real) continue;
        for (const ClassData& cy : B.classes) {
            if (!cy.is_real) continue;
            const Mat x = A.element(cx.rep), y = B.element(cy.rep);
            const int z = M.class_of[must_find(M, block_diag(x, y))];
            auto check = [&](const EnumeratedGroup& H, const StructureConstants& sh, int hx) {
                for (const ClassData& g : H.classes) {
                    if (sh(hx, hx, g.id) == 0) continue;
                    const int tgt = M.class_of[must_find(M, pad_identity(H.element(g.rep), M.n))];
                    ++checked;
                    if (sm(z, z, tgt) == 0) ++failed;
                }
            };
            check(A, sa, cx.id);
            check(B, sb, cy.id);
        }
    }
    BoundRow row;
    row.subject = a.name() + " x " + b.name() + " real pairs";
    row.measured = std::to_string(checked - failed) + "/" + std::to_string(checked) + " covered classes carried over";
    row.bound = "covered by x or y => covered by diag(x,y)";
    row.verdict = failed == 0 ? Verdict::Pass : (hyp ? Verdict::Fail : Verdict::Advisory);
    rep.rows.push_back(row);
    return rep;
}

BoundReport commutator_report(const EnumeratedGroup& G, const CharTable& t, std::size_t scan_limit) {
    BoundReport rep;
    rep.claim = "commutators";
    rep.group = t.group;
    const int k = t.k, e = t.exponent;
    const std::vector<long> ram = ramanujan(e);
    const long phi = ram[0];
    std::vector<mpq_class> count(k);
    for (int g = 0; g < k; ++g) {
        mpq_class s = 0;
        for (int i = 0; i < k; ++i) {
            // Tr(chi(g)) / phi(e) is the rational part; the full sum is rational.
            mpz_class tr = 0;
            for (const auto& [kk, c] : int_terms(t.values[i][g], e)) tr += mpz_class(c) * ram[kk];
            s += mpq_class(tr, t.degrees[i] * phi);
        }
        s *= t.order;
        s.canonicalize();
        count[g] = s;
    }
    std::vector<long> scan;
    const bool do_scan = G.order() <= scan_limit;
    if (do_scan) {
        scan.assign(k, 0);
        for (eid x = 0; x < G.order(); ++x)
            for (eid y = 0; y < G.order(); ++y) ++scan[G.class_of[G.mul(G.mul(x, y), G.mul(G.inv[x], G.inv[y]))]];
    }
    for (int g = 0; g < k; ++g) {
        const mpq_class per_elem = count[g];
        BoundRow row;
        row.subject = "class " + std::to_string(g);
        row.measured = "#{(x,y): [x,y] = g} = " + per_elem.get_str();
        bool agree = true;
        if (do_scan) {
            const mpq_class sc_elem = mpq_class(scan[g]) / mpq_class(t.class_sizes[g]);
            row.measured += " (scan " + sc_elem.get_str() + ")";
            agree = sc_elem == per_elem;
        }
        row.bound = "> 0 when g is a commutator";
        row.verdict = !agree ? Verdict::Fail : per_elem > 0 ? Verdict::Pass : Verdict::Observational;
        rep.rows.push_back(row);
    }
    return rep;
}

BoundReport power_word_check(const EnumeratedGroup& G, const StructureConstants& sc, long N) {
    BoundReport rep;
    rep.claim = "powerword";
    rep.group = G.spec.name();
    const int k = G.num_classes();
    std::vector<char> img(k, 0);
    for (int c = 0; c < k; ++c) img[G.power_class(c, N)] = 1;
    std::vector<char> hit(k, 0);
    for (int i = 0; i < k; ++i)
        if (img[i])
            for (int j = 0; j < k; ++j)
                if (img[j])
                    for (int l = 0; l < k; ++l)
                        if (sc(i, j, l) > 0) hit[l] = 1;
    std::vector<int> powers, missed;
    for (int c = 0; c < k; ++c) {
        if (img[c]) powers.push_back(c);
        if (!hit[c]) missed.push_back(c);
    }
    BoundRow row;
    row.subject = "N = " + std::to_string(N);
    row.measured = missed.empty() ? "surjective" : "misses classes " + join(missed);
    row.bound = "x^N y^N covers G";
    row.verdict = Verdict::Observational;
    rep.rows.push_back(row);
    rep.extra["N"] = N;
    rep.extra["power_classes"] = powers;
    rep.extra["missed"] = missed;
    rep.extra["surjective"] = missed.empty();
    return rep;
}

BoundReport singer_square_scan(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t) {
    BoundReport rep;
    rep.claim = "singer";
    rep.group = t.group;
    if (G.spec.family != Family::SL && G.spec.family != Family::SU)
        throw Error("BadArgument", "singer scan applies to SL and SU");
    const Field& F = *G.field;
    for (const ClassData& c : G.classes) {
        const Mat x = G.element(c.rep);
        const std::vector<Factor> fac = factor_squarefree_irreducible(F, char_poly(F, x));
        bool squarefree = true;
        for (const Factor& f : fac)
            if (f.mult > 1) squarefree = false;
        if (!squarefree) continue;
        const bool singer = fac.size() == 1;
        const CoverReport cr = class_square(G, sc, t, c.id);
        int b_emp = -1;
        for (int g : cr.missed) b_emp = std::max(b_emp, G.classes[g].support);
        BoundRow row;
        row.subject = "class " + std::to_string(c.id) + (singer ? " (Singer)" : " (regular semisimple)") + " order " +
                      std::to_string(c.order_of_rep);
        row.measured = "covers " + std::to_string(t.k - static_cast<int>(cr.missed.size())) + "/" + std::to_string(t.k) +
                       (cr.missed.empty() ? "" : "; missed " + join(cr.missed));
        row.bound = b_emp < 0 ? "every class covered" : "largest missed support B = " + std::to_string(b_emp);
        row.margin = b_emp;
        row.verdict = cr.sc_agrees ? Verdict::Observational : Verdict::Fail;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace cc
