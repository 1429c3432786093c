#include "classchar/element.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "classchar/grp.hpp"

namespace cc {

SupportProfile support(const Field& F, const Mat& g) {
    SupportProfile sp;
    sp.n = g.n;
    int best = 0;
    for (const Factor& fac : factor_squarefree_irreducible(F, char_poly(F, g))) {
        int kd = g.n - rank(F, eval_poly_at_matrix(F, fac.poly, g));
        EigenBlock b{fac.poly, fac.mult, kd / deg(fac.poly)};
        best = std::max(best, b.geom_mult);
        sp.blocks.push_back(std::move(b));
    }
    sp.supp = g.n - best;
    return sp;
}

long matrix_order(const Field& F, const Mat& g, long cap) {
    const Mat id = identity(g.n);
    Mat x = g;
    long k = 1;
    while (x != id) {
        x = mat_mul(F, x, g);
        if (++k > cap) throw Error("CapExceeded", "element order above cap");
    }
    return k;
}

namespace {

long inv_mod(long a, long m) {
    if (m == 1) return 0;
    long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        long qq = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (r != 1) throw Error("Inconsistent", "non-invertible residue");
    return ((t % m) + m) % m;
}

// Kernel dimensions of (u - 1)^j restricted to ker w, j = 0..n.
std::vector<int> kernel_ladder(const Field& F, const Mat& u, const Mat* w) {
    const int n = u.n;
    Mat nil = mat_sub(F, u, identity(n));
    std::vector<int> dims;
    Mat power = identity(n);
    for (int j = 0; j <= n; ++j) {
        std::vector<fe> stacked = power.a;
        int rows = n;
        if (w) {
            stacked.insert(stacked.end(), w->a.begin(), w->a.end());
            rows = 2 * n;
        }
        dims.push_back(n - rank_and_kernel_rect(F, stacked, rows, n).rank);
        power = mat_mul(F, power, nil);
    }
    return dims;
}

Partition ladder_to_partition(const std::vector<int>& k, int scale) {
    const int n = static_cast<int>(k.size()) - 1;
    Partition p(n + 2, 0);
    // blocks of size >= j: b_j = k_j - k_{j-1}
    std::vector<int> b(n + 2, 0);
    for (int j = 1; j <= n; ++j) b[j] = (k[j] - k[j - 1]) / scale;
    for (int i = 1; i <= n; ++i) p[i] = b[i] - b[i + 1];
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

}  // namespace

Partition unipotent_partition(const Field& F, const Mat& u) { return ladder_to_partition(kernel_ladder(F, u, nullptr), 1); }

JordanDecomposition jordan_decompose(const Field& F, const Mat& g, long order) {
    if (order <= 0) order = matrix_order(F, g);
    const long p = F.p();
    long pk = 1, m = order;
    while (m % p == 0) {
        m /= p;
        pk *= p;
    }
    // e_ss = 1 mod m, 0 mod p^k; e_u = 0 mod m, 1 mod p^k.
    const long e_ss = static_cast<long>((static_cast<__int128>(pk) * inv_mod(pk, m)) % order);
    const long e_u = static_cast<long>((static_cast<__int128>(m) * inv_mod(m, pk)) % order);
    JordanDecomposition jd;
    jd.semisimple = mat_pow(F, g, e_ss);
    jd.unipotent = mat_pow(F, g, e_u);
    jd.type.unipotent = unipotent_partition(F, jd.unipotent);
    for (const Factor& fac : factor_squarefree_irreducible(F, char_poly(F, g))) {
        Mat w = eval_poly_at_matrix(F, fac.poly, jd.semisimple);
        std::vector<int> k = kernel_ladder(F, jd.unipotent, &w);
        jd.type.per_factor.push_back({fac.poly, ladder_to_partition(k, deg(fac.poly))});
    }
    return jd;
}

Partition partition_from_blocks(const std::vector<int>& sizes) {
    int mx = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    Partition p(mx + 1, 0);
    for (int s : sizes) p[s] += 1;
    return p;
}

std::vector<int> blocks_descending(const Partition& p) {
    std::vector<int> out;
    for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i)
        for (int c = 0; c < p[i]; ++c) out.push_back(i);
    return out;
}

int partition_size(const Partition& p) {
    int s = 0;
    for (std::size_t i = 1; i < p.size(); ++i) s += static_cast<int>(i) * p[i];
    return s;
}

std::string partition_to_string(const Partition& p) {
    std::ostringstream os;
    bool first = true;
    for (int b : blocks_descending(p)) {
        if (!first) os << ',';
        os << b;
        first = false;
    }
    return "(" + os.str() + ")";
}

long centralizer_dim2(const Partition& p, CentFamily fam) {
    const long L = static_cast<long>(p.size());
    long quad = 0;  // sum i n_i^2 + 2 sum_{i<j} i n_i n_j
    for (long i = 1; i < L; ++i) {
        quad += i * p[i] * p[i];
        for (long j = i + 1; j < L; ++j) quad += 2 * i * p[i] * p[j];
    }
    long odd = 0;
    for (long i = 1; i < L; i += 2) odd += p[i];
    switch (fam) {
        case CentFamily::GL: return 2 * quad;  // sum min(i,j) n_i n_j equals quad
        case CentFamily::Sp: return quad + odd;
        case CentFamily::GO: return quad - odd;
    }
    return 0;
}

long gl_centralizer_dim(const JordanType& jt) {
    long d = 0;
    for (const auto& [f, part] : jt.per_factor) d += deg(f) * centralizer_dim2(part, CentFamily::GL) / 2;
    return d;
}

int commutant_dim(const Field& F, const Mat& g) {
    const int n = g.n;
    const int N = n * n;
    std::vector<fe> m(static_cast<std::size_t>(N) * N, 0);
    // (gX - Xg)_{ij} = sum_k g_ik X_kj - X_ik g_kj
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fe* row = &m[static_cast<std::size_t>(i * n + j) * N];
            for (int k = 0; k < n; ++k) {
                row[k * n + j] = F.add(row[k * n + j], g(i, k));
                row[i * n + k] = F.sub(row[i * n + k], g(k, j));
            }
        }
    return N - rref(F, m, N, N);
}

std::pair<long, long> two_ways(const Partition& p) {
    long lhs = centralizer_dim2(p, CentFamily::GL) / 2;
    long rhs = 0;
    long k = 1;
    for (int b : blocks_descending(p)) rhs += (2 * k++ - 1) * b;
    return {lhs, rhs};
}

// ---------------------------------------------------------------- sandwich

namespace {

struct Window {
    std::string name;
    mpq_class lo, hi;  // exponents of s/n
    bool applies = true;
};

std::string frac(const mpq_class& x) { return x.get_str(); }

BoundRow sandwich_row(const std::string& subject, const std::string& label, const mpz_class& order, const mpz_class& csize, int s,
                      int n, const mpq_class& lo_coef, const mpq_class& hi_coef, bool applies) {
    BoundRow r;
    r.subject = subject + " [" + label + "]";
    mpq_class lo = lo_coef * s / n;
    mpq_class hi = hi_coef * s / n;
    lo.canonicalize();
    hi.canonicalize();
    const bool ok_lo = cmp_products({{order, lo}}, {{csize, 1}}) <= 0;
    const bool ok_hi = cmp_products({{csize, 1}}, {{order, hi}}) <= 0;
    std::ostringstream ms;
    ms << "|g^G|=" << csize.get_str() << " s=" << s;
    r.measured = ms.str();
    r.bound = "|G|^(" + frac(lo) + ") <= |g^G| <= |G|^(" + frac(hi) + ")";
    const double lg = log_mpz(order);
    const double lc = log_mpz(csize);
    r.margin = lg > 0 ? std::min(lc - lo.get_d() * lg, hi.get_d() * lg - lc) / lg : 0.0;
    if (applies) r.verdict = ok_lo && ok_hi ? Verdict::Pass : Verdict::Fail;
    else {
        r.verdict = Verdict::Advisory;
        r.measured += ok_lo && ok_hi ? " (holds)" : " (violated)";
    }
    return r;
}

}  // namespace

std::vector<BoundRow> check_sandwich(const EnumeratedGroup& G, const ClassData& cls) {
    const GroupSpec& sp = G.spec;
    const int n = sp.n, s = cls.support;
    const mpz_class order = static_cast<unsigned long>(G.order());
    const bool odd_q = sp.field->p() != 2;
    const std::string subject = sp.name() + " class " + std::to_string(cls.id);
    std::vector<BoundRow> rows;

    bool cor = false;
    switch (sp.family) {
        case Family::SL: cor = n >= 2; break;
        case Family::SU: cor = n >= 3 && !(n == 3 && sp.q == 2); break;
        case Family::Sp: cor = n % 2 == 0 && n >= 4; break;
        case Family::Omega: cor = n >= 7; break;
        default: cor = false;
    }
    rows.push_back(sandwich_row(subject, "supp-size", order, cls.size, s, n, mpq_class(1, 3), mpq_class(5), cor));

    switch (sp.family) {
        case Family::SL:
            rows.push_back(sandwich_row(subject, "gl-s(c)", order, cls.size, s, n, mpq_class(1, 3), mpq_class(3), n >= 2));
            rows.push_back(sandwich_row(subject, "gl-s(c) sharp", order, cls.size, s, n, mpq_class(1, 2), mpq_class(5, 2),
                                        n >= 2 && !(n == 2 && (sp.q == 2 || sp.q == 3))));
            break;
        case Family::SU:
            rows.push_back(sandwich_row(subject, "gu-s", order, cls.size, s, n, mpq_class(1, 2), mpq_class(3),
                                        n >= 3 && !(n == 3 && sp.q == 2)));
            break;
        case Family::Sp:
            if (odd_q)
                rows.push_back(sandwich_row(subject, "bcd-odd(a)", order, cls.size, s, n, mpq_class(1, 2), mpq_class(3), n >= 4));
            else
                rows.push_back(sandwich_row(subject, "bcd-even(a)", order, cls.size, s, n, mpq_class(1, 3), mpq_class(3), n >= 4));
            break;
        case Family::SO:
        case Family::Omega:
            if (odd_q)
                rows.push_back(sandwich_row(subject, "bcd-odd(b)", order, cls.size, s, n, mpq_class(1, 3), mpq_class(3), n >= 7));
            else
                rows.push_back(sandwich_row(subject, "bcd-even(b)", order, cls.size, s, n, mpq_class(1, 3), mpq_class(5),
                                            n >= 8 && sp.family == Family::Omega));
            break;
        default: break;
    }
    return rows;
}

BoundReport sandwich_report(const EnumeratedGroup& G) {
    BoundReport rep;
    rep.claim = "sandwich";
    rep.group = G.spec.name();
    for (const ClassData& c : G.classes)
        for (BoundRow& r : check_sandwich(G, c)) rep.rows.push_back(std::move(r));
    return rep;
}

// ---------------------------------------------------------------- unipotent windows

namespace {

bool is_p_power(long x, long p) {
    while (x % p == 0) x /= p;
    return x == 1;
}

BoundRow window_row(const std::string& subject, const std::string& label, const mpz_class& cent, const std::vector<PowTerm>& lo,
                    const std::vector<PowTerm>& hi, const std::string& lo_s, const std::string& hi_s, bool strict_hi = false) {
    BoundRow r;
    r.subject = subject + " [" + label + "]";
    r.measured = "|C|=" + cent.get_str();
    r.bound = lo_s + " <= |C| " + (strict_hi ? "< " : "<= ") + hi_s;
    int a = cmp_products(lo, {{cent, 1}});
    int b = cmp_products({{cent, 1}}, hi);
    bool ok = a <= 0 && (strict_hi ? b < 0 : b <= 0);
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return r;
}

}  // namespace

BoundReport unipotent_window_report(const EnumeratedGroup& G, const EnumeratedGroup* go) {
    BoundReport rep;
    rep.claim = "unip-window";
    rep.group = G.spec.name();
    const GroupSpec& sp = G.spec;
    const Field& F = *G.field;
    const long p = F.p();
    const mpz_class q = sp.q;
    const int n = sp.n;
    const bool symp = sp.family == Family::Sp;
    if (!symp && !sp.orthogonal()) throw Error("UnsupportedFamily", "unipotent windows need Sp or an orthogonal group");
    if (!symp && !go) throw Error("UnsupportedFamily", "orthogonal windows need the enumerated GO");
    const bool odd_q = p != 2;
    const mpq_class half_n(n, 2);
    for (const ClassData& c : G.classes) {
        if (!is_p_power(c.order_of_rep, p)) continue;
        Mat g = G.element(c.rep);
        Partition part = unipotent_partition(F, g);
        const int s = c.support;
        mpz_class cent;
        if (symp) cent = c.centralizer_order;
        else {
            long id = go->find(g);
            if (id < 0) throw Error("Inconsistent", "element missing from GO");
            cent = go->classes[go->class_of[id]].centralizer_order;
        }
        const std::string subject = sp.name() + " class " + std::to_string(c.id) + " " + partition_to_string(part);
        const long ns = n - s;
        // (1 - 1/q)^(n/2) = (q - 1)^(n/2) q^(-n/2)
        auto lower = [&](const mpq_class& qexp) {
            return std::vector<PowTerm>{{q - 1, half_n}, {q, qexp - half_n}};
        };
        if (odd_q && symp) {
            rep.rows.push_back(window_row(subject, "unip-odd(b) Sp", cent, lower(mpq_class(ns * ns, 2)),
                                          {{q, mpq_class(n * ns + n, 2)}}, "(1-1/q)^(n/2) q^((n-s)^2/2)", "q^((n(n-s)+n)/2)"));
            long D2 = centralizer_dim2(part, CentFamily::Sp);
            int even_parts = 0;
            for (std::size_t i = 2; i < part.size(); i += 2)
                if (part[i] > 0) ++even_parts;
            rep.rows.push_back(window_row(subject, "sum10a degree", cent, lower(mpq_class(D2, 2)),
                                          {{q, mpq_class(D2, 2) + even_parts}}, "(1-1/q)^(n/2) q^D", "q^(D + #even parts)", true));
            // Part (a) bounds on D.
            BoundRow r;
            r.subject = subject + " [unip-odd(a) Sp]";
            long even_weight = 0;
            for (std::size_t i = 2; i < part.size(); i += 2) even_weight += static_cast<long>(i) * part[i];
            r.measured = "2D=" + std::to_string(D2);
            r.bound = "(n-s)^2 <= 2D <= n(n-s)+n-sum_{2|i} i n_i";
            r.verdict = (ns * ns <= D2 && D2 <= n * ns + n - even_weight) ? Verdict::Pass : Verdict::Fail;
            rep.rows.push_back(r);
        } else if (odd_q) {
            rep.rows.push_back(window_row(subject, "unip-odd(b) GO", cent, lower(mpq_class(ns * ns - n, 2)),
                                          {{q, mpq_class(3 * n * ns + n, 6)}}, "(1-1/q)^(n/2) q^(((n-s)^2-n)/2)",
                                          "q^((n(n-s)+n/3)/2)"));
            long D2 = centralizer_dim2(part, CentFamily::GO);
            long odd_sum = 0;
            for (std::size_t i = 1; i < part.size(); i += 2) odd_sum += part[i];
            const long n1 = part.size() > 1 ? part[1] : 0;
            BoundRow r;
            r.subject = subject + " [unip-odd(a) GO]";
            r.measured = "2D=" + std::to_string(D2);
            r.bound = "(n-s)^2-n_1 <= 2D <= n(n-s)-sum_{i odd} n_i";
            r.verdict = (ns * ns - n1 <= D2 && D2 <= n * ns - odd_sum) ? Verdict::Pass : Verdict::Fail;
            rep.rows.push_back(r);
        } else if (symp) {
            rep.rows.push_back(window_row(subject, "unip-even(b) Sp", cent, lower(mpq_class(ns * ns, 2)),
                                          {{q, mpq_class(n * ns, 2) + mpq_class(13 * n, 10)}}, "(1-1/q)^(n/2) q^((n-s)^2/2)",
                                          "q^(n(n-s)/2+1.3n)"));
        } else {
            rep.rows.push_back(window_row(subject, "unip-even(b) GO", cent, lower(mpq_class(ns * ns, 2) - n),
                                          {{q, mpq_class(n * ns, 2) + mpq_class(8 * n, 10)}}, "(1-1/q)^(n/2) q^((n-s)^2/2-n)",
                                          "q^(n(n-s)/2+0.8n)"));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- GL-context checks

BoundReport gl_s_dimension_report(const EnumeratedGroup& G) {
    BoundReport rep;
    rep.claim = "gl-s(a)";
    rep.group = G.spec.name();
    const Field& F = *G.field;
    const int n = G.n;
    const bool gl_cent = G.spec.family == Family::GL || (G.spec.family == Family::SL && G.spec.q == 2);
    for (const ClassData& c : G.classes) {
        Mat g = G.element(c.rep);
        const int d = commutant_dim(F, g);
        const int s = c.support;
        JordanDecomposition jd = jordan_decompose(F, g, c.order_of_rep);
        const long dj = gl_centralizer_dim(jd.type);
        BoundRow r;
        r.subject = G.spec.name() + " class " + std::to_string(c.id);
        r.measured = "dim C_End=" + std::to_string(d) + " jordan=" + std::to_string(dj) + " s=" + std::to_string(s);
        r.bound = "(n-s)^2 <= dim <= n(n-s)";
        bool ok = (n - s) * (n - s) <= d && d <= n * (n - s) && d == dj;
        if (gl_cent) ok = ok && cmp_products({{c.centralizer_order, 1}}, {{mpz_class(G.spec.q), n * (n - s)}}) <= 0;
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
        r.margin = static_cast<double>(std::min(d - (n - s) * (n - s), n * (n - s) - d));
        rep.rows.push_back(r);
    }
    return rep;
}

BoundReport matrix_cent_report(const EnumeratedGroup& G, const std::vector<int>& nu_percent) {
    if (G.spec.family != Family::SL) throw Error("UnsupportedFamily", "matrix-cent runs over SL");
    BoundReport rep;
    rep.claim = "matrix-cent";
    rep.group = G.spec.name();
    const Field& F = *G.field;
    const long n = G.n;
    const mpz_class order = static_cast<unsigned long>(G.order());
    long vacuous = 0;
    for (const ClassData& c : G.classes) {
        const long d = commutant_dim(F, G.element(c.rep));
        for (int k : nu_percent) {
            // alpha = 1 - nu^2/4 with nu = k/100
            if (40000 * d < (40000 - static_cast<long>(k) * k) * n * n) {
                ++vacuous;
                continue;
            }
            BoundRow r;
            r.subject = G.spec.name() + " class " + std::to_string(c.id) + " nu=" + std::to_string(k) + "/100";
            r.measured = "|C_SL|=" + c.centralizer_order.get_str() + " dim C_End=" + std::to_string(d);
            r.bound = "|C_SL| > |SL|^(1-nu)";
            r.verdict = cmp_products({{c.centralizer_order, 1}}, {{order, mpq_class(100 - k, 100)}}) > 0 ? Verdict::Pass
                                                                                                       : Verdict::Fail;
            rep.rows.push_back(r);
        }
    }
    rep.extra["hypothesis_not_met"] = vacuous;
    return rep;
}

BoundReport alpha_eps_report(const EnumeratedGroup& G, const std::vector<mpq_class>& eps) {
    const bool gl_cent = G.spec.family == Family::GL || (G.spec.family == Family::SL && G.spec.q == 2);
    if (!gl_cent) throw Error("UnsupportedFamily", "alpha-eps needs GL(n,q) or SL(n,2)");
    BoundReport rep;
    rep.claim = "alpha-eps";
    rep.group = G.spec.name();
    const Field& F = *G.field;
    const int n = G.n;
    const int q = F.q();
    long vacuous = 0;
    for (const mpq_class& e : eps) {
        mpz_class dz;
        mpz_cdiv_q(dz.get_mpz_t(), e.get_den_mpz_t(), e.get_num_mpz_t());
        const int d = static_cast<int>(dz.get_si());
        // All monic polynomials of degree 1..d-1.
        std::vector<Poly> polys;
        for (int dg = 1; dg < d; ++dg) {
            long cnt = 1;
            for (int i = 0; i < dg; ++i) cnt *= q;
            for (long code = 0; code < cnt; ++code) {
                Poly P(dg + 1, 0);
                long c = code;
                for (int i = 0; i < dg; ++i) {
                    P[i] = static_cast<fe>(c % q);
                    c /= q;
                }
                P[dg] = 1;
                polys.push_back(P);
            }
        }
        for (const ClassData& c : G.classes) {
            Mat g = G.element(c.rep);
            bool hyp = true;
            for (const Poly& P : polys) {
                int kd = n - rank(F, eval_poly_at_matrix(F, P, g));
                if (mpq_class(kd) > e * n) {
                    hyp = false;
                    break;
                }
            }
            if (!hyp) {
                ++vacuous;
                continue;
            }
            BoundRow r;
            r.subject = G.spec.name() + " class " + std::to_string(c.id) + " eps=" + e.get_str();
            r.measured = "|C_GL|=" + c.centralizer_order.get_str();
            r.bound = "|C_GL| <= q^(n^2 eps)";
            r.verdict = cmp_products({{c.centralizer_order, 1}}, {{mpz_class(q), e * n * n}}) <= 0 ? Verdict::Pass : Verdict::Fail;
            rep.rows.push_back(r);
        }
    }
    rep.extra["hypothesis_not_met"] = vacuous;
    return rep;
}

BoundReport two_ways_report(int count, int max_n, unsigned long seed) {
    BoundReport rep;
    rep.claim = "2ways";
    rep.group = "partitions";
    std::mt19937_64 rng(seed);
    int failures = 0;
    for (int t = 0; t < count; ++t) {
        std::uniform_int_distribution<int> nd(1, max_n);
        int n = nd(rng);
        std::vector<int> sizes;
        while (n > 0) {
            std::uniform_int_distribution<int> bd(1, n);
            int b = bd(rng);
            sizes.push_back(b);
            n -= b;
        }
        Partition p = partition_from_blocks(sizes);
        auto [lhs, rhs] = two_ways(p);
        if (lhs != rhs) {
            ++failures;
            BoundRow r;
            r.subject = partition_to_string(p);
            r.measured = std::to_string(lhs) + " vs " + std::to_string(rhs);
            r.bound = "equality";
            r.verdict = Verdict::Fail;
            rep.rows.push_back(r);
        }
    }
    BoundRow r;
    r.subject = std::to_string(count) + " random partitions of n <= " + std::to_string(max_n);
    r.measured = std::to_string(count - failures) + " equal";
    r.bound = "sum i n_i^2 + 2 sum_{i<j} i n_i n_j = sum (2k-1) m_k";
    r.verdict = failures ? Verdict::Fail : Verdict::Pass;
    rep.rows.push_back(r);
    return rep;
}

}  // namespace cc
