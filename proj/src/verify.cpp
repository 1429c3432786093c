#include "classchar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "classchar/element.hpp"

namespace cc {

BoundConstants default_constants() {
    BoundConstants k;
    const mpz_class two21 = ipow(2, 21), ten18 = ipow(10, 18), ten12 = ipow(10, 12);
    k.sigma = mpq_class(mpz_class(1), mpz_class(6507 * two21 * ten18));
    k.gamma_linear = mpq_class(mpz_class(1), mpz_class(19521 * two21 * ten18));
    k.gamma = mpq_class(mpz_class(1), mpz_class(ipow(2, 13) * ten12));
    k.C = mpq_class(ipow(2, 14) * ten12);
    k.c = k.sigma / 5;
    k.formulas = "sigma = 1/(6507*2^21*10^18); gamma_linear = 1/(19521*2^21*10^18); gamma = 1/(2^13*10^12); "
                   "C = 2^14*10^12; c = sigma/5";
    return k;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double to_double(const mpq_class& x) { return x.get_d(); }

Cyclotomic pow_reduced(const Cyclotomic& x, unsigned m) {
    Cyclotomic r(1), b = x.reduced();
    while (m) {
        if (m & 1) r = (r * b).reduced();
        m >>= 1;
        if (m) b = (b * b).reduced();
    }
    return r;
}

bool is_linear(const CharTable& t, int i) { return t.degrees[i] == 1; }

}  // namespace

RatioData ratio_data(const CharTable& t) {
    RatioData rd;
    const int k = t.k;
    rd.abs2.assign(k, std::vector<Cyclotomic>(k));
    rd.zero.assign(k, std::vector<char>(k, 0));
    rd.log_abs.assign(k, std::vector<double>(k, 0.0));
    rd.log_deg.resize(k);
    for (int i = 0; i < k; ++i) rd.log_deg[i] = log_mpz(t.degrees[i]);
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < k; ++c) {
            Cyclotomic a2 = t.values[i][c].abs2();
            const bool z = a2.is_zero();
            rd.zero[i][c] = z;
            rd.log_abs[i][c] = z ? -INFINITY : 0.5 * static_cast<double>(log(a2.real_part()));
            rd.abs2[i][c] = std::move(a2);
        }
    return rd;
}

BoundReport exponent_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd, const BoundConstants& kc) {
    BoundReport rep;
    rep.claim = "thmA";
    rep.group = G.spec.name();
    const bool qs = is_quasisimple(t);
    const double logG = log_mpz(t.order);
    const double c = to_double(kc.c);
    double gmin = INFINITY;
    int amin_chi = -1, amin_cls = -1;
    int agree = 0, checked = 0;
    for (int cls = 0; cls < t.k; ++cls) {
        if (t.class_sizes[cls] == 1) continue;
        const double logC = log_mpz(t.class_sizes[cls]);
        double best = INFINITY;
        int arg = -1;
        for (int i = 0; i < t.k; ++i) {
            if (is_linear(t, i) || rd.zero[i][cls]) continue;
            const double x = 1.0 - rd.log_abs[i][cls] / rd.log_deg[i];
            const double e = x * logG / logC;
            if (e < best) {
                best = e;
                arg = i;
            }
        }
        BoundRow row;
        row.subject = "class " + std::to_string(cls);
        if (arg < 0) {
            row.measured = "no nonlinear character is nonzero here";
            row.verdict = Verdict::Vacuous;
            rep.rows.push_back(row);
            continue;
        }
        // Exact re-decision of the arg-min pair.
        const mpz_class& d = t.degrees[arg];
        const Cyclotomic& a2 = rd.abs2[arg][cls];
        const bool strict = (Cyclotomic(mpq_class(d * d)) - a2).real_sign() > 0;
        if (!strict) best = 0.0;  // |chi(g)| = chi(1) exactly
        const double x = best * logC / logG;
        bool pow_ok = false;
        unsigned m = 0;
        if (strict && x > 0) {
            m = static_cast<unsigned>(std::floor(1.0 / x)) + 1;
            if (m <= 400) {
                Cyclotomic lhs = Cyclotomic(mpq_class(ipow(d, 2 * m - 2))) - pow_reduced(a2, m);
                pow_ok = lhs.real_sign() >= 0;
            }
        }
        const bool float_pass = best > c;
        const bool exact_pass = strict && pow_ok;
        ++checked;
        if (float_pass == exact_pass) ++agree;
        row.measured = "e = " + fmt(best) + " at chi " + std::to_string(arg);
        row.bound = "> c = sigma/5; exact: |chi|^2 < chi(1)^2" + (m ? ", |chi|^" + std::to_string(2 * m) + " <= chi(1)^" +
                                                                          std::to_string(2 * m - 2)
                                                                    : std::string());
        row.margin = best;
        if (float_pass && exact_pass) row.verdict = Verdict::Pass;
        else row.verdict = qs ? Verdict::Fail : Verdict::Advisory;
        rep.rows.push_back(row);
        if (best < gmin) {
            gmin = best;
            amin_chi = arg;
            amin_cls = cls;
        }
    }
    rep.extra["min_exponent"] = std::isfinite(gmin) ? nlohmann::json(gmin) : nlohmann::json(nullptr);
    rep.extra["argmin"] = {{"chi", amin_chi}, {"class", amin_cls}};
    rep.extra["c_candidate"] = kc.c.get_str();
    rep.extra["quasisimple"] = qs;
    rep.extra["exact_agree"] = agree;
    rep.extra["exact_checked"] = checked;
    return rep;
}

std::vector<BoundReport> supp_exponent_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd,
                                            const BoundConstants& kc) {
    BoundReport mb3, lin, low;
    mb3.claim = "mb3";
    lin.claim = "linear-supp";
    low.claim = "lower";
    mb3.group = lin.group = low.group = G.spec.name();
    const int n = G.n;
    const double logq = std::log(static_cast<double>(G.spec.q));
    const double sigma = to_double(kc.sigma), gl = to_double(kc.gamma_linear);
    const bool qs = is_quasisimple(t);
    double min_sigma = INFINITY, min_gamma = INFINITY;
    for (int cls = 0; cls < t.k; ++cls) {
        const int s = G.classes[cls].support;
        if (s == 0) continue;
        double sg = INFINITY, gm = INFINITY, lmax = -INFINITY;
        int sarg = -1, garg = -1, larg = -1;
        for (int i = 0; i < t.k; ++i) {
            if (is_linear(t, i)) continue;
            if (rd.zero[i][cls]) {
                if (lmax == -INFINITY && larg < 0) larg = i;
                continue;
            }
            double ratio_log = rd.log_abs[i][cls] - rd.log_deg[i];  // log(|chi|/chi(1))
            if (std::fabs(ratio_log) < 1e-9 && rd.abs2[i][cls] == Cyclotomic(mpq_class(t.degrees[i] * t.degrees[i])))
                ratio_log = 0.0;
            const double x = 0.0 - ratio_log / rd.log_deg[i];
            const double sv = x * n / s;
            const double gv = (0.0 - ratio_log) / logq / s;
            const double lv = ratio_log / rd.log_deg[i];
            if (sv < sg) sg = sv, sarg = i;
            if (gv < gm) gm = gv, garg = i;
            if (lv > lmax) lmax = lv, larg = i;
        }
        const std::string subj = "class " + std::to_string(cls) + " (supp " + std::to_string(s) + ")";
        auto verdict = [&](bool ok) { return ok ? Verdict::Pass : (qs ? Verdict::Fail : Verdict::Advisory); };
        if (sarg >= 0) {
            mb3.rows.push_back({subj, "sigma_emp = " + fmt(sg) + " at chi " + std::to_string(sarg), ">= sigma = " + fmt(sigma),
                                sg, verdict(sg >= sigma)});
            min_sigma = std::min(min_sigma, sg);
        }
        if (garg >= 0) {
            lin.rows.push_back({subj, "gamma_emp = " + fmt(gm) + " at chi " + std::to_string(garg), ">= gamma = " + fmt(gl),
                                gm, verdict(gm >= gl)});
            min_gamma = std::min(min_gamma, gm);
        }
        if (larg >= 0) {
            const double thr = -6.0 * s / n;
            const bool ok = lmax >= thr;
            low.rows.push_back({subj, "max log(|chi|/chi(1))/log chi(1) = " + fmt(lmax),
                                ">= -6s/n = " + fmt(thr), lmax - thr, ok ? Verdict::Pass : Verdict::Advisory});
        }
    }
    mb3.extra["sigma_emp"] = std::isfinite(min_sigma) ? nlohmann::json(min_sigma) : nlohmann::json(nullptr);
    mb3.extra["sigma"] = kc.sigma.get_str();
    lin.extra["gamma_emp"] = std::isfinite(min_gamma) ? nlohmann::json(min_gamma) : nlohmann::json(nullptr);
    lin.extra["gamma_linear"] = kc.gamma_linear.get_str();
    low.extra["note"] = "asymptotic statement (n >= 7, |G| large); rows below the threshold are advisory";
    return {mb3, lin, low};
}

BoundReport frob_identity_check(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int max_b) {
    BoundReport rep;
    rep.claim = "frob";
    rep.group = G.spec.name();
    const int k = t.k;
    std::vector<BoundRow> rows(static_cast<std::size_t>(k) * max_b);
#pragma omp parallel for schedule(dynamic)
    for (int cls = 0; cls < k; ++cls) {
        Distribution D = point_class(G, cls);
        for (int b = 1; b <= max_b; ++b) {
            if (b > 1) D = convolve_class(G, sc, cls, D);
            int ok = 0;
            for (int i = 0; i < k; ++i) {
                Cyclotomic lhs;
                for (int l = 0; l < k; ++l)
                    if (D.p[l] != 0) lhs += t.values[i][l] * D.p[l];
                Cyclotomic rhs = t.values[i][cls].pow(static_cast<unsigned>(b)) /
                                 mpq_class(ipow(t.degrees[i], static_cast<unsigned long>(b - 1)));
                if (lhs == rhs) ++ok;
            }
            BoundRow& row = rows[static_cast<std::size_t>(cls) * max_b + (b - 1)];
            row.subject = "class " + std::to_string(cls) + ", b = " + std::to_string(b);
            row.measured = std::to_string(ok) + "/" + std::to_string(k) + " characters equal";
            row.bound = "E[chi(g^X1...g^Xb)] = chi(g)^b/chi(1)^(b-1)";
            row.margin = 0.0;
            row.verdict = ok == k ? Verdict::Pass : Verdict::Fail;
        }
    }
    rep.rows = std::move(rows);
    return rep;
}

BoundReport cent_bound_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd,
                            const std::vector<double>& eps_grid) {
    BoundReport rep;
    rep.claim = "mb2-curve";
    rep.group = G.spec.name();
    const double logG = log_mpz(t.order);
    double prev = -INFINITY;
    bool monotone = true;
    std::vector<double> eps = eps_grid;
    std::sort(eps.begin(), eps.end());
    for (double e : eps) {
        double delta = -INFINITY;
        for (int cls = 0; cls < t.k; ++cls) {
            if (t.class_sizes[cls] == 1) continue;
            const double logCent = log_mpz(t.order / t.class_sizes[cls]);
            if (logCent > e * logG + 1e-12) continue;
            for (int i = 1; i < t.k; ++i) {
                if (is_linear(t, i) || rd.zero[i][cls]) continue;
                delta = std::max(delta, rd.log_abs[i][cls] / rd.log_deg[i]);
            }
        }
        if (delta < prev) monotone = false;
        if (delta > -INFINITY) prev = delta;
        BoundRow row;
        row.subject = "eps = " + fmt(e);
        row.measured = delta == -INFINITY ? "no admissible class" : "delta_emp = " + fmt(delta);
        row.bound = "|C_G(g)| <= |G|^eps";
        row.margin = delta == -INFINITY ? 0.0 : delta;
        row.verdict = Verdict::Observational;
        rep.rows.push_back(row);
        rep.extra["curve"].push_back({e, delta == -INFINITY ? nlohmann::json(nullptr) : nlohmann::json(delta)});
    }
    rep.rows.push_back({"curve", monotone ? "nondecreasing" : "decreasing step", "nondecreasing in eps", 0.0,
                        monotone ? Verdict::Pass : Verdict::Fail});
    return rep;
}

// ------------------------------------------------------------------ count-v

namespace {

struct VecHash {
    std::size_t operator()(const Vec& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (fe x : v) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

// Reduce v against an echelon basis (pivot positions given); returns true if v is in the span.
bool in_span(const Field& F, const std::vector<Vec>& basis, const std::vector<int>& piv, Vec v) {
    for (std::size_t r = 0; r < basis.size(); ++r) {
        fe c = v[piv[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(c, basis[r][j]));
    }
    for (fe x : v)
        if (x) return false;
    return true;
}

void add_to_basis(const Field& F, std::vector<Vec>& basis, std::vector<int>& piv, Vec v) {
    for (std::size_t r = 0; r < basis.size(); ++r) {
        fe c = v[piv[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(c, basis[r][j]));
    }
    int p = -1;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) {
            p = static_cast<int>(j);
            break;
        }
    if (p < 0) return;
    fe inv = F.inv(v[p]);
    for (fe& x : v) x = F.mul(x, inv);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        fe c = basis[r][p];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) basis[r][j] = F.sub(basis[r][j], F.mul(c, v[j]));
    }
    basis.push_back(std::move(v));
    piv.push_back(p);
}

void count_rec(const Field& F, const std::vector<Vec>& all, int left, int target, std::vector<Vec>& basis,
               std::vector<int>& piv, mpz_class& count) {
    if (left == 0) {
        if (static_cast<int>(basis.size()) == target) ++count;
        return;
    }
    // Prune: the span can grow by at most `left`.
    if (static_cast<int>(basis.size()) + left < target || static_cast<int>(basis.size()) > target) return;
    for (const Vec& v : all) {
        if (in_span(F, basis, piv, v)) {
            count_rec(F, all, left - 1, target, basis, piv, count);
        } else {
            std::vector<Vec> b2 = basis;
            std::vector<int> p2 = piv;
            add_to_basis(F, b2, p2, v);
            count_rec(F, all, left - 1, target, b2, p2, count);
        }
    }
}

mpz_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

mpz_class count_v_exhaustive(const Field& F, int n, const std::vector<Vec>& w, int r) {
    const int k = static_cast<int>(w.size());
    const double leaves = std::pow(static_cast<double>(F.q()), static_cast<double>(k) * n);
    if (leaves > 1e7) throw Error("GuardExceeded", "q^(kn) = " + fmt(leaves) + " exceeds 10^7");
    std::vector<Vec> all = all_vectors(F, n), basis;
    std::vector<int> piv;
    for (const Vec& x : w) add_to_basis(F, basis, piv, x);
    if (static_cast<int>(basis.size()) != k) throw Error("DimensionMismatch", "w vectors are not independent");
    mpz_class count = 0;
    count_rec(F, all, k, k + r, basis, piv, count);
    return count;
}

mpz_class count_v_formula(int q, int n, int k, int r) {
    // ways[t] = number of partial sequences with span dimension t.
    std::vector<mpz_class> ways(n + 2, 0);
    ways[k] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<mpz_class> next(n + 2, 0);
        for (int t = 0; t <= n; ++t) {
            if (ways[t] == 0) continue;
            const mpz_class inside = ipow(q, t), total = ipow(q, n);
            next[t] += ways[t] * inside;
            if (t < n) next[t + 1] += ways[t] * (total - inside);
        }
        ways = std::move(next);
    }
    return k + r <= n ? ways[k + r] : mpz_class(0);
}

BoundReport count_v_report(const std::vector<CountVPoint>& points) {
    BoundReport rep;
    rep.claim = "count-v";
    rep.group = "F_q^n";
    for (const CountVPoint& pt : points) {
        const FieldPtr Fp = make_field_q(pt.q);
        const Field& F = *Fp;
        std::vector<Vec> w = pt.w;
        if (w.empty())
            for (int i = 0; i < pt.k; ++i) w.push_back(unit_vector(pt.n, i));
        const mpz_class ex = count_v_exhaustive(F, pt.n, w, pt.r);
        const mpz_class formula = count_v_formula(pt.q, pt.n, pt.k, pt.r);
        const mpz_class bound = binom(pt.k, pt.r) * ipow(pt.q, static_cast<unsigned long>(pt.r * pt.n + pt.k * pt.k - pt.r * pt.r));
        BoundRow row;
        row.subject = "q=" + std::to_string(pt.q) + " n=" + std::to_string(pt.n) + " k=" + std::to_string(pt.k) +
                      " r=" + std::to_string(pt.r);
        row.measured = "count = " + ex.get_str() + " (closed form " + formula.get_str() + ")";
        row.bound = "< binom(k,r) q^(rn+k^2-r^2) = " + bound.get_str();
        row.margin = log_mpz(bound) - (ex > 0 ? log_mpz(ex) : 0.0);
        if (ex != formula) row.verdict = Verdict::Fail;
        else if (ex < bound) row.verdict = Verdict::Pass;
        else if (ex == bound) row.verdict = Verdict::Flagged;
        else row.verdict = Verdict::Fail;
        rep.rows.push_back(row);
    }
    return rep;
}

// ------------------------------------------------------------- tuple orbits

std::vector<Vec> tuple_orbit(const Field& F, const std::vector<Mat>& gens, const std::vector<Vec>& tuple, std::size_t guard) {
    Vec start;
    for (const Vec& v : tuple) start.insert(start.end(), v.begin(), v.end());
    std::vector<Vec> pts{start};
    std::unordered_set<Vec, VecHash> seen{start};
    const std::size_t t = tuple.size();
    const int n = tuple.empty() ? 0 : static_cast<int>(tuple[0].size());
    Vec comp(n), img(static_cast<std::size_t>(n) * t);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (const Mat& s : gens) {
            for (std::size_t j = 0; j < t; ++j) {
                std::copy(pts[i].begin() + j * n, pts[i].begin() + (j + 1) * n, comp.begin());
                Vec r = mat_vec(F, s, comp);
                std::copy(r.begin(), r.end(), img.begin() + j * n);
            }
            if (seen.insert(img).second) {
                pts.push_back(img);
                if (pts.size() > guard) throw Error("GuardExceeded", "tuple orbit exceeds " + std::to_string(guard));
            }
        }
    }
    return pts;
}

namespace {

mpz_class order_of(const GroupSpec& s) { return group_order(s); }

std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

mpz_class sl_order(int n, int q) {
    if (n <= 1) return 1;
    return group_order(make_spec(Family::SL, n, q));
}

}  // namespace

BoundReport order_report(const std::vector<SubspacePoint>& points) {
    BoundReport rep;
    rep.claim = "order";
    rep.group = "various";
    for (const SubspacePoint& pt : points) {
        const GroupSpec spec = parse_spec(pt.spec);
        const Field& F = *spec.field;
        const int n = spec.n, d = static_cast<int>(pt.U.size());
        const long q = spec.q;
        const mpz_class G = order_of(spec);
        const std::size_t orb = d == 0 ? 1 : tuple_orbit(F, generators(spec), pt.U).size();
        const mpz_class H = G / mpz_class(static_cast<unsigned long>(orb));
        BoundRow row;
        row.subject = spec.name() + " d=" + std::to_string(d);
        row.measured = "|H| = " + H.get_str();
        const bool hyp = 2 * d <= n - 3;
        bool ok;
        if (spec.family == Family::SL) {
            const mpz_class bound = ipow(q, spec.D() - d * n);
            const mpz_class exact = ipow(q, d * (n - d)) * sl_order(n - d, q);
            ok = H < bound && H == exact;
            row.bound = "< q^(D-dn) = " + bound.get_str() + "; exact q^(d(n-d))|SL_(n-d)(q)| = " + exact.get_str();
            row.margin = log_mpz(bound) - log_mpz(H);
        } else {
            const mpz_class bound = ipow(q, spec.D() - d * n + d * (d + 1) / 2);
            ok = H <= bound;
            row.bound = "<= q^(D-dn+d(d+1)/2) = " + bound.get_str();
            row.margin = log_mpz(bound) - log_mpz(H);
        }
        // Second route: filter the enumerated group.
        if (G <= 60000 && d > 0) {
            EnumeratedGroup E = enumerate(spec);
            long fix = 0;
            for (eid x = 0; x < E.order(); ++x) {
                Mat X = E.element(x);
                bool f = true;
                for (const Vec& u : pt.U)
                    if (mat_vec(F, X, u) != u) {
                        f = false;
                        break;
                    }
                if (f) ++fix;
            }
            row.measured += " (filtered " + std::to_string(fix) + ")";
            if (mpz_class(fix) != H) {
                row.verdict = Verdict::Fail;
                rep.rows.push_back(row);
                continue;
            }
        }
        if (!hyp) row.bound += " [d > (n-3)/2: outside the hypothesis]";
        row.verdict = ok ? Verdict::Pass : (hyp ? Verdict::Fail : Verdict::Advisory);
        rep.rows.push_back(row);
    }
    return rep;
}

BoundReport orbit2_report(const std::vector<SubspacePoint>& points) {
    BoundReport rep;
    rep.claim = "orbit2";
    rep.group = "various";
    for (const SubspacePoint& pt : points) {
        const GroupSpec spec = parse_spec(pt.spec);
        const Field& F = *spec.field;
        const int n = spec.n, d = static_cast<int>(pt.U.size());
        const long q = spec.q;
        const long qf = F.q();  // the field of V
        std::vector<Vec> tup = pt.U;
        tup.push_back(pt.v);
        std::vector<Vec> orb = tuple_orbit(F, generators(spec), tup);
        Vec prefix;
        for (const Vec& u : pt.U) prefix.insert(prefix.end(), u.begin(), u.end());
        long len = 0;
        for (const Vec& p : orb)
            if (std::equal(prefix.begin(), prefix.end(), p.begin())) ++len;
        const bool hyp = 2 * d <= n - 3;
        BoundRow row;
        row.subject = spec.name() + " d=" + std::to_string(d) + " v=" + vec_str(pt.v);
        row.measured = "|v^H| = " + std::to_string(len);
        bool ok;
        if (spec.family == Family::SL) {
            const mpz_class want = ipow(qf, n) - ipow(qf, d);
            ok = mpz_class(len) == want;
            row.bound = "= q^n - q^d = " + want.get_str();
            row.margin = 0;
        } else {
            const mpz_class bound = ipow(q, std::max(0, n - d - 2));
            ok = mpz_class(len) >= bound;
            row.bound = ">= q^(n-d-2) = " + bound.get_str();
            row.margin = std::log(static_cast<double>(len)) - log_mpz(bound);
        }
        if (!hyp) row.bound += " [d > (n-3)/2: outside the hypothesis]";
        row.verdict = ok ? Verdict::Pass : (hyp ? Verdict::Fail : Verdict::Advisory);
        rep.rows.push_back(row);
    }
    return rep;
}

BoundReport orbit1_report(const std::vector<FormSpacePoint>& points) {
    BoundReport rep;
    rep.claim = "orbit1";
    rep.group = "various";
    for (const FormSpacePoint& pt : points) {
        const GroupSpec spec = parse_spec(pt.spec);
        const Field& F = *spec.field;
        const FormData& form = spec.form;
        const int n = spec.n;
        std::vector<Vec> basis = pt.basis;
        if (basis.empty())
            for (int i = 0; i < n; ++i) basis.push_back(unit_vector(n, i));
        const int k = static_cast<int>(basis.size());
        auto embed = [&](const Vec& x) {
            Vec u(n, 0);
            for (int i = 0; i < k; ++i)
                if (x[i])
                    for (int j = 0; j < n; ++j) u[j] = F.add(u[j], F.mul(x[i], basis[i][j]));
            return u;
        };
        auto pair = [&](const Vec& a, const Vec& b) {
            return form.kind == FormKind::Hermitian ? hermitian(F, form, a, b) : bilinear(F, form.gram, a, b);
        };
        auto value = [&](const Vec& u) -> fe {
            if (form.kind == FormKind::Alternating) return 0;
            if (form.kind == FormKind::Hermitian) return hermitian(F, form, u, u);
            return quad_value(F, form, u);
        };
        auto in_radical = [&](const Vec& u) {
            for (const Vec& b : basis)
                if (pair(u, b) != 0) return false;
            return true;
        };
        const Vec v = embed(pt.v);
        BoundRow row;
        row.subject = spec.name() + " form, k=" + std::to_string(k) + ", v=" + vec_str(pt.v);
        if (in_radical(v)) {
            row.measured = "v lies in the radical";
            row.verdict = Verdict::Vacuous;
            rep.rows.push_back(row);
            continue;
        }
        const fe target = value(v);
        long count = 0, radical = 0;
        for (const Vec& x : all_vectors(F, k)) {
            Vec u = embed(x);
            if (in_radical(u)) {
                ++radical;
                continue;
            }
            if (value(u) == target) ++count;
        }
        const mpz_class bound = ipow(F.q(), std::max(0, k - 2));
        row.measured = "|Omega(v)| = " + std::to_string(count) + " (radical size " + std::to_string(radical) + ")";
        row.bound = ">= q^(k-2) = " + bound.get_str();
        row.margin = std::log(static_cast<double>(count)) - log_mpz(bound);
        row.verdict = mpz_class(count) >= bound ? Verdict::Pass : Verdict::Fail;
        rep.rows.push_back(row);
    }
    return rep;
}

// ------------------------------------------------------------------ trans

mpz_class trans_count_orbit(const GroupSpec& spec, const Mat& g, const std::vector<Vec>& w, const std::vector<Vec>& v) {
    const Field& F = *spec.field;
    const int n = spec.n;
    const std::size_t k = w.size();
    std::vector<Vec> tup = w;
    tup.insert(tup.end(), v.begin(), v.end());
    std::vector<Vec> orb = tuple_orbit(F, generators(spec), tup);
    long good = 0;
    Vec a(n), b(n);
    for (const Vec& p : orb) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            std::copy(p.begin() + i * n, p.begin() + (i + 1) * n, a.begin());
            std::copy(p.begin() + (k + i) * n, p.begin() + (k + i + 1) * n, b.begin());
            if (mat_vec(F, g, a) != b) ok = false;
        }
        if (ok) ++good;
    }
    return group_order(spec) / mpz_class(static_cast<unsigned long>(orb.size())) * good;
}

mpz_class trans_count_scan(const EnumeratedGroup& G, const Mat& g, const std::vector<Vec>& w, const std::vector<Vec>& v) {
    const Field& F = *G.field;
    long count = 0;
    for (eid x = 0; x < G.order(); ++x) {
        Mat X = G.element(x);
        Mat gx = mat_mul(F, inverse(F, X), mat_mul(F, g, X));
        bool ok = true;
        for (std::size_t i = 0; i < w.size() && ok; ++i)
            if (mat_vec(F, gx, w[i]) != v[i]) ok = false;
        if (ok) ++count;
    }
    return count;
}

namespace {

EnumeratedGroup get_group(const GroupSpec& spec, const std::string& cache_dir) {
    return load_or_enumerate(spec, cache_dir, !cache_dir.empty());
}

}  // namespace

BoundReport trans_report(const std::vector<TransPoint>& points, const std::string& cache_dir) {
    BoundReport rep;
    rep.claim = "trans";
    rep.group = "various";
    for (const TransPoint& pt : points) {
        const GroupSpec spec = parse_spec(pt.spec);
        const Field& F = *spec.field;
        const int n = spec.n;
        const long q = spec.q;
        const bool small = group_order(spec) <= 60000;
        std::optional<EnumeratedGroup> E;
        if (small || pt.cls >= 0) E = get_group(spec, cache_dir);
        Mat g = pt.cls >= 0 ? E->element(E->classes[pt.cls].rep) : pt.g;
        std::vector<Vec> v = pt.v;
        if (v.empty()) {
            // x0 = product of the generators
            std::vector<Mat> gens = generators(spec);
            Mat x0 = identity(n);
            for (const Mat& s : gens) x0 = mat_mul(F, x0, s);
            Mat gx = mat_mul(F, inverse(F, x0), mat_mul(F, g, x0));
            for (const Vec& wi : pt.w) v.push_back(mat_vec(F, gx, wi));
        }
        const int k = static_cast<int>(pt.w.size());
        std::vector<Vec> all = pt.w;
        all.insert(all.end(), v.begin(), v.end());
        const int r = span_dim(F, all, n) - k;
        const int s = support(F, g).supp;
        const int m = n - s;
        const mpz_class count = trans_count_orbit(spec, g, pt.w, v);
        BoundRow row;
        row.subject = spec.name() + " supp(g)=" + std::to_string(s) + " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                      " m=" + std::to_string(m);
        row.measured = "|G_v,w| = " + count.get_str();
        bool agree = true;
        if (small) {
            const mpz_class scan = trans_count_scan(*E, g, pt.w, v);
            row.measured += " (scan " + scan.get_str() + ")";
            agree = scan == count;
        }
        mpz_class bound;
        if (spec.family == Family::SL || spec.family == Family::GL) {
            const long e = static_cast<long>(n) * n - static_cast<long>(k) * (n - m) - static_cast<long>(r) * m;
            bound = ipow(2, r) * (e >= 0 ? ipow(q, e) : mpz_class(0));
            row.bound = "<= 2^r q^(n^2-k(n-m)-rm) = " + bound.get_str();
        } else {
            const long e = spec.D() - static_cast<long>(k) * (n - m) + static_cast<long>(r) * (k - m + 1) + k * (k + 1) / 2;
            bound = e >= 0 ? ipow(q, e) : mpz_class(0);
            row.bound = "<= q^(D-k(n-m)+r(k-m+1)+k(k+1)/2) = " + bound.get_str();
        }
        const bool hyp = n >= 5 && m < n && 4 * k <= n - 1;
        if (!hyp) row.bound += " [outside n >= 5, k <= (n-1)/4]";
        row.margin = (bound > 0 ? log_mpz(bound) : -INFINITY) - (count > 0 ? log_mpz(count) : 0.0);
        const bool ok = count <= bound;
        row.verdict = !agree ? Verdict::Fail : ok ? Verdict::Pass : (hyp ? Verdict::Fail : Verdict::Advisory);
        rep.rows.push_back(row);
    }
    return rep;
}

BoundReport tuples_report(const std::vector<TuplesPoint>& points, const std::string& cache_dir) {
    BoundReport rep;
    rep.claim = "tuples";
    rep.group = "various";
    for (const TuplesPoint& pt : points) {
        const GroupSpec spec = parse_spec(pt.spec);
        EnumeratedGroup G = get_group(spec, cache_dir);
        const Field& F = *G.field;
        const int n = G.n, a = static_cast<int>(pt.u.size()), k = a * pt.d, b = 2;
        const long q = spec.q;
        const ClassData& C = G.classes[pt.cls];
        const mpz_class cent = C.centralizer_order;
        // N(h) = |C(g)|^2 * #{(y1, y2) in g^G x g^G : y2 y1 = h}
        std::unordered_map<eid, long> prod;
        for (eid y1 : G.members[pt.cls])
            for (eid y2 : G.members[pt.cls]) ++prod[G.mul(y2, y1)];
        mpz_class count = 0;
        for (const auto& [h, c] : prod) {
            Mat Ph = eval_poly_at_matrix(F, pt.P, G.element(h));
            bool ok = true;
            for (const Vec& u : pt.u)
                for (fe x : mat_vec(F, Ph, u))
                    if (x) ok = false;
            if (ok) count += mpz_class(c) * cent * cent;
        }
        const int s = C.support;
        const int m = n - s;
        mpz_class bound;
        BoundRow row;
        if (spec.family == Family::SL || spec.family == Family::GL) {
            bound = ipow(q, b * n * n + (b - 1) * k * k + 2 * b * k - a * n + 1);
            row.bound = "<= q^(bn^2+(b-1)k^2+2bk-an+1) = " + bound.get_str();
        } else {
            // (5b/2 - 1) k^2 + (7b/2) k with b = 2
            bound = ipow(q, b * spec.D() + 4 * k * k + 7 * k - a * n);
            row.bound = "<= q^(bD+(5b/2-1)k^2+(7b/2)k-an) = " + bound.get_str();
        }
        const bool hyp = n >= 5 && 4 * k <= n - 1 && b * (n - m) >= n;
        if (!hyp) row.bound += " [outside n >= 5, k <= (n-1)/4, b >= n/(n-m)]";
        row.subject = spec.name() + " class " + std::to_string(pt.cls) + " a=" + std::to_string(a) + " d=" + std::to_string(pt.d);
        row.measured = "pairs = " + count.get_str();
        row.margin = log_mpz(bound) - (count > 0 ? log_mpz(count) : 0.0);
        if (deg(pt.P) <= 0) row.verdict = Verdict::Vacuous;  // P(h) is invertible
        else row.verdict = count <= bound ? Verdict::Pass : (hyp ? Verdict::Fail : Verdict::Advisory);
        rep.rows.push_back(row);
    }
    return rep;
}

// -------------------------------------------------------------- Monte Carlo

Wilson wilson(long hits, long trials, double z) {
    Wilson w;
    if (trials <= 0) return w;
    const double n = static_cast<double>(trials), p = hits / n, z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

bool within_wilson(double p, long hits, long trials, double widths) {
    const Wilson w = wilson(hits, trials);
    const double ph = static_cast<double>(hits) / static_cast<double>(trials);
    return p >= ph - widths * (ph - w.lo) - 1e-15 && p <= ph + widths * (w.hi - ph) + 1e-15;
}

int max_kernel_low_degree(const Field& F, const Mat& h, int d) {
    if (d <= 1) return 0;
    const int cap = d - 1;
    const int n = h.n;
    std::vector<int> best(cap + 1, 0);
    for (const Factor& f : factor_squarefree_irreducible(F, char_poly(F, h))) {
        const int df = deg(f.poly);
        if (df > cap) continue;
        // options: use f^a for a = 1..cap/df
        std::vector<std::pair<int, int>> opts;  // (weight, kernel dim)
        Poly pa{1};
        for (int a = 1; a * df <= cap; ++a) {
            pa = poly_mul(F, pa, f.poly);
            opts.push_back({a * df, n - rank(F, eval_poly_at_matrix(F, pa, h))});
        }
        std::vector<int> next = best;
        for (int w = 0; w <= cap; ++w)
            for (const auto& [wt, dim] : opts)
                if (wt <= w) next[w] = std::max(next[w], best[w - wt] + dim);
        best = std::move(next);
    }
    return best[cap];
}

namespace {

BoundRow mc_row(const std::string& name, long hits, long trials, const mpq_class& exact) {
    const Wilson w = wilson(hits, trials);
    const double p = exact.get_d();
    BoundRow row;
    row.subject = name;
    row.measured = "freq = " + std::to_string(hits) + "/" + std::to_string(trials) + " Wilson95 [" + fmt(w.lo) + ", " +
                   fmt(w.hi) + "]";
    row.bound = "exact = " + exact.get_str() + " (" + fmt(p) + ")";
    row.margin = std::fabs(static_cast<double>(hits) / trials - p);
    row.verdict = within_wilson(p, hits, trials) ? Verdict::Pass : Verdict::Fail;
    return row;
}

}  // namespace

BoundReport mc_uniform_harness(const EnumeratedGroup& G, const StructureConstants& sc, const UniformHarnessConfig& cfg) {
    BoundReport rep;
    rep.claim = "mc-uniform";
    rep.group = G.spec.name();
    const Field& F = *G.field;
    const int n = G.n, k = G.num_classes(), b = cfg.b;
    Distribution D = point_class(G, cfg.cls);
    for (int i = 1; i < b; ++i) D = convolve_class(G, sc, cfg.cls, D);

    std::vector<char> small_supp(k), kernel_event(k);
    std::vector<int> supp(k);
    for (int c = 0; c < k; ++c) {
        supp[c] = G.classes[c].support;
        small_supp[c] = 9 * supp[c] < n;
        kernel_event[c] = mpq_class(max_kernel_low_degree(F, G.element(G.classes[c].rep), cfg.d)) >= cfg.eps * n;
    }
    mpq_class p_small = 0, p_kernel = 0;
    std::vector<mpq_class> p_supp(n + 1, 0);
    for (int c = 0; c < k; ++c) {
        if (small_supp[c]) p_small += D.p[c];
        if (kernel_event[c]) p_kernel += D.p[c];
        p_supp[supp[c]] += D.p[c];
    }

    // Span event: X_i(e_j) uniform on the orbit of (e_1..e_kk), independent in i.
    const int kk = cfg.indep_k;
    std::vector<Vec> tup;
    for (int j = 0; j < kk; ++j) tup.push_back(unit_vector(n, j));
    std::vector<Vec> orbit = tuple_orbit(F, G.gens, tup);
    const double combos = std::pow(static_cast<double>(orbit.size()), b);
    const bool span_exact = combos <= 2e6;
    mpq_class p_span = 0;
    auto span_event = [&](const std::vector<const Vec*>& pts) {
        std::vector<Vec> vs;
        for (const Vec* p : pts)
            for (int j = 0; j < kk; ++j) vs.emplace_back(p->begin() + j * n, p->begin() + (j + 1) * n);
        return 3 * span_dim(F, vs, n) <= 2 * b * kk;
    };
    if (span_exact) {
        long good = 0, total = 0;
        std::vector<std::size_t> idx(b, 0);
        while (true) {
            std::vector<const Vec*> pts;
            for (int i = 0; i < b; ++i) pts.push_back(&orbit[idx[i]]);
            if (span_event(pts)) ++good;
            ++total;
            int pos = 0;
            while (pos < b && ++idx[pos] == orbit.size()) idx[pos++] = 0;
            if (pos == b) break;
        }
        p_span = mpq_class(mpz_class(good), mpz_class(total));
        p_span.canonicalize();
    }

    // Sampling in blocks with independent streams.
    const long block = 10000;
    const long nblocks = (cfg.trials + block - 1) / block;
    std::vector<long> h_small(nblocks, 0), h_kernel(nblocks, 0), h_span(nblocks, 0);
    std::vector<std::vector<long>> h_supp(nblocks, std::vector<long>(n + 1, 0));
    const eid g = G.classes[cfg.cls].rep;
#pragma omp parallel for schedule(dynamic)
    for (long blk = 0; blk < nblocks; ++blk) {
        UniformSampler S(G, cfg.seed, static_cast<std::uint64_t>(blk));
        const long count = std::min(block, cfg.trials - blk * block);
        for (long t = 0; t < count; ++t) {
            eid prod = G.classes[0].rep;  // identity class comes first
            std::vector<eid> xs(b);
            for (int i = 0; i < b; ++i) {
                eid x = S.next();
                xs[i] = x;
                prod = G.mul(prod, G.mul(G.inv[x], G.mul(g, x)));
            }
            const int c = G.class_of[prod];
            if (small_supp[c]) ++h_small[blk];
            if (kernel_event[c]) ++h_kernel[blk];
            ++h_supp[blk][supp[c]];
            std::vector<Vec> vs;
            for (int i = 0; i < b; ++i) {
                const fe* X = G.data(xs[i]);
                for (int j = 0; j < kk; ++j) {
                    Vec col(n);
                    for (int r = 0; r < n; ++r) col[r] = X[r * n + j];
                    vs.push_back(std::move(col));
                }
            }
            if (3 * span_dim(F, vs, n) <= 2 * b * kk) ++h_span[blk];
        }
    }
    long hs = 0, hk = 0, hp = 0;
    std::vector<long> hsupp(n + 1, 0);
    for (long blk = 0; blk < nblocks; ++blk) {
        hs += h_small[blk];
        hk += h_kernel[blk];
        hp += h_span[blk];
        for (int s = 0; s <= n; ++s) hsupp[s] += h_supp[blk][s];
    }
    const std::string tag = " (class " + std::to_string(cfg.cls) + ", b=" + std::to_string(b) + ")";
    rep.rows.push_back(mc_row("big-support: supp < n/9" + tag, hs, cfg.trials, p_small));
    rep.rows.push_back(mc_row("aprods: dim Ker P >= eps n, deg P < " + std::to_string(cfg.d) + tag, hk, cfg.trials, p_kernel));
    for (int s = 0; s <= n; ++s)
        if (p_supp[s] != 0 || hsupp[s] != 0)
            rep.rows.push_back(mc_row("supp = " + std::to_string(s) + tag, hsupp[s], cfg.trials, p_supp[s]));
    if (span_exact)
        rep.rows.push_back(mc_row("usually-almost-indep: dim span <= 2bk/3, k=" + std::to_string(kk) + tag, hp, cfg.trials,
                                  p_span));
    rep.extra["sampling"] = "uniform_exact";
    rep.extra["seed"] = cfg.seed;
    rep.extra["trials"] = cfg.trials;
    rep.extra["criterion"] = "exact probability within 3 Wilson 95% half-widths";
    return rep;
}

std::string SupportGrowth::csv() const {
    std::ostringstream os;
    os << "b,median";
    for (int s = 0; s <= n; ++s) os << ",supp" << s;
    os << "\n";
    for (std::size_t i = 0; i < b_values.size(); ++i) {
        os << b_values[i] << "," << median[i];
        for (long c : histogram[i]) os << "," << c;
        os << "\n";
    }
    return os.str();
}

SupportGrowth mc_support_growth(const GroupSpec& spec, const Mat& g, int b_max, long trials, std::uint64_t seed) {
    SupportGrowth out;
    out.group = spec.name();
    out.n = spec.n;
    const Field& F = *spec.field;
    const std::vector<Mat> gens = generators(spec);
    const int n = spec.n;
    const long block = 1000;
    const long nblocks = (trials + block - 1) / block;
    for (int b = 1; b <= b_max; ++b) {
        std::vector<std::vector<long>> hist(nblocks, std::vector<long>(n + 1, 0));
#pragma omp parallel for schedule(dynamic)
        for (long blk = 0; blk < nblocks; ++blk) {
            ProductReplacement pr(spec, gens, seed, static_cast<std::uint64_t>(b) * 100000 + blk);
            const long count = std::min(block, trials - blk * block);
            for (long t = 0; t < count; ++t) {
                Mat prod = identity(n);
                for (int i = 0; i < b; ++i) {
                    Mat x = pr.next();
                    prod = mat_mul(F, prod, mat_mul(F, inverse(F, x), mat_mul(F, g, x)));
                }
                ++hist[blk][support(F, prod).supp];
            }
        }
        std::vector<long> h(n + 1, 0);
        for (const auto& hb : hist)
            for (int s = 0; s <= n; ++s) h[s] += hb[s];
        long acc = 0;
        double med = 0;
        for (int s = 0; s <= n; ++s) {
            acc += h[s];
            if (2 * acc >= trials) {
                med = s;
                break;
            }
        }
        out.b_values.push_back(b);
        out.histogram.push_back(h);
        out.median.push_back(med);
    }
    out.nondecreasing = true;
    for (std::size_t i = 1; i < out.median.size(); ++i)
        if (out.median[i] < out.median[i - 1]) out.nondecreasing = false;
    return out;
}

BoundReport support_growth_report(const SupportGrowth& s) {
    BoundReport rep;
    rep.claim = "support-growth";
    rep.group = s.group;
    for (std::size_t i = 0; i < s.b_values.size(); ++i)
        rep.rows.push_back({"b = " + std::to_string(s.b_values[i]), "median supp = " + fmt(s.median[i]), "", s.median[i],
                            Verdict::Observational});
    rep.rows.push_back({"trend", s.nondecreasing ? "nondecreasing" : "not monotone", "median supp nondecreasing in b", 0.0,
                        s.nondecreasing ? Verdict::Pass : Verdict::Flagged});
    rep.extra["sampling"] = "product_replacement (15 slots, 200 burn-in; approximate distribution)";
    rep.extra["csv"] = s.csv();
    return rep;
}

}  // namespace cc
