#include "classchar/walks.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "classchar/element.hpp"
#include "raw_values.hpp"
#include "classchar/verify.hpp"

namespace cc {

using namespace cc::raw;

std::string to_string(TvConvention c) { return c == TvConvention::L1 ? "l1" : "half"; }

TvConvention parse_tv_convention(const std::string& s) {
    if (s == "l1") return TvConvention::L1;
    if (s == "half") return TvConvention::Half;
    throw Error("BadArgument", "tv convention must be l1 or half, got " + s);
}

namespace {

bool below_inv_e(const mpq_class& x) {
    return to_bigfloat(x) < exp(BigFloat(-1));
}

// Linear characters: for each, the exponent a with lambda(class) = zeta_e^a.
std::vector<std::vector<int>> linear_exponents(const CharTable& t) {
    std::vector<std::vector<int>> out;
    for (int i = 0; i < t.k; ++i) {
        if (t.degrees[i] != 1) continue;
        std::vector<int> ex(t.k);
        for (int c = 0; c < t.k; ++c) {
            IntTerms v = int_terms(t.values[i][c], t.exponent);
            if (v.size() != 1 || v[0].second != 1) throw Error("Inconsistent", "linear character value is not a root of unity");
            ex[c] = v[0].first;
        }
        out.push_back(std::move(ex));
    }
    return out;
}

// coset[N % period] = classes x with lambda(x) = lambda(g)^N for every linear lambda.
std::vector<std::vector<char>> coset_schedule(const CharTable& t, int cls, int& period) {
    const int e = t.exponent;
    const auto lin = linear_exponents(t);
    period = 1;
    for (const auto& ex : lin) {
        const int o = e / std::gcd(ex[cls], e);
        period = std::lcm(period, o);
    }
    std::vector<std::vector<char>> out(period, std::vector<char>(t.k, 0));
    for (int r = 0; r < period; ++r)
        for (int x = 0; x < t.k; ++x) {
            bool in = true;
            for (const auto& ex : lin)
                if (ex[x] % e != static_cast<int>((static_cast<long>(ex[cls]) * r) % e)) in = false;
            out[r][x] = in;
        }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

mpq_class WalkReport::tv_in_convention(int N) const {
    const mpq_class& v = period > 1 ? tv_coset[N] : tv[N];
    return convention == TvConvention::L1 ? v : mpq_class(v / 2);
}

nlohmann::json WalkReport::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["class"] = cls;
    j["class_size"] = class_size.get_str();
    j["mode"] = mode;
    j["tv_convention"] = to_string(convention);
    if (mode == "exact") {
        j["period"] = period;
        j["generating"] = generating;
        nlohmann::json curve = nlohmann::json::array();
        for (std::size_t N = 0; N < tv.size(); ++N)
            curve.push_back({{"N", N}, {"tv", tv_in_convention(static_cast<int>(N)).get_str()},
                             {"tv_float", tv_in_convention(static_cast<int>(N)).get_d()}});
        j["curve"] = curve;
        j["mixing_time"] = mixing_time ? nlohmann::json(*mixing_time) : nlohmann::json(nullptr);
        j["diameter"] = diameter ? nlohmann::json(*diameter) : nlohmann::json(nullptr);
        j["log_ratio"] = log_ratio;
        if (mixing_time && diameter && *diameter > 0) j["K"] = static_cast<double>(*mixing_time) / *diameter;
        j["monotone"] = monotone;
        j["convolution_agrees"] = convolution_agrees;
    } else {
        j["trials"] = trials;
        j["walk_hits"] = walk_hits;
        j["uniform_hits"] = uniform_hits;
        const Wilson a = wilson(walk_hits, trials), b = wilson(uniform_hits, trials);
        j["walk_wilson"] = {a.lo, a.hi};
        j["uniform_wilson"] = {b.lo, b.hi};
        j["tv_lower"] = tv_lower;
    }
    j["flags"] = flags;
    return j;
}

std::string WalkReport::csv() const {
    std::ostringstream os;
    os << "N,tv\n";
    for (std::size_t N = 0; N < tv.size(); ++N) os << N << "," << tv_in_convention(static_cast<int>(N)).get_d() << "\n";
    return os.str();
}

std::optional<int> class_diameter(const EnumeratedGroup& G, const StructureConstants& sc, int cls) {
    const int k = G.num_classes();
    // Coset structure from the classes themselves: a class x is in the step-N coset
    // exactly when it is eventually reached at steps congruent to N.
    std::vector<char> reach(k, 0);
    reach[0] = 1;
    std::set<std::vector<char>> seen;
    std::vector<std::vector<char>> history{reach};
    for (int N = 1; N <= 4 * k + 8; ++N) {
        std::vector<char> next(k, 0);
        for (int j = 0; j < k; ++j)
            if (reach[j])
                for (int l = 0; l < k; ++l)
                    if (!next[l] && sc(cls, j, l) > 0) next[l] = 1;
        reach = std::move(next);
        history.push_back(reach);
    }
    // The reach sets are eventually periodic; the final period window holds the
    // full cosets. Diameter: least N whose set equals the limit set at N's phase.
    const int total = static_cast<int>(history.size());
    int period = 1;
    for (int p = 1; p <= k + 1; ++p) {
        bool ok = true;
        for (int N = total - 1; N >= total - 2 * (k + 1) && N - p >= 0; --N)
            if (history[N] != history[N - p]) ok = false;
        if (ok) {
            period = p;
            break;
        }
    }
    // Generation: the union of the limit sets must be every class.
    std::vector<char> uni(k, 0);
    for (int N = total - period; N < total; ++N)
        for (int x = 0; x < k; ++x) uni[x] |= history[N][x];
    for (char c : uni)
        if (!c) return std::nullopt;
    for (int N = 0; N < total; ++N) {
        const int phase = total - period + ((N - (total - period)) % period + period) % period;
        if (history[N] == history[phase]) return N;
    }
    return std::nullopt;
}

WalkReport exact_walk(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int cls, int n_max,
                      TvConvention conv) {
    WalkReport w;
    w.group = t.group;
    w.cls = cls;
    w.class_size = t.class_sizes[cls];
    w.convention = conv;
    const int k = t.k, e = t.exponent;
    const std::vector<long> ram = ramanujan(e);
    const long phi = ram[0];
    const mpq_class inv_norm = mpq_class(1) / mpq_class(t.order * phi);

    auto coset = coset_schedule(t, cls, w.period);
    if (w.period > 1) w.flags.push_back("periodic: walk alternates among " + std::to_string(w.period) + " cosets of G'");
    w.diameter = class_diameter(G, sc, cls);
    w.generating = w.diameter.has_value();
    if (!w.generating) w.flags.push_back("NonGenerating");
    w.log_ratio = w.class_size > 1 ? log_mpz(t.order) / log_mpz(w.class_size) : INFINITY;

    std::vector<IntTerms> gval(k);
    std::vector<std::vector<std::vector<long>>> kern(k, std::vector<std::vector<long>>(k));
    for (int i = 0; i < k; ++i) {
        gval[i] = int_terms(t.values[i][cls], e);
        for (int x = 0; x < k; ++x) kern[i][x] = trace_kernel(conj_terms(int_terms(t.values[i][x], e), e), ram);
    }
    std::vector<std::vector<mpz_class>> pw(k, unit(e));  // chi(g)^N
    int num_coset = 0;
    for (int x = 0; x < k; ++x) num_coset += coset[0][x];

    Distribution conv_d = point_class(G, 0);
    for (int N = 0; N <= n_max; ++N) {
        if (N > 0) {
#pragma omp parallel for schedule(dynamic)
            for (int i = 0; i < k; ++i) pw[i] = mul_sparse(pw[i], gval[i]);
        }
        std::vector<mpq_class> elem(k);
#pragma omp parallel for schedule(dynamic)
        for (int x = 0; x < k; ++x) {
            mpq_class s = 0;
            for (int i = 0; i < k; ++i) {
                mpz_class tr = dot(pw[i], kern[i][x]);
                if (tr == 0) continue;
                // chi(1) * (chi(g)/chi(1))^N
                mpq_class term(tr);
                if (N == 0) term *= t.degrees[i];
                else if (N > 1) term /= ipow(t.degrees[i], static_cast<unsigned long>(N - 1));
                s += term;
            }
            elem[x] = s * inv_norm;
        }
        std::vector<mpq_class> mass(k);
        mpq_class tv = 0, tvc = 0;
        const auto& cs = coset[N % w.period];
        mpz_class coset_size = 0;
        for (int x = 0; x < k; ++x)
            if (cs[x]) coset_size += t.class_sizes[x];
        const mpq_class u = mpq_class(1) / mpq_class(t.order);
        const mpq_class uc = mpq_class(1) / mpq_class(coset_size);
        for (int x = 0; x < k; ++x) {
            mass[x] = elem[x] * t.class_sizes[x];
            tv += abs(elem[x] - u) * t.class_sizes[x];
            tvc += abs(elem[x] - (cs[x] ? uc : mpq_class(0))) * t.class_sizes[x];
        }
        if (N <= 4) {
            if (N > 0) conv_d = convolve_class(G, sc, cls, conv_d);
            if (conv_d.p != mass) w.convolution_agrees = false;
        }
        w.tv.push_back(tv);
        w.tv_coset.push_back(tvc);
        w.class_mass.push_back(std::move(mass));
        if (N > 0 && w.tv_in_convention(N) > w.tv_in_convention(N - 1)) w.monotone = false;
        if (!w.mixing_time && w.generating && below_inv_e(w.tv_in_convention(N))) w.mixing_time = N;
        if (N >= 4 && (w.mixing_time || !w.generating)) break;
    }
    if (!w.convolution_agrees) w.flags.push_back("ConvolutionMismatch");
    return w;
}

WalkReport mc_walk(const GroupSpec& spec, const Mat& g, int N, long trials, std::uint64_t seed) {
    WalkReport w;
    w.group = spec.name();
    w.mode = "mc";
    w.cls = -1;
    w.trials = trials;
    const Field& F = *spec.field;
    const int n = spec.n;
    const std::vector<Mat> gens = generators(spec);
    auto separator = [&](const Mat& x) {
        int count = 0;
        for (const Factor& f : factor_squarefree_irreducible(F, char_poly(F, x))) count += f.mult;
        return 2 * count >= n;
    };
    const long block = 1000;
    const long nblocks = (trials + block - 1) / block;
    std::vector<long> hw(nblocks, 0), hu(nblocks, 0);
#pragma omp parallel for schedule(dynamic)
    for (long blk = 0; blk < nblocks; ++blk) {
        ProductReplacement pr(spec, gens, seed, static_cast<std::uint64_t>(blk));
        const long count = std::min(block, trials - blk * block);
        for (long s = 0; s < count; ++s) {
            Mat prod = identity(n);
            for (int i = 0; i < N; ++i) {
                Mat x = pr.next();
                prod = mat_mul(F, prod, mat_mul(F, inverse(F, x), mat_mul(F, g, x)));
            }
            if (separator(prod)) ++hw[blk];
            if (separator(pr.next())) ++hu[blk];
        }
    }
    w.walk_hits = std::accumulate(hw.begin(), hw.end(), 0L);
    w.uniform_hits = std::accumulate(hu.begin(), hu.end(), 0L);
    w.tv_lower = 2.0 * std::fabs(static_cast<double>(w.walk_hits - w.uniform_hits)) / static_cast<double>(trials);
    w.flags.push_back("sampling: product_replacement (approximate)");
    return w;
}

// ------------------------------------------------------------------ McKay

namespace {

using u64 = unsigned long long;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 primitive_root(u64 p) {
    std::vector<u64> fac;
    u64 m = p - 1;
    for (u64 d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            fac.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) fac.push_back(m);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 f : fac)
            if (powmod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

// Table values embedded in F_l via zeta_e -> z.
struct ModTable {
    u64 p = 0;
    std::vector<std::vector<u64>> val;   // [chi][cls]
    std::vector<std::vector<u64>> cval;  // conjugates
    std::vector<u64> size;               // class sizes mod p
    u64 inv_order = 0;
};

ModTable embed(const CharTable& t) {
    if (t.prime == 0) throw Error("Inconsistent", "table carries no modulus");
    ModTable M;
    const u64 p = t.prime, e = static_cast<u64>(t.exponent);
    if ((p - 1) % e != 0) throw Error("Inconsistent", "table modulus is not 1 mod the exponent");
    M.p = p;
    const u64 z = powmod(primitive_root(p), (p - 1) / e, p);
    std::vector<u64> zp(e);
    zp[0] = 1;
    for (u64 i = 1; i < e; ++i) zp[i] = mulmod(zp[i - 1], z, p);
    auto red = [&](long c) { return static_cast<u64>(((c % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p)); };
    M.val.assign(t.k, std::vector<u64>(t.k));
    M.cval = M.val;
    for (int i = 0; i < t.k; ++i)
        for (int c = 0; c < t.k; ++c) {
            u64 v = 0, cv = 0;
            for (const auto& [k, coef] : int_terms(t.values[i][c], t.exponent)) {
                v = (v + mulmod(red(coef), zp[k], p)) % p;
                cv = (cv + mulmod(red(coef), zp[(e - k) % e], p)) % p;
            }
            M.val[i][c] = v;
            M.cval[i][c] = cv;
        }
    for (const mpz_class& s : t.class_sizes) M.size.push_back(mpz_class(s % mpz_class(static_cast<unsigned long>(p))).get_ui());
    M.inv_order = powmod(mpz_class(t.order % mpz_class(static_cast<unsigned long>(p))).get_ui(), p - 2, p);
    return M;
}

std::vector<mpz_class> row_times(const std::vector<mpz_class>& v, const std::vector<std::vector<long>>& m) {
    std::vector<mpz_class> out(m.size(), 0);
    for (std::size_t a = 0; a < v.size(); ++a) {
        if (v[a] == 0) continue;
        for (std::size_t b = 0; b < m.size(); ++b)
            if (m[a][b]) out[b] += v[a] * m[a][b];
    }
    return out;
}

}  // namespace

std::vector<std::vector<long>> tensor_multiplicities(const CharTable& t, int chi) {
    const ModTable M = embed(t);
    const u64 p = M.p;
    const int k = t.k;
    std::vector<std::vector<long>> out(k, std::vector<long>(k, 0));
#pragma omp parallel for collapse(2)
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            u64 s = 0;
            for (int c = 0; c < k; ++c) {
                u64 x = mulmod(M.size[c], M.val[chi][c], p);
                x = mulmod(x, M.val[a][c], p);
                s = (s + mulmod(x, M.cval[b][c], p)) % p;
            }
            out[a][b] = static_cast<long>(mulmod(s, M.inv_order, p));
        }
    return out;
}

McKayGraph mckay_graph(const CharTable& t, int chi) {
    McKayGraph g;
    g.chi = chi;
    g.mult = tensor_multiplicities(t, chi);
    g.faithful = t.is_faithful(chi);
    const int k = t.k;
    g.degree_sanity = true;
    for (int a = 0; a < k; ++a) {
        mpz_class s = 0;
        for (int b = 0; b < k; ++b) s += t.degrees[b] * g.mult[a][b];
        if (s != t.degrees[chi] * t.degrees[a]) g.degree_sanity = false;
    }
    g.dist.assign(k, std::vector<int>(k, -1));
    for (int s = 0; s < k; ++s) {
        std::deque<int> queue{s};
        g.dist[s][s] = 0;
        while (!queue.empty()) {
            const int a = queue.front();
            queue.pop_front();
            for (int b = 0; b < k; ++b)
                if (g.mult[a][b] > 0 && g.dist[s][b] < 0) {
                    g.dist[s][b] = g.dist[s][a] + 1;
                    queue.push_back(b);
                }
        }
    }
    g.connected = true;
    int diam = 0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (g.dist[a][b] < 0) g.connected = false;
            diam = std::max(diam, g.dist[a][b]);
        }
    if (g.connected) g.diameter = diam;
    return g;
}

std::optional<int> covering_number(const CharTable& t, int chi, int m_cap) {
    const auto mult = tensor_multiplicities(t, chi);
    std::vector<mpz_class> v(t.k, 0);
    v[0] = 1;
    for (int m = 1; m <= m_cap; ++m) {
        v = row_times(v, mult);
        bool all = true;
        for (const mpz_class& x : v)
            if (x == 0) all = false;
        if (all) return m;
    }
    return std::nullopt;
}

BoundReport character_products_check(const CharTable& t, const std::vector<int>& chis, int m_cap) {
    BoundReport rep;
    rep.claim = "char-products";
    rep.group = t.group;
    std::vector<mpz_class> v(t.k, 0);
    v[0] = 1;
    mpz_class deg = 1;
    std::string name;
    for (int c : chis) {
        v = row_times(v, tensor_multiplicities(t, c));
        deg *= t.degrees[c];
        name += (name.empty() ? "chi" : "*chi") + std::to_string(c);
    }
    int covered = 0;
    bool nonneg = true;
    for (int th = 0; th < t.k; ++th) {
        if (v[th] > 0) ++covered;
        if (v[th] < 0) nonneg = false;
    }
    rep.rows.push_back({name, std::to_string(covered) + "/" + std::to_string(t.k) + " irreducibles occur",
                        "prod chi_i(1) = " + deg.get_str() + ", log_|G| = " + fmt(log_mpz(deg) / log_mpz(t.order)), 0.0,
                        Verdict::Observational});
    rep.rows.push_back({name + " multiplicities", nonneg ? "all >= 0" : "negative multiplicity", ">= 0", 0.0,
                        nonneg ? Verdict::Pass : Verdict::Fail});
    std::set<int> distinct(chis.begin(), chis.end());
    for (int c : distinct) {
        const std::optional<int> m = covering_number(t, c, m_cap);
        const double scale = t.degrees[c] > 1 ? log_mpz(t.order) / log_mpz(t.degrees[c]) : INFINITY;
        BoundRow row;
        row.subject = "chi" + std::to_string(c) + " (degree " + t.degrees[c].get_str() + ")";
        row.measured = m ? "covering number " + std::to_string(*m) : "no covering up to m = " + std::to_string(m_cap);
        row.bound = "log|G|/log chi(1) = " + fmt(scale);
        row.margin = m ? *m / scale : 0.0;
        row.verdict = m || !t.is_faithful(c) ? Verdict::Observational : Verdict::Fail;
        rep.rows.push_back(row);
        rep.extra["covering"].push_back({{"chi", c}, {"m", m ? nlohmann::json(*m) : nlohmann::json(nullptr)}, {"scale", scale}});
    }
    return rep;
}

McKayWalk mckay_walk(const CharTable& t, int chi, int start, int l_max) {
    McKayWalk w;
    w.chi = chi;
    w.start = start;
    const int k = t.k, e = t.exponent;
    const auto mult = tensor_multiplicities(t, chi);
    // T[a][b] = mult[a][b] b(1) / (chi(1) a(1))
    std::vector<std::vector<mpq_class>> T(k, std::vector<mpq_class>(k, 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (mult[a][b]) T[a][b] = mpq_class(t.degrees[b] * mult[a][b], t.degrees[chi] * t.degrees[a]);
    for (auto& row : T)
        for (auto& x : row) x.canonicalize();
    std::vector<mpq_class> pi(k);
    for (int b = 0; b < k; ++b) {
        pi[b] = mpq_class(t.degrees[b] * t.degrees[b], t.order);
        pi[b].canonicalize();
    }
    for (int b = 0; b < k; ++b) {
        mpq_class s = 0;
        for (int a = 0; a < k; ++a) s += pi[a] * T[a][b];
        if (s != pi[b]) w.stationary = false;
    }

    // Class-sum closed form: K^l(b) = b(1)/(a(1)|G|chi(1)^l) sum_C |C| chi(C)^l a(C) conj(b(C)).
    const std::vector<long> ram = ramanujan(e);
    const long phi = ram[0];
    std::vector<std::vector<mpz_class>> A(k);  // chi(C)^l alpha(C)
    std::vector<IntTerms> chiv(k);
    std::vector<std::vector<std::vector<long>>> kern(k, std::vector<std::vector<long>>(k));
    for (int c = 0; c < k; ++c) {
        chiv[c] = int_terms(t.values[chi][c], e);
        A[c] = mul_sparse(unit(e), int_terms(t.values[start][c], e));
        for (int b = 0; b < k; ++b) kern[c][b] = trace_kernel(conj_terms(int_terms(t.values[b][c], e), e), ram);
    }
    // (chi conj chi)^l alpha via multiplicity matrices: M M^T.
    std::vector<std::vector<long>> MMt(k, std::vector<long>(k, 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            long s = 0;
            for (int c = 0; c < k; ++c) s += mult[a][c] * mult[b][c];
            MMt[a][b] = s;
        }
    std::vector<mpz_class> energy(k, 0);  // e_alpha (M M^T)^l
    energy[start] = 1;

    std::vector<mpq_class> dist(k, 0);
    dist[start] = 1;
    for (int l = 0; l <= l_max; ++l) {
        if (l > 0) {
            std::vector<mpq_class> next(k, 0);
            for (int a = 0; a < k; ++a)
                if (dist[a] != 0)
                    for (int b = 0; b < k; ++b)
                        if (T[a][b] != 0) next[b] += dist[a] * T[a][b];
            dist = std::move(next);
            for (int c = 0; c < k; ++c) A[c] = mul_sparse(A[c], chiv[c]);
            energy = row_times(energy, MMt);
        }
        std::vector<mpq_class> closed(k);
        const mpz_class denom = t.degrees[start] * t.order * ipow(t.degrees[chi], static_cast<unsigned long>(l)) * phi;
#pragma omp parallel for schedule(dynamic)
        for (int b = 0; b < k; ++b) {
            mpz_class s = 0;
            for (int c = 0; c < k; ++c) s += t.class_sizes[c] * dot(A[c], kern[c][b]);
            closed[b] = mpq_class(s * t.degrees[b], denom);
            closed[b].canonicalize();
        }
        if (closed != dist) w.closed_form_agrees = false;
        mpq_class total = 0, l1 = 0;
        for (int b = 0; b < k; ++b) {
            total += dist[b];
            l1 += abs(dist[b] - pi[b]);
        }
        if (total != 1) w.sums_to_one = false;
        // 4 ||K - pi||^2 with ||.|| = half L1.
        const mpq_class lhs = l1 * l1;
        const mpz_class top = ipow(t.degrees[chi], 2UL * l) * t.degrees[start] * t.degrees[start];
        mpq_class rhs = mpq_class(t.order * energy[start] - top, top);
        rhs.canonicalize();
        if (lhs > rhs) w.inequality = false;
        if (!w.lhs.empty() && l1 * l1 > w.lhs.back()) w.tv_decreasing = false;
        w.lhs.push_back(lhs);
        w.rhs.push_back(rhs);
        w.dist.push_back(dist);
    }
    return w;
}

BoundReport walk_report(const WalkReport& w) {
    BoundReport rep;
    rep.claim = "walk";
    rep.group = w.group;
    const std::string subj = "class " + std::to_string(w.cls) + " (|S| = " + w.class_size.get_str() + ")";
    if (w.mode == "mc") {
        const Wilson a = wilson(w.walk_hits, w.trials), b = wilson(w.uniform_hits, w.trials);
        rep.rows.push_back({"separator event", "walk " + fmt(static_cast<double>(w.walk_hits) / w.trials) + " [" + fmt(a.lo) + ", " +
                                                    fmt(a.hi) + "], uniform " +
                                                    fmt(static_cast<double>(w.uniform_hits) / w.trials) + " [" + fmt(b.lo) +
                                                    ", " + fmt(b.hi) + "]",
                            "TV lower bound " + fmt(w.tv_lower), w.tv_lower, Verdict::Observational});
        rep.extra = w.to_json();
        return rep;
    }
    if (!w.generating) {
        rep.rows.push_back({subj, "class does not generate", "", 0.0, Verdict::Vacuous});
    } else {
        const std::string mt = w.mixing_time ? std::to_string(*w.mixing_time) : std::string("not reached");
        rep.rows.push_back({subj + " mixing", "t_mix = " + mt + ", diameter = " + std::to_string(*w.diameter),
                            "log|G|/log|S| = " + fmt(w.log_ratio), w.mixing_time ? *w.mixing_time / w.log_ratio : 0.0,
                            w.mixing_time ? Verdict::Observational : Verdict::Fail});
    }
    rep.rows.push_back({subj + " TV monotone", w.monotone ? "non-increasing" : "increase observed", "non-increasing in N", 0.0,
                        w.monotone ? Verdict::Pass : Verdict::Fail});
    rep.rows.push_back({subj + " character formula vs convolution", w.convolution_agrees ? "equal for N <= 4" : "mismatch",
                        "exact equality", 0.0, w.convolution_agrees ? Verdict::Pass : Verdict::Fail});
    rep.extra = w.to_json();
    return rep;
}

BoundReport mckay_report(const CharTable& t, const McKayGraph& g, const McKayWalk& w) {
    BoundReport rep;
    rep.claim = "mckay";
    rep.group = t.group;
    const std::string subj = "chi" + std::to_string(g.chi) + " (degree " + t.degrees[g.chi].get_str() + ")";
    const bool iff = g.connected == g.faithful;
    rep.rows.push_back({subj + " connectivity", std::string(g.connected ? "connected" : "disconnected") +
                                                    (g.diameter ? ", diameter " + std::to_string(*g.diameter) : ""),
                        g.faithful ? "faithful" : "not faithful", 0.0, iff ? Verdict::Pass : Verdict::Fail});
    rep.rows.push_back({subj + " degree sum", g.degree_sanity ? "holds" : "fails", "sum mult theta(1) = chi(1) psi(1)", 0.0,
                        g.degree_sanity ? Verdict::Pass : Verdict::Fail});
    if (g.diameter && t.degrees[g.chi] > 1)
        rep.rows.push_back({subj + " diameter scale", "diameter " + std::to_string(*g.diameter),
                            "log|G|/log chi(1) = " + fmt(log_mpz(t.order) / log_mpz(t.degrees[g.chi])), 0.0,
                            Verdict::Observational});
    if (!w.dist.empty()) {
        const std::string ws = subj + " walk from chi" + std::to_string(w.start);
        rep.rows.push_back({ws + " bound", w.inequality ? "holds at every l" : "violated",
                            "4||K^l - pi||^2 <= sum_(C != 1) |C| |chi/chi(1)|^(2l) |alpha/alpha(1)|^2", 0.0,
                            w.inequality ? Verdict::Pass : Verdict::Fail});
        const bool ok = w.sums_to_one && w.stationary && w.closed_form_agrees;
        rep.rows.push_back({ws + " exactness", ok ? "sums to 1, pi stationary, class-sum form agrees" : "mismatch",
                            "exact", 0.0, ok ? Verdict::Pass : Verdict::Fail});
        nlohmann::json curve = nlohmann::json::array();
        for (std::size_t l = 0; l < w.lhs.size(); ++l)
            curve.push_back({{"l", l}, {"lhs", w.lhs[l].get_d()}, {"rhs", w.rhs[l].get_d()}});
        rep.extra["walk"] = curve;
    }
    return rep;
}

}  // namespace cc
