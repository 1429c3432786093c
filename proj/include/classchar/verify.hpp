#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "classchar/chars.hpp"
#include "classchar/grp.hpp"
#include "classchar/report.hpp"

namespace cc {

struct BoundConstants {
    mpq_class sigma;         // support exponent of the main character bound
    mpq_class gamma_linear;  // q^(-gamma supp) form of the same bound
    mpq_class gamma;         // support threshold bound
    mpq_class C;             // support threshold
    mpq_class c;             // class-size exponent candidate, sigma / 5
    std::string formulas;
};
BoundConstants default_constants();

// Log data for every (character, class) pair, computed once per table.
struct RatioData {
    std::vector<std::vector<Cyclotomic>> abs2;  // |chi(g)|^2, canonical
    std::vector<std::vector<char>> zero;
    std::vector<std::vector<double>> log_abs;   // log |chi(g)|, -inf at zeros
    std::vector<double> log_deg;
};
RatioData ratio_data(const CharTable& t);

// Empirical exponent (1 - log|chi(g)|/log chi(1)) * log|G| / log|g^G| per
// non-central class, minimized over nontrivial chi with chi(g) != 0. Each row's
// arg-min pair is re-decided exactly: |chi(g)|^(2m) <= chi(1)^(2m-2) for an m with
// 1/m below the float value.
BoundReport exponent_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd,
                          const BoundConstants& k = default_constants());

// {"mb3", "linear-supp", "lower"}.
std::vector<BoundReport> supp_exponent_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd,
                                            const BoundConstants& k = default_constants());

// E[chi(g^X1 ... g^Xb)] = chi(g)^b / chi(1)^(b-1), exactly, b = 1..max_b.
BoundReport frob_identity_check(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int max_b = 3);

// (eps, delta_emp(eps)) with delta_emp the max of log|chi(g)|/log chi(1) over
// non-central g with |C_G(g)| <= |G|^eps and nontrivial chi.
BoundReport cent_bound_scan(const EnumeratedGroup& G, const CharTable& t, const RatioData& rd,
                            const std::vector<double>& eps_grid);

// ---------------------------------------------------------------- counting oracles

struct CountVPoint {
    int q = 2, n = 2, k = 1, r = 0;
    std::vector<Vec> w;  // k linearly independent vectors; empty means e_1..e_k
};
// Exhaustive count of k-tuples with dim Span(v, w) = k + r, cross-checked against
// the closed-form count; equality with the bound is flagged, not failed.
BoundReport count_v_report(const std::vector<CountVPoint>& points);
mpz_class count_v_exhaustive(const Field& F, int n, const std::vector<Vec>& w, int r);
mpz_class count_v_formula(int q, int n, int k, int r);

// Orbit of a tuple of column vectors under the group generated by gens; each
// point is the concatenation of the tuple's vectors. Throws GuardExceeded past
// `guard` points.
std::vector<Vec> tuple_orbit(const Field& F, const std::vector<Mat>& gens, const std::vector<Vec>& tuple,
                             std::size_t guard = 2000000);

struct SubspacePoint {
    std::string spec;
    std::vector<Vec> U;  // basis of U
    Vec v;               // for orbit2; must lie outside U
};
// Pointwise stabilizer H of U: |H| = |G| / |orbit of the basis tuple|; for SL
// also the exact formula. Small groups are cross-checked by filtering.
// |v^H| counts orbit points of (U-basis, v) that keep the U-basis fixed.
BoundReport order_report(const std::vector<SubspacePoint>& points);
BoundReport orbit2_report(const std::vector<SubspacePoint>& points);

struct FormSpacePoint {
    std::string spec;        // group whose form is used
    std::vector<Vec> basis;  // K = span(basis) with the restricted form; empty = whole space
    Vec v;                   // coordinates in K
};
// |Omega(v)| by scanning K.
BoundReport orbit1_report(const std::vector<FormSpacePoint>& points);

struct TransPoint {
    std::string spec;
    int cls = -1;          // class of g in the enumerated group (or -1 to use g)
    Mat g;                 // used when cls < 0
    std::vector<Vec> w;    // k independent vectors
    std::vector<Vec> v;    // k independent vectors; empty = x0^-1 g x0 (w) for a fixed x0
};
// |G_{v,w}| through the orbit of the 2k-tuple (w, v); cross-checked by scanning
// the enumerated group when it is small enough.
BoundReport trans_report(const std::vector<TransPoint>& points, const std::string& cache_dir = "");
mpz_class trans_count_orbit(const GroupSpec& spec, const Mat& g, const std::vector<Vec>& w, const std::vector<Vec>& v);
mpz_class trans_count_scan(const EnumeratedGroup& G, const Mat& g, const std::vector<Vec>& w, const std::vector<Vec>& v);

struct TuplesPoint {
    std::string spec;
    int cls = 1;
    Poly P;                // monic, degree <= d - 1
    int d = 1;
    std::vector<Vec> u;    // a independent vectors
};
// b = 2: pairs (x1, x2) with P(g^x2 g^x1) u_i = 0.
BoundReport tuples_report(const std::vector<TuplesPoint>& points, const std::string& cache_dir = "");

// ---------------------------------------------------------------- Monte Carlo

struct Wilson {
    double lo = 0, hi = 1;
};
Wilson wilson(long hits, long trials, double z = 1.959963984540054);
// True when p lies within `widths` Wilson half-widths of the observed frequency.
bool within_wilson(double p, long hits, long trials, double widths = 3.0);

// Largest dim Ker P(h) over nonzero P in F_q[x] with deg P < d.
int max_kernel_low_degree(const Field& F, const Mat& h, int d);

struct UniformHarnessConfig {
    int cls = 1;       // class of g
    int b = 2;         // number of conjugates
    long trials = 100000;
    std::uint64_t seed = 1;
    mpq_class eps = mpq_class(1, 2);  // A-prods kernel threshold eps * n
    int d = 2;                        // A-prods polynomial degree bound
    int indep_k = 1;                  // usually-almost-indep: number of vectors
};
// Uniform sampling against exact probabilities: supp(product) < n/9, the
// A-prods kernel event, every support value, and the span event.
BoundReport mc_uniform_harness(const EnumeratedGroup& G, const StructureConstants& sc, const UniformHarnessConfig& cfg);

struct SupportGrowth {
    std::string group;
    int n = 0;
    std::vector<int> b_values;
    std::vector<std::vector<long>> histogram;  // [b][supp] counts
    std::vector<double> median;
    bool nondecreasing = false;
    std::string csv() const;
};
// Product replacement sampling of g^X1 ... g^Xb for b = 1..b_max.
SupportGrowth mc_support_growth(const GroupSpec& spec, const Mat& g, int b_max, long trials, std::uint64_t seed);
BoundReport support_growth_report(const SupportGrowth& s);

}  // namespace cc
