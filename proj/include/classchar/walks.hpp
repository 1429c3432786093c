#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classchar/chars.hpp"
#include "classchar/grp.hpp"
#include "classchar/report.hpp"

namespace cc {

enum class TvConvention { L1, Half };
std::string to_string(TvConvention c);
TvConvention parse_tv_convention(const std::string& s);

struct WalkReport {
    std::string group;
    int cls = 0;
    mpz_class class_size;
    TvConvention convention = TvConvention::L1;
    std::string mode = "exact";  // or "mc"

    // Order of g modulo the commutator subgroup: the walk at step N lives in the
    // coset g^N G'. Period 1 means the walk is aperiodic.
    int period = 1;
    bool generating = true;

    // Exact mode, N = 0..N_last, in the L1 convention.
    std::vector<mpq_class> tv;        // against uniform on G
    std::vector<mpq_class> tv_coset;  // against uniform on the coset reached at step N
    std::vector<std::vector<mpq_class>> class_mass;  // P^N(class), per N

    std::optional<int> mixing_time;  // least N with TV < 1/e in the chosen convention
    std::optional<int> diameter;     // least N with supp(P^N) the whole reachable coset
    double log_ratio = 0;            // log|G| / log|S|
    bool monotone = true;
    bool convolution_agrees = true;  // N <= 4 against structure-constant convolution

    // Monte Carlo mode.
    long trials = 0;
    long walk_hits = 0, uniform_hits = 0;
    double tv_lower = 0;  // 2 |P(A) - U(A)| with A the separator event

    std::vector<std::string> flags;

    // TV in the report's convention.
    mpq_class tv_in_convention(int N) const;
    nlohmann::json to_json() const;
    std::string csv() const;
};

// P^N(x) = (1/|G|) sum_chi chi(g)^N conj(chi(x)) / chi(1)^(N-1), exactly.
WalkReport exact_walk(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int cls,
                      int n_max = 64, TvConvention conv = TvConvention::L1);

// Separator event: the characteristic polynomial has at least n/2 irreducible
// factors counted with multiplicity. Compares the walk after N steps with
// product-replacement samples.
WalkReport mc_walk(const GroupSpec& spec, const Mat& g, int N, long trials, std::uint64_t seed);

// Class-level BFS of products of the class: least N with every class of the
// current coset reached. Empty when the class does not generate.
std::optional<int> class_diameter(const EnumeratedGroup& G, const StructureConstants& sc, int cls);

// mult[psi][theta] = <chi psi, theta>, exact. Computed in F_l with the table's
// prime l > |G| >= every multiplicity.
std::vector<std::vector<long>> tensor_multiplicities(const CharTable& t, int chi);

struct McKayGraph {
    int chi = 0;
    std::vector<std::vector<long>> mult;
    std::vector<std::vector<int>> dist;  // -1 when unreachable
    bool connected = false;
    bool faithful = false;
    std::optional<int> diameter;
    bool degree_sanity = false;  // sum_theta mult * theta(1) = chi(1) psi(1)
};
McKayGraph mckay_graph(const CharTable& t, int chi);

struct McKayWalk {
    int chi = 0, start = 0;
    std::vector<std::vector<mpq_class>> dist;  // K^l_alpha, l = 0..L
    std::vector<mpq_class> lhs, rhs;           // 4 ||K^l - pi||^2 (half convention) and the character bound
    bool inequality = true;
    bool sums_to_one = true;
    bool stationary = true;       // pi T = pi
    bool closed_form_agrees = true;  // class-sum formula against the transition matrix
    bool tv_decreasing = true;
};
McKayWalk mckay_walk(const CharTable& t, int chi, int start, int l_max = 20);

// Rows: <prod chi_i, theta> for every theta, and for each chi in the list the
// least m with chi^m containing every irreducible (capped at m_cap).
BoundReport character_products_check(const CharTable& t, const std::vector<int>& chis, int m_cap = 64);
// Least m with <chi^m, theta> > 0 for every theta, or empty past m_cap.
std::optional<int> covering_number(const CharTable& t, int chi, int m_cap = 64);

BoundReport walk_report(const WalkReport& w);
BoundReport mckay_report(const CharTable& t, const McKayGraph& g, const McKayWalk& w);

}  // namespace cc
