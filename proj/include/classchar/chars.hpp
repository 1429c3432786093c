#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "classchar/cyclotomic.hpp"
#include "classchar/grp.hpp"
#include "classchar/report.hpp"

namespace cc {

// Irreducible characters of an enumerated group. values[i][j] = chi_i(C_j), held
// as sums of e-th roots of unity (the eigenvalue multiplicities of the lift), so
// products stay sparse; use Cyclotomic::reduced() for the canonical form.
// Characters are ordered trivial first, then by degree and value tuple.
struct CharTable {
    std::string group;
    int k = 0;
    int exponent = 1;  // conductor e of every value
    mpz_class order;
    std::vector<mpz_class> class_sizes;
    std::vector<long> rep_orders;
    std::vector<int> inverse_class;
    std::vector<mpz_class> degrees;
    std::vector<std::vector<Cyclotomic>> values;
    unsigned long prime = 0;  // the modulus used by the modular stage

    const Cyclotomic& operator()(int chi, int cls) const { return values[chi][cls]; }
    bool is_faithful(int chi) const;

    nlohmann::json to_json() const;
    static CharTable from_json(const nlohmann::json& j);
};

// Dixon-Schneider over F_l with l = 1 mod e. Throws NoSuitablePrime or Inconsistent.
CharTable dixon_table(const EnumeratedGroup& G, const StructureConstants& sc, int max_primes = 20);
// Cached variant: <cache_dir>/<sanitized name>.table.json.
CharTable load_or_compute_table(const EnumeratedGroup& G, const StructureConstants& sc, const std::string& cache_dir,
                                bool use_cache);

struct Orthogonality {
    bool rows = false;
    bool columns = false;
    bool degree_sum = false;
    bool degrees_divide = false;
    bool ok() const { return rows && columns && degree_sum && degrees_divide; }
};
Orthogonality check_orthogonality(const CharTable& t);

// chi(g^k) = sigma_k(chi(g)) for every class and every k coprime to |g|.
bool power_map_consistent(const EnumeratedGroup& G, const CharTable& t);
// a_ijl = |C_i||C_j|/|G| sum_chi chi(c_i) chi(c_j) conj(chi(c_l)) / chi(1), for all i, j, l.
bool structure_constants_match(const StructureConstants& sc, const CharTable& t);

// Degree of the hook-shape unipotent character (n-j, 1^j) of GL_n(q) (eps = 1)
// or GU_n(q) (eps = -1). Throws OutOfRange unless 0 <= j <= n-1.
mpz_class hook_unipotent_degree(int n, long q, int eps, int j);

// Steinberg values on p'-classes: |St(g)| equals the p-part of |C_G(g)|.
// Throws SteinbergNotFound.
BoundReport steinberg_check(const EnumeratedGroup& G, const CharTable& t);
// G = SL(n,2): the permutation character on F_2^n equals 2 + tau with tau the
// irreducible of degree 2^n - 2; on classes whose largest eigenspace is the
// fixed space, tau(g) = 2^(n-s) - 2.
BoundReport sln2_tau_check(const EnumeratedGroup& G, const CharTable& t);

// chi(1)^2 / |G|.
std::vector<mpq_class> plancherel(const CharTable& t);

// Perfect, and every nontrivial character has central kernel.
bool is_quasisimple(const CharTable& t);

// Characters of the given degree, in table order.
std::vector<int> characters_of_degree(const CharTable& t, const mpz_class& d);

}  // namespace cc
