#pragma once

// Integer sums of e-th roots of unity, as stored raw in character tables, and
// exact traces from Q(zeta_e) to Q. Shared by the walk and product modules.

#include <gmpxx.h>

#include <numeric>
#include <utility>
#include <vector>

#include "classchar/cyclotomic.hpp"
#include "classchar/field.hpp"

namespace cc::raw {

using IntTerms = std::vector<std::pair<int, long>>;

// Raw value lifted to conductor e with integer coefficients.
inline IntTerms int_terms(const Cyclotomic& v, int e) {
    const Cyclotomic x = v.lift(e);
    IntTerms out;
    for (const auto& [k, c] : x.terms()) {
        if (c.get_den() != 1) throw Error("Inconsistent", "character value with non-integral raw coefficient");
        out.push_back({k, c.get_num().get_si()});
    }
    return out;
}

inline IntTerms conj_terms(const IntTerms& a, int e) {
    IntTerms out;
    for (const auto& [k, c] : a) out.push_back({k == 0 ? 0 : e - k, c});
    return out;
}

// Ramanujan sums: Tr(zeta_e^m) over Q(zeta_e)/Q.
inline std::vector<long> ramanujan(int e) {
    // Moebius function by a linear sieve.
    std::vector<long> mu(e + 1, 1);
    std::vector<int> primes;
    std::vector<char> comp(e + 1, 0);
    for (int i = 2; i <= e; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (int p : primes) {
            if (static_cast<long>(p) * i > e) break;
            comp[p * i] = 1;
            if (i % p == 0) {
                mu[p * i] = 0;
                break;
            }
            mu[p * i] = -mu[i];
        }
    }
    std::vector<long> r(e, 0);
    for (int k = 0; k < e; ++k) {
        const int g = std::gcd(k, e);  // gcd(0, e) = e
        long s = 0;
        for (int d = 1; d <= g; ++d)
            if (g % d == 0) s += mu[e / d] * d;
        r[k] = s;
    }
    return r;
}

// K[j] = Tr(zeta^j * B) for B given by terms.
inline std::vector<long> trace_kernel(const IntTerms& b, const std::vector<long>& ram) {
    const int e = static_cast<int>(ram.size());
    std::vector<long> K(e, 0);
    for (int j = 0; j < e; ++j) {
        long s = 0;
        for (const auto& [k, c] : b) s += c * ram[(j + k) % e];
        K[j] = s;
    }
    return K;
}

inline mpz_class dot(const std::vector<mpz_class>& a, const std::vector<long>& K) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0 && K[j] != 0) s += a[j] * K[j];
    return s;
}

inline std::vector<mpz_class> mul_sparse(const std::vector<mpz_class>& a, const IntTerms& b) {
    const int e = static_cast<int>(a.size());
    std::vector<mpz_class> out(e, 0);
    for (int j = 0; j < e; ++j) {
        if (a[j] == 0) continue;
        for (const auto& [k, c] : b) {
            int m = j + k;
            if (m >= e) m -= e;
            out[m] += a[j] * c;
        }
    }
    return out;
}

inline std::vector<mpz_class> unit(int e) {
    std::vector<mpz_class> a(e, 0);
    a[0] = 1;
    return a;
}

}  // namespace cc::raw
