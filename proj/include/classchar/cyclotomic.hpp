#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cc {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Cyclotomic polynomial Phi_e with integer coefficients, low-to-high.
const std::vector<long>& cyclotomic_poly(int e);
// Exact numerator and denominator, divided at BigFloat precision.
BigFloat to_bigfloat(const mpq_class& x);
int euler_phi(int e);

// An element of Q(zeta_e) stored as sparse terms c_k zeta_e^k, 0 <= k < e.
// Arithmetic keeps the terms reduced modulo x^e - 1 only; reduced() brings
// the value to the canonical basis zeta^0..zeta^(phi(e)-1) by division by Phi_e.
// Values with different e are combined in Q(zeta_lcm).
class Cyclotomic {
public:
    using Term = std::pair<int, mpq_class>;

    Cyclotomic() = default;
    Cyclotomic(long v) : Cyclotomic(mpq_class(v)) {}
    Cyclotomic(const mpq_class& r);
    static Cyclotomic root(int e, long k);
    // Sum of c * zeta_e^k over the given terms; exponents taken mod e.
    static Cyclotomic from_terms(int e, std::vector<Term> terms);

    int conductor() const { return e_; }
    const std::vector<Term>& terms() const { return terms_; }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const mpq_class& r);
    Cyclotomic& operator/=(const mpq_class& r);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const mpq_class& r) { return a *= r; }
    friend Cyclotomic operator/(Cyclotomic a, const mpq_class& r) { return a /= r; }
    Cyclotomic operator-() const;

    Cyclotomic conj() const;
    // zeta -> zeta^j, j coprime to e.
    Cyclotomic galois(long j) const;
    Cyclotomic pow(unsigned n) const;
    // Canonical form in the power basis of length phi(e).
    Cyclotomic reduced() const;
    // Re-expresses the value in Q(zeta_E) for a multiple E of the conductor.
    Cyclotomic lift(int E) const;

    bool is_zero() const;
    bool is_rational() const;
    // Throws if not rational.
    mpq_class rational() const;
    bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    std::complex<double> to_complex() const;
    BigFloat real_part() const;
    BigFloat imag_part() const;
    // |x|^2 = x * conj(x).
    Cyclotomic abs2() const;
    // Sign of a real value, decided by a 50-digit embedding with an error bound
    // backed by the exact zero test. Throws if the value is not real.
    int real_sign() const;

    // "2 + z7^3 - 1/2*z7^5"
    std::string str() const;

    // Lexicographic order on canonical terms.
    static int compare_canonical(const Cyclotomic& a, const Cyclotomic& b);

private:
    int e_ = 1;
    std::vector<Term> terms_;
    void normalize();
};

}  // namespace cc
