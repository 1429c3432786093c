#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cc {

// Error carrying a stable machine-readable code ("NonPrime", "CapExceeded", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Field elements are encoded as integers in [0, q): the base-p digits are the
// coefficients of the polynomial representative, lowest degree first.
using fe = std::uint16_t;

bool is_prime(std::uint64_t n);

class Field {
public:
    Field(int p, int f);

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }
    // Monic modulus, coefficients low-to-high, length f+1.
    const std::vector<int>& modulus() const { return modulus_; }
    fe primitive() const { return prim_; }

    fe add(fe a, fe b) const {
        if (p_ == 2) return static_cast<fe>(a ^ b);
        if (!addtab_.empty()) return addtab_[static_cast<std::size_t>(a) * q_ + b];
        return add_slow(a, b);
    }
    fe neg(fe a) const { return negtab_[a]; }
    fe sub(fe a, fe b) const { return add(a, neg(b)); }
    fe mul(fe a, fe b) const {
        if (a == 0 || b == 0) return 0;
        int s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    fe inv(fe a) const;
    fe div(fe a, fe b) const { return mul(a, inv(b)); }
    fe pow(fe a, long long e) const;
    // a^(p^k); k may be any integer, taken modulo f.
    fe frobenius(fe a, long long k) const;
    // The unique square root in characteristic 2.
    fe sqrt_char2(fe a) const;
    bool is_square(fe a) const;
    // Discrete logarithm to the primitive element; a must be nonzero.
    int log(fe a) const { return log_[a]; }
    fe exp(long long k) const;
    // Image of the integer k in the prime field.
    fe from_int(long long k) const;
    // Multiplicative order of a nonzero element.
    long long order(fe a) const;

    std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

private:
    fe add_slow(fe a, fe b) const;

    int p_, f_, q_;
    std::vector<int> modulus_;
    fe prim_ = 1;
    std::vector<fe> exp_;
    std::vector<int> log_;
    std::vector<fe> negtab_;
    std::vector<fe> addtab_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Deterministic field construction with the least monic irreducible modulus.
FieldPtr make_field(int p, int f);
// Field of order q, q a prime power.
FieldPtr make_field_q(int q);

// Least monic irreducible polynomial of degree f over GF(p) under the order
// given by the integer code sum c_i p^i (i < f); coefficients low-to-high.
std::vector<int> least_irreducible(int p, int f);

}  // namespace cc
