#include "classchar/field.hpp"

#include <map>
#include <numeric>
#include <mutex>

namespace cc {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using Digits = std::vector<int>;

Digits to_digits(int code, int p, int f) {
    Digits d(f);
    for (int i = 0; i < f; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

int from_digits(const Digits& d, int p) {
    int code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
    return code;
}

// Remainder of a by the monic polynomial m over GF(p); both low-to-high.
Digits poly_rem(Digits a, const Digits& m, int p) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
    }
    a.resize(std::min<std::size_t>(a.size(), dm));
    return a;
}

Digits mulmod(const Digits& a, const Digits& b, const Digits& m, int p) {
    Digits r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    Digits out = poly_rem(r, m, p);
    out.resize(m.size() - 1, 0);
    return out;
}

bool divides(const Digits& d, const Digits& a, int p) {
    Digits r = poly_rem(a, d, p);
    for (int c : r)
        if (c != 0) return false;
    return true;
}

}  // namespace

std::vector<int> least_irreducible(int p, int f) {
    if (f == 1) return {0, 1};
    long long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        Digits m = to_digits(static_cast<int>(code), p, f);
        m.push_back(1);
        if (m[0] == 0) continue;
        bool irreducible = true;
        // Trial division by every monic polynomial of degree 1..f/2.
        for (int deg = 1; deg <= f / 2 && irreducible; ++deg) {
            long long cnt = 1;
            for (int i = 0; i < deg; ++i) cnt *= p;
            for (long long dc = 0; dc < cnt; ++dc) {
                Digits d = to_digits(static_cast<int>(dc), p, deg);
                d.push_back(1);
                if (divides(d, m, p)) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return m;
    }
    throw Error("NoModulus", "no irreducible polynomial found");
}

Field::Field(int p, int f) : p_(p), f_(f) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw Error("NonPrime", std::to_string(p) + " is not prime");
    if (f < 1) throw Error("EnvelopeExceeded", "degree must be positive");
    long long q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > 65536) throw Error("EnvelopeExceeded", "field order exceeds 2^16");
    }
    q_ = static_cast<int>(q);
    modulus_ = least_irreducible(p, f);

    negtab_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        Digits d = to_digits(a, p, f);
        for (int& c : d) c = (p - c) % p;
        negtab_[a] = static_cast<fe>(from_digits(d, p));
    }

    // Least element generating the multiplicative group.
    exp_.assign(q_ - 1 > 0 ? q_ - 1 : 1, 1);
    log_.assign(q_, 0);
    if (q_ == 2) {
        prim_ = 1;
        exp_[0] = 1;
    } else {
        for (int cand = 2; cand < q_; ++cand) {
            Digits g = to_digits(cand, p, f);
            Digits cur = to_digits(1, p, f);
            std::vector<fe> powers(q_ - 1);
            bool ok = true;
            for (int k = 0; k < q_ - 1; ++k) {
                int code = from_digits(cur, p);
                if (k > 0 && code == 1) {
                    ok = false;
                    break;
                }
                powers[k] = static_cast<fe>(code);
                cur = mulmod(cur, g, modulus_, p);
            }
            if (!ok) continue;
            prim_ = static_cast<fe>(cand);
            exp_ = std::move(powers);
            break;
        }
    }
    for (int k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;

    if (p_ != 2 && q_ <= 1024) {
        addtab_.resize(static_cast<std::size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) addtab_[static_cast<std::size_t>(a) * q_ + b] = add_slow(a, b);
    }
}

fe Field::add_slow(fe a, fe b) const {
    int r = 0, mult = 1;
    int x = a, y = b;
    for (int i = 0; i < f_; ++i) {
        r += ((x % p_ + y % p_) % p_) * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return static_cast<fe>(r);
}

fe Field::inv(fe a) const {
    if (a == 0) throw Error("DivisionByZero", "inverse of zero");
    int l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

fe Field::exp(long long k) const {
    long long m = q_ - 1;
    k %= m;
    if (k < 0) k += m;
    return exp_[static_cast<std::size_t>(k)];
}

fe Field::pow(fe a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) {
        if (e < 0) throw Error("DivisionByZero", "negative power of zero");
        return 0;
    }
    long long m = q_ - 1;
    long long l = static_cast<long long>(log_[a]) * (((e % m) + m) % m) % m;
    return exp_[static_cast<std::size_t>(l)];
}

fe Field::frobenius(fe a, long long k) const {
    k %= f_;
    if (k < 0) k += f_;
    long long e = 1;
    for (long long i = 0; i < k; ++i) e *= p_;
    return pow(a, e);
}

fe Field::sqrt_char2(fe a) const {
    if (p_ != 2) throw Error("WrongCharacteristic", "sqrt_char2 needs characteristic 2");
    return frobenius(a, f_ - 1);
}

bool Field::is_square(fe a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
}

fe Field::from_int(long long k) const {
    long long r = ((k % p_) + p_) % p_;
    return static_cast<fe>(r);
}

long long Field::order(fe a) const {
    if (a == 0) throw Error("DivisionByZero", "order of zero");
    long long m = q_ - 1;
    return m / std::gcd(m, static_cast<long long>(log_[a]));
}

FieldPtr make_field(int p, int f) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, f});
    if (it != cache.end()) return it->second;
    auto fp = std::make_shared<const Field>(p, f);
    cache[{p, f}] = fp;
    return fp;
}

FieldPtr make_field_q(int q) {
    if (q < 2) throw Error("NonPrime", "field order must be at least 2");
    for (int p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        int f = 0, r = q;
        while (r % p == 0) {
            r /= p;
            ++f;
        }
        if (r != 1) throw Error("NonPrime", std::to_string(q) + " is not a prime power");
        return make_field(p, f);
    }
    throw Error("NonPrime", std::to_string(q) + " is not a prime power");
}

}  // namespace cc
