#include "classchar/cyclotomic.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "classchar/field.hpp"

namespace cc {

namespace {

std::vector<long> poly_div_exact(std::vector<long> a, const std::vector<long>& b) {
    // b monic
    const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    std::vector<long> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        long c = a[i];
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(int e) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
    }
    std::vector<long> p(e + 1, 0);
    p[0] = -1;
    p[e] = 1;
    for (int d = 1; d < e; ++d)
        if (e % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(e, std::move(p)).first->second;
}

BigFloat to_bigfloat(const mpq_class& x) {
    return BigFloat(x.get_num().get_str()) / BigFloat(x.get_den().get_str());
}

int euler_phi(int e) {
    int r = e, m = e;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    if (m > 1) r -= r / m;
    return r;
}

Cyclotomic::Cyclotomic(const mpq_class& r) {
    if (r != 0) terms_.push_back({0, r});
}

Cyclotomic Cyclotomic::root(int e, long k) {
    Cyclotomic c;
    c.e_ = e;
    long kk = ((k % e) + e) % e;
    c.terms_.push_back({static_cast<int>(kk), mpq_class(1)});
    return c;
}

Cyclotomic Cyclotomic::from_terms(int e, std::vector<Term> terms) {
    Cyclotomic c;
    c.e_ = e;
    for (Term& t : terms) t.first = ((t.first % e) + e) % e;
    c.terms_ = std::move(terms);
    c.normalize();
    return c;
}

void Cyclotomic::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (Term& t : terms_) {
        if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
        else out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
    terms_ = std::move(out);
}

Cyclotomic Cyclotomic::lift(int E) const {
    if (E == e_) return *this;
    if (E % e_ != 0) throw Error("Inconsistent", "lift to a non-multiple conductor");
    Cyclotomic c;
    c.e_ = E;
    const int s = E / e_;
    c.terms_.reserve(terms_.size());
    for (const Term& t : terms_) c.terms_.push_back({t.first * s, t.second});
    return c;
}

namespace {
int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.terms_.empty()) return *this;
    const int E = lcm_int(e_, o.e_);
    if (E != e_) *this = lift(E);
    Cyclotomic b = o.lift(E);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < terms_.size() && terms_[i].first < b.terms_[j].first)) merged.push_back(std::move(terms_[i++]));
        else if (i == terms_.size() || b.terms_[j].first < terms_[i].first) merged.push_back(std::move(b.terms_[j++]));
        else {
            mpq_class s = terms_[i].second + b.terms_[j].second;
            if (s != 0) merged.push_back({terms_[i].first, s});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic c = *this;
    for (Term& t : c.terms_) t.second = -t.second;
    return c;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    const int E = lcm_int(e_, o.e_);
    Cyclotomic a = lift(E), b = o.lift(E);
    if (a.terms_.empty() || b.terms_.empty()) {
        terms_.clear();
        e_ = E;
        return *this;
    }
    std::vector<mpq_class> dense;
    std::map<int, mpq_class> sparse;
    const bool use_dense = a.terms_.size() * b.terms_.size() > static_cast<std::size_t>(E);
    if (use_dense) dense.assign(E, 0);
    for (const Term& x : a.terms_)
        for (const Term& y : b.terms_) {
            int k = x.first + y.first;
            if (k >= E) k -= E;
            if (use_dense) dense[k] += x.second * y.second;
            else sparse[k] += x.second * y.second;
        }
    terms_.clear();
    e_ = E;
    if (use_dense) {
        for (int k = 0; k < E; ++k)
            if (dense[k] != 0) terms_.push_back({k, dense[k]});
    } else {
        for (auto& [k, v] : sparse)
            if (v != 0) terms_.push_back({k, v});
    }
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const mpq_class& r) {
    if (r == 0) {
        terms_.clear();
        return *this;
    }
    for (Term& t : terms_) t.second *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const mpq_class& r) {
    if (r == 0) throw Error("DivisionByZero", "cyclotomic division by zero");
    for (Term& t : terms_) t.second /= r;
    return *this;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(long j) const {
    Cyclotomic c;
    c.e_ = e_;
    long jj = ((j % e_) + e_) % e_;
    for (const Term& t : terms_) c.terms_.push_back({static_cast<int>((t.first * jj) % e_), t.second});
    c.normalize();
    return c;
}

Cyclotomic Cyclotomic::pow(unsigned n) const {
    Cyclotomic r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

Cyclotomic Cyclotomic::reduced() const {
    const int phi = euler_phi(e_);
    if (terms_.empty() || terms_.back().first < phi) return *this;
    const std::vector<long>& P = cyclotomic_poly(e_);
    std::vector<std::pair<int, long>> nz;  // nonzero coefficients below the leading one
    for (int j = 0; j < phi; ++j)
        if (P[j] != 0) nz.push_back({j, P[j]});
    std::vector<mpq_class> d(e_, 0);
    for (const Term& t : terms_) d[t.first] = t.second;
    for (int i = e_ - 1; i >= phi; --i) {
        if (d[i] == 0) continue;
        mpq_class c = d[i];
        d[i] = 0;
        for (const auto& [j, a] : nz) d[i - phi + j] -= c * a;
    }
    Cyclotomic out;
    out.e_ = e_;
    for (int k = 0; k < phi; ++k)
        if (d[k] != 0) out.terms_.push_back({k, d[k]});
    return out;
}

bool Cyclotomic::is_zero() const { return reduced().terms_.empty(); }

bool Cyclotomic::is_rational() const {
    Cyclotomic r = reduced();
    return r.terms_.empty() || (r.terms_.size() == 1 && r.terms_[0].first == 0);
}

mpq_class Cyclotomic::rational() const {
    Cyclotomic r = reduced();
    if (r.terms_.empty()) return 0;
    if (r.terms_.size() == 1 && r.terms_[0].first == 0) return r.terms_[0].second;
    throw Error("NotRational", "value " + str() + " is not rational");
}

BigFloat Cyclotomic::real_part() const {
    const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
    BigFloat s = 0;
    for (const Term& t : terms_) s += to_bigfloat(t.second) * cos(two_pi * t.first / e_);
    return s;
}

BigFloat Cyclotomic::imag_part() const {
    const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
    BigFloat s = 0;
    for (const Term& t : terms_) s += to_bigfloat(t.second) * sin(two_pi * t.first / e_);
    return s;
}

std::complex<double> Cyclotomic::to_complex() const {
    return {static_cast<double>(real_part()), static_cast<double>(imag_part())};
}

Cyclotomic Cyclotomic::abs2() const { return (*this * conj()).reduced(); }

int Cyclotomic::real_sign() const {
    Cyclotomic r = reduced();
    if (r.terms_.empty()) return 0;
    if (!(r - r.conj()).is_zero()) throw Error("NotReal", "sign of a non-real value");
    BigFloat v = r.real_part();
    BigFloat bound = 0;
    for (const Term& t : r.terms_) bound += abs(to_bigfloat(t.second));
    bound *= BigFloat("1e-40");
    if (v > bound) return 1;
    if (v < -bound) return -1;
    throw Error("SignUndecided", "value within the embedding error bound but nonzero");
}

std::string Cyclotomic::str() const {
    Cyclotomic r = reduced();
    if (r.terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : r.terms_) {
        mpq_class c = t.second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (t.first == 0) os << c.get_str();
        else {
            if (c != 1) os << c.get_str() << "*";
            os << "z" << e_ << "^" << t.first;
        }
    }
    return os.str();
}

int Cyclotomic::compare_canonical(const Cyclotomic& a, const Cyclotomic& b) {
    const int E = lcm_int(a.e_, b.e_);
    Cyclotomic x = a.lift(E).reduced(), y = b.lift(E).reduced();
    const int phi = euler_phi(E);
    std::size_t i = 0, j = 0;
    for (int k = 0; k < phi; ++k) {
        mpq_class cx = 0, cy = 0;
        if (i < x.terms_.size() && x.terms_[i].first == k) cx = x.terms_[i++].second;
        if (j < y.terms_.size() && y.terms_[j].first == k) cy = y.terms_[j++].second;
        if (cx != cy) return cx < cy ? -1 : 1;
    }
    return 0;
}

}  // namespace cc
