#include "classchar/matspace.hpp"

#include <algorithm>
#include <sstream>

namespace cc {

Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void mat_mul_into(const Field& F, const fe* x, const fe* y, fe* out, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            fe s = 0;
            for (int k = 0; k < n; ++k) {
                fe a = x[i * n + k];
                if (a == 0) continue;
                fe b = y[k * n + j];
                if (b == 0) continue;
                s = F.add(s, F.mul(a, b));
            }
            out[i * n + j] = s;
        }
    }
}

Mat mat_mul(const Field& F, const Mat& x, const Mat& y) {
    if (x.n != y.n) throw Error("DimensionMismatch", "matrix product of different sizes");
    Mat r(x.n);
    mat_mul_into(F, x.a.data(), y.a.data(), r.a.data(), x.n);
    return r;
}

Mat mat_add(const Field& F, const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
    return r;
}

Mat mat_sub(const Field& F, const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.sub(x.a[i], y.a[i]);
    return r;
}

Mat mat_scale(const Field& F, fe c, const Mat& x) {
    Mat r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.mul(c, x.a[i]);
    return r;
}

Mat transpose(const Mat& x) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r(j, i) = x(i, j);
    return r;
}

Mat mat_frobenius(const Field& F, const Mat& x, int k) {
    Mat r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.frobenius(x.a[i], k);
    return r;
}

Mat mat_pow(const Field& F, const Mat& x, long long e) {
    Mat base = e < 0 ? inverse(F, x) : x;
    if (e < 0) e = -e;
    Mat r = identity(x.n);
    while (e > 0) {
        if (e & 1) r = mat_mul(F, r, base);
        e >>= 1;
        if (e) base = mat_mul(F, base, base);
    }
    return r;
}

fe det(const Field& F, const Mat& x) {
    const int n = x.n;
    std::vector<fe> m = x.a;
    fe d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r * n + c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
            d = F.neg(d);
        }
        fe pv = m[c * n + c];
        d = F.mul(d, pv);
        fe pinv = F.inv(pv);
        for (int r = c + 1; r < n; ++r) {
            fe t = m[r * n + c];
            if (t == 0) continue;
            fe fac = F.mul(t, pinv);
            for (int j = c; j < n; ++j) m[r * n + j] = F.sub(m[r * n + j], F.mul(fac, m[c * n + j]));
        }
    }
    return d;
}

Mat inverse(const Field& F, const Mat& x) {
    const int n = x.n;
    const int w = 2 * n;
    std::vector<fe> m(static_cast<std::size_t>(n) * w, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i * w + j] = x(i, j);
        m[i * w + n + i] = 1;
    }
    std::vector<int> piv;
    int r = rref(F, m, n, w, &piv);
    if (r < n || piv[n - 1] != n - 1) throw Error("Singular", "matrix is not invertible");
    Mat out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = m[i * w + n + j];
    return out;
}

Vec mat_vec(const Field& F, const Mat& x, const Vec& v) {
    Vec r(x.n, 0);
    for (int i = 0; i < x.n; ++i) {
        fe s = 0;
        for (int j = 0; j < x.n; ++j) s = F.add(s, F.mul(x(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

bool is_scalar(const Mat& x) {
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            if (i != j && x(i, j) != 0) return false;
            if (i == j && x(i, i) != x(0, 0)) return false;
        }
    return true;
}

std::string mat_to_string(const Mat& x) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < x.n; ++i) {
        if (i) os << ',';
        os << '[';
        for (int j = 0; j < x.n; ++j) {
            if (j) os << ',';
            os << x(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

int rref(const Field& F, std::vector<fe>& m, int rows, int cols, std::vector<int>* pivots) {
    int r = 0;
    if (pivots) pivots->clear();
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<std::size_t>(i) * cols + c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j)
                std::swap(m[static_cast<std::size_t>(piv) * cols + j], m[static_cast<std::size_t>(r) * cols + j]);
        fe* row = &m[static_cast<std::size_t>(r) * cols];
        fe pinv = F.inv(row[c]);
        for (int j = c; j < cols; ++j) row[j] = F.mul(row[j], pinv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            fe* other = &m[static_cast<std::size_t>(i) * cols];
            fe t = other[c];
            if (t == 0) continue;
            for (int j = c; j < cols; ++j)
                if (row[j] != 0) other[j] = F.sub(other[j], F.mul(t, row[j]));
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

std::vector<Vec> echelon_basis(const Field& F, const std::vector<Vec>& vs, int n) {
    std::vector<fe> m;
    m.reserve(vs.size() * n);
    for (const Vec& v : vs) m.insert(m.end(), v.begin(), v.end());
    int r = rref(F, m, static_cast<int>(vs.size()), n);
    std::vector<Vec> out(r);
    for (int i = 0; i < r; ++i) out[i].assign(m.begin() + static_cast<std::ptrdiff_t>(i) * n, m.begin() + static_cast<std::ptrdiff_t>(i + 1) * n);
    return out;
}

int span_dim(const Field& F, const std::vector<Vec>& vs, int n) {
    if (vs.empty()) return 0;
    std::vector<fe> m;
    m.reserve(vs.size() * n);
    for (const Vec& v : vs) m.insert(m.end(), v.begin(), v.end());
    return rref(F, m, static_cast<int>(vs.size()), n);
}

RankKernel rank_and_kernel_rect(const Field& F, const std::vector<fe>& src, int rows, int cols) {
    std::vector<fe> m = src;
    std::vector<int> piv;
    RankKernel out;
    out.rank = rref(F, m, rows, cols, &piv);
    std::vector<char> is_piv(cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<Vec> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        Vec v(cols, 0);
        v[fc] = 1;
        for (int r = 0; r < out.rank; ++r) v[piv[r]] = F.neg(m[static_cast<std::size_t>(r) * cols + fc]);
        basis.push_back(std::move(v));
    }
    out.kernel = echelon_basis(F, basis, cols);
    return out;
}

RankKernel rank_and_kernel(const Field& F, const Mat& m) { return rank_and_kernel_rect(F, m.a, m.n, m.n); }

int rank(const Field& F, const Mat& m) {
    std::vector<fe> a = m.a;
    return rref(F, a, m.n, m.n);
}

// ---------------------------------------------------------------- polynomials

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw Error("ZeroPolynomial", "division by the zero polynomial");
    Poly r = a;
    trim(r);
    const int db = deg(b);
    if (deg(r) < db) return {{}, r};
    Poly quo(deg(r) - db + 1, 0);
    fe linv = F.inv(b.back());
    for (int i = deg(r); i >= db; --i) {
        fe c = r[i];
        if (c == 0) continue;
        fe t = F.mul(c, linv);
        quo[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(t, b[j]));
    }
    trim(r);
    trim(quo);
    return {quo, r};
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_monic(const Field& F, const Poly& a) {
    Poly r = a;
    trim(r);
    if (r.empty()) return r;
    fe linv = F.inv(r.back());
    for (fe& c : r) c = F.mul(c, linv);
    return r;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_powmod(const Field& F, const Poly& base, unsigned long long e, const Poly& m) {
    Poly r{1};
    r = poly_mod(F, r, m);
    Poly b = poly_mod(F, base, m);
    while (e > 0) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, b), m);
        e >>= 1;
        if (e) b = poly_mod(F, poly_mul(F, b, b), m);
    }
    return r;
}

Poly poly_derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        fe k = F.from_int(static_cast<long long>(i));
        r[i - 1] = F.mul(k, a[i]);
    }
    trim(r);
    return r;
}

fe poly_eval(const Field& F, const Poly& f, fe x) {
    fe r = 0;
    for (int i = deg(f); i >= 0; --i) r = F.add(F.mul(r, x), f[i]);
    return r;
}

std::string poly_to_string(const Poly& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(f); i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || f[i] != 1) os << f[i];
        if (i >= 1) os << 'x';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Poly char_poly(const Field& F, const Mat& m) {
    const int n = m.n;
    Mat h = m;
    // Similarity reduction to upper Hessenberg form.
    for (int c = 0; c + 2 <= n; ++c) {
        int piv = -1;
        for (int r = c + 1; r < n; ++r)
            if (h(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != c + 1) {
            for (int j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
        }
        fe pinv = F.inv(h(c + 1, c));
        for (int r = c + 2; r < n; ++r) {
            fe t = F.mul(h(r, c), pinv);
            if (t == 0) continue;
            for (int j = 0; j < n; ++j) h(r, j) = F.sub(h(r, j), F.mul(t, h(c + 1, j)));
            for (int i = 0; i < n; ++i) h(i, c + 1) = F.add(h(i, c + 1), F.mul(t, h(i, r)));
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    std::vector<Poly> p(n + 1);
    p[0] = {1};
    for (int k = 1; k <= n; ++k) {
        Poly cur = poly_mul(F, Poly{F.neg(h(k - 1, k - 1)), 1}, p[k - 1]);
        fe prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = F.mul(prod, h(i, i - 1));
            if (prod == 0) break;
            fe coef = F.mul(h(i - 1, k - 1), prod);
            if (coef == 0) continue;
            cur = poly_sub(F, cur, poly_mul(F, Poly{coef}, p[i - 1]));
        }
        p[k] = std::move(cur);
    }
    return p[n];
}

Mat eval_poly_at_matrix(const Field& F, const Poly& P, const Mat& m) {
    Mat r(m.n);
    for (int i = deg(P); i >= 0; --i) {
        r = mat_mul(F, r, m);
        for (int d = 0; d < m.n; ++d) r(d, d) = F.add(r(d, d), P[i]);
    }
    return r;
}

Mat companion(const Field& F, const Poly& f) {
    const int n = deg(f);
    Mat c(n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) c(i, n - 1) = F.neg(f[i]);
    return c;
}

namespace {

Poly x_poly() { return Poly{0, 1}; }

// a^q mod m, computed by repeated exponentiation.
Poly frob_mod(const Field& F, const Poly& a, const Poly& m) {
    return poly_powmod(F, a, static_cast<unsigned long long>(F.q()), m);
}

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Field& F, const Poly& a) {
    const int p = F.p();
    Poly r;
    for (int i = 0; i * p <= deg(a); ++i) r.push_back(F.frobenius(a[static_cast<std::size_t>(i) * p], F.f() - 1));
    trim(r);
    return r;
}

void squarefree(const Field& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly fd = poly_derivative(F, f);
    if (fd.empty()) {
        squarefree(F, pth_root(F, f), mult * F.p(), out);
        return;
    }
    Poly c = poly_gcd(F, f, fd);
    Poly w = poly_divmod(F, f, c).first;
    int i = 1;
    while (deg(w) > 0) {
        Poly y = poly_gcd(F, w, c);
        Poly fac = poly_divmod(F, w, y).first;
        if (deg(fac) > 0) out.push_back({poly_monic(F, fac), i * mult});
        w = y;
        c = poly_divmod(F, c, y).first;
        ++i;
    }
    if (deg(c) > 0) squarefree(F, pth_root(F, c), mult * F.p(), out);
}

// Enumerates the monic-free test polynomials used for splitting: x + c first,
// then all polynomials by integer code.
Poly splitting_candidate(const Field& F, long long idx) {
    const long long q = F.q();
    if (idx < q) return Poly{static_cast<fe>(idx), 1};
    idx -= q;
    // All polynomials of degree >= 2 with integer code ordering.
    Poly r;
    long long code = idx + q * q;  // skip constants and linear ones
    while (code > 0) {
        r.push_back(static_cast<fe>(code % q));
        code /= q;
    }
    trim(r);
    return r;
}

// Splits a squarefree product g of irreducibles of common degree d.
void equal_degree(const Field& F, const Poly& g, int d, std::vector<Poly>& out) {
    if (deg(g) == d) {
        out.push_back(poly_monic(F, g));
        return;
    }
    const long long q = F.q();
    for (long long idx = 0;; ++idx) {
        Poly u = splitting_candidate(F, idx);
        if (deg(u) >= 2 * deg(g)) throw Error("Inconsistent", "equal-degree splitting failed");
        Poly t;
        if (F.p() == 2) {
            // Absolute trace to GF(2) of u over GF(q^d).
            Poly cur = poly_mod(F, u, g);
            t = cur;
            for (int i = 1; i < F.f() * d; ++i) {
                cur = poly_powmod(F, cur, 2, g);
                t = poly_add(F, t, cur);
            }
        } else {
            // u^((q^d - 1)/2) = prod_{i<d} (u^((q-1)/2))^(q^i)
            Poly w = poly_powmod(F, u, static_cast<unsigned long long>((q - 1) / 2), g);
            t = w;
            Poly cur = w;
            for (int i = 1; i < d; ++i) {
                cur = frob_mod(F, cur, g);
                t = poly_mod(F, poly_mul(F, t, cur), g);
            }
            t = poly_sub(F, t, Poly{1});
        }
        Poly h = poly_gcd(F, g, t);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            equal_degree(F, h, d, out);
            equal_degree(F, poly_divmod(F, g, h).first, d, out);
            return;
        }
    }
}

bool factor_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (int i = deg(a); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

std::vector<Factor> factor_squarefree_irreducible(const Field& F, const Poly& f0) {
    Poly f = f0;
    trim(f);
    if (f.empty()) throw Error("ZeroPolynomial", "cannot factor the zero polynomial");
    f = poly_monic(F, f);
    std::vector<std::pair<Poly, int>> sq;
    squarefree(F, f, 1, sq);
    std::vector<Factor> out;
    for (auto& [g0, mult] : sq) {
        Poly g = g0;
        Poly h = poly_mod(F, x_poly(), g);
        for (int d = 1; deg(g) > 0; ++d) {
            if (2 * d > deg(g)) {
                out.push_back({poly_monic(F, g), mult});
                break;
            }
            h = frob_mod(F, h, g);
            Poly part = poly_gcd(F, g, poly_sub(F, h, x_poly()));
            if (deg(part) > 0) {
                std::vector<Poly> irr;
                equal_degree(F, part, d, irr);
                for (Poly& p : irr) out.push_back({p, mult});
                g = poly_divmod(F, g, part).first;
                h = poly_mod(F, h, g);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly != b.poly) return factor_less(a.poly, b.poly);
        return a.mult < b.mult;
    });
    return out;
}

bool is_irreducible(const Field& F, const Poly& f0) {
    Poly f = poly_monic(F, f0);
    if (deg(f) < 1) return false;
    Poly h = poly_mod(F, x_poly(), f);
    for (int k = 1; 2 * k <= deg(f); ++k) {
        h = frob_mod(F, h, f);
        if (deg(poly_gcd(F, f, poly_sub(F, h, x_poly()))) > 0) return false;
    }
    return true;
}

}  // namespace cc
