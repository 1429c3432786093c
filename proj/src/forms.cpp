#include "classchar/forms.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <regex>
#include <unordered_set>

namespace cc {

namespace {

int isqrt_exact(int q) {
    for (int r = 1; r * r <= q; ++r)
        if (r * r == q) return r;
    return 0;
}

std::string mat_key(const Mat& m) { return std::string(reinterpret_cast<const char*>(m.a.data()), m.a.size() * sizeof(fe)); }

bool in_closure(const Field& F, const std::unordered_set<std::string>& set, const Mat& m) {
    (void)F;
    return set.count(mat_key(m)) > 0;
}

std::unordered_set<std::string> closure_set(const Field& F, const std::vector<Mat>& gens, int n) {
    std::unordered_set<std::string> seen;
    std::deque<Mat> todo;
    Mat id = identity(n);
    seen.insert(mat_key(id));
    todo.push_back(id);
    while (!todo.empty()) {
        Mat x = std::move(todo.front());
        todo.pop_front();
        for (const Mat& g : gens) {
            Mat y = mat_mul(F, g, x);
            if (seen.insert(mat_key(y)).second) todo.push_back(std::move(y));
        }
    }
    return seen;
}

// Vectors whose first nonzero coordinate is 1 (one per line), in code order.
// When q^n is large only vectors with at most two nonzero coordinates are used.
std::vector<Vec> line_representatives(const Field& F, int n) {
    std::vector<Vec> out;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= F.q();
    const bool sparse = total > 20000;
    if (!sparse) {
        for (const Vec& v : all_vectors(F, n)) {
            auto it = std::find_if(v.begin(), v.end(), [](fe c) { return c != 0; });
            if (it != v.end() && *it == 1) out.push_back(v);
        }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out.push_back(unit_vector(n, i));
        for (int j = i + 1; j < n; ++j)
            for (int c = 1; c < F.q(); ++c) {
                Vec v = unit_vector(n, i);
                v[j] = static_cast<fe>(c);
                out.push_back(v);
            }
    }
    return out;
}

Mat rank_one_update(const Field& F, const Vec& u, const Vec& row, fe c) {
    const int n = static_cast<int>(u.size());
    Mat g = identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = F.add(g(i, j), F.mul(c, F.mul(u[i], row[j])));
    return g;
}

// Row vector w^T gram.
Vec row_times(const Field& F, const Vec& w, const Mat& gram) {
    const int n = gram.n;
    Vec r(n, 0);
    for (int j = 0; j < n; ++j) {
        fe s = 0;
        for (int k = 0; k < n; ++k) s = F.add(s, F.mul(w[k], gram(k, j)));
        r[j] = s;
    }
    return r;
}

mpz_class pw(long long b, long long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

Vec unit_vector(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

std::vector<Vec> all_vectors(const Field& F, int n) {
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= F.q();
        if (total > 20000000) throw Error("GuardExceeded", "vector enumeration too large");
    }
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(total));
    for (long long code = 0; code < total; ++code) {
        Vec v(n);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            v[i] = static_cast<fe>(c % F.q());
            c /= F.q();
        }
        out.push_back(std::move(v));
    }
    return out;
}

int GroupSpec::D() const {
    switch (family) {
        case Family::GL: return n * n;
        case Family::SL: return n * n - 1;
        case Family::SU: return n * n - 1;
        case Family::Sp: return n * (n + 1) / 2;
        default: return n * (n - 1) / 2;
    }
}

std::string GroupSpec::name() const {
    std::string args = "(" + std::to_string(n) + "," + std::to_string(q) + ")";
    std::string sign = eps > 0 ? "+" : (eps < 0 ? "-" : "");
    switch (family) {
        case Family::GL: return "GL" + args;
        case Family::SL: return "SL" + args;
        case Family::SU: return "SU" + args;
        case Family::Sp: return "Sp" + args;
        case Family::SO: return "SO" + sign + args;
        case Family::GO: return "GO" + sign + args;
        case Family::Omega: return (n % 2 ? "Omega" : "O" + sign) + args;
    }
    return "?";
}

FormData standard_form(Family fam, int n, const Field& F, int eps) {
    FormData fd;
    if (n < 1) throw Error("InconsistentSpec", "dimension must be positive");
    switch (fam) {
        case Family::GL:
        case Family::SL:
            fd.kind = FormKind::None;
            return fd;
        case Family::Sp: {
            if (n % 2) throw Error("InconsistentSpec", "symplectic dimension must be even");
            fd.kind = FormKind::Alternating;
            fd.gram = Mat(n);
            for (int i = 0; i < n; i += 2) {
                fd.gram(i, i + 1) = 1;
                fd.gram(i + 1, i) = F.neg(1);
            }
            return fd;
        }
        case Family::SU: {
            int q0 = isqrt_exact(F.q());
            if (q0 == 0) throw Error("InconsistentSpec", "unitary groups need a square field order");
            fd.kind = FormKind::Hermitian;
            fd.q0 = q0;
            fd.gram = Mat(n);
            for (int i = 0; i + 1 < n; i += 2) {
                fd.gram(i, i + 1) = 1;
                fd.gram(i + 1, i) = 1;
            }
            if (n % 2) fd.gram(n - 1, n - 1) = 1;
            return fd;
        }
        case Family::SO:
        case Family::Omega:
        case Family::GO: {
            if (n % 2 == 1 && F.p() == 2) throw Error("InconsistentSpec", "odd-dimensional orthogonal groups need odd q");
            if (fam == Family::SO && F.p() == 2) throw Error("InconsistentSpec", "SO needs odd q; use Omega or GO");
            if (n % 2 == 0 && eps != 1 && eps != -1) throw Error("InconsistentSpec", "even dimension needs a type + or -");
            if (n % 2 == 1 && eps != 0) throw Error("InconsistentSpec", "odd dimension has no type");
            fd.kind = F.p() == 2 ? FormKind::Quadratic : FormKind::Symmetric;
            fd.qmat = Mat(n);
            const int pairs = n / 2;
            for (int i = 0; i < pairs; ++i) fd.qmat(2 * i, 2 * i + 1) = 1;
            if (eps == -1) {
                // x^2 + xy + nu y^2 on the last pair, t^2 + t + nu irreducible.
                fe nu = 0;
                for (int c = 1; c < F.q(); ++c)
                    if (is_irreducible(F, Poly{static_cast<fe>(c), 1, 1})) {
                        nu = static_cast<fe>(c);
                        break;
                    }
                if (nu == 0) throw Error("InconsistentSpec", "no anisotropic binary form");
                int a = 2 * (pairs - 1);
                fd.qmat(a, a) = 1;
                fd.qmat(a + 1, a + 1) = nu;
            }
            if (n % 2 == 1) fd.qmat(n - 1, n - 1) = 1;
            fd.gram = mat_add(F, fd.qmat, transpose(fd.qmat));
            return fd;
        }
    }
    return fd;
}

GroupSpec make_spec(Family fam, int n, int q, int eps) {
    GroupSpec s;
    s.family = fam;
    s.n = n;
    s.q = q;
    s.eps = eps;
    if (n < 1) throw Error("InconsistentSpec", "dimension must be positive");
    if (fam == Family::SU) {
        long long q2 = static_cast<long long>(q) * q;
        if (q2 > 65536) throw Error("EnvelopeExceeded", "field order exceeds 2^16");
        s.field = make_field_q(static_cast<int>(q2));
    } else {
        s.field = make_field_q(q);
    }
    if (fam != Family::SO && fam != Family::Omega && fam != Family::GO && eps != 0)
        throw Error("InconsistentSpec", "type sign only applies to orthogonal groups");
    s.form = standard_form(fam, n, *s.field, eps);
    return s;
}

GroupSpec parse_spec(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    // Accept the Greek capital omega as an alias.
    const std::string omega_utf8 = "\xce\xa9";
    const std::string omega_lower = "\xcf\x89";
    for (const std::string& w : {omega_utf8, omega_lower}) {
        auto pos = s.find(w);
        if (pos != std::string::npos) s.replace(pos, w.size(), "omega");
    }
    static const std::regex re(R"(^(gl|sl|su|sp|so|go|o|omega)([+-]?)\((\d+),(\d+)\)$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Error("ParseError", "cannot parse group spec '" + raw + "'");
    const std::string fam = m[1];
    const std::string sign = m[2];
    const int n = std::stoi(m[3]);
    const int q = std::stoi(m[4]);
    int eps = sign == "+" ? 1 : (sign == "-" ? -1 : 0);
    Family f;
    if (fam == "gl") f = Family::GL;
    else if (fam == "sl") f = Family::SL;
    else if (fam == "su") f = Family::SU;
    else if (fam == "sp") f = Family::Sp;
    else if (fam == "so") f = Family::SO;
    else if (fam == "go") f = Family::GO;
    else f = Family::Omega;
    if (sign.size() && f != Family::SO && f != Family::GO && f != Family::Omega)
        throw Error("ParseError", "type sign only applies to orthogonal groups");
    return make_spec(f, n, q, eps);
}

fe bilinear(const Field& F, const Mat& gram, const Vec& u, const Vec& v) {
    fe s = 0;
    for (int i = 0; i < gram.n; ++i) {
        if (u[i] == 0) continue;
        fe t = 0;
        for (int j = 0; j < gram.n; ++j) t = F.add(t, F.mul(gram(i, j), v[j]));
        s = F.add(s, F.mul(u[i], t));
    }
    return s;
}

fe quad_value(const Field& F, const FormData& form, const Vec& v) { return bilinear(F, form.qmat, v, v); }

fe hermitian(const Field& F, const FormData& form, const Vec& u, const Vec& v) {
    Vec cv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) cv[i] = F.pow(v[i], form.q0);
    return bilinear(F, form.gram, u, cv);
}

bool is_isometry(const Field& F, const FormData& form, const Mat& g) {
    if (form.kind == FormKind::None) return true;
    if (g.n != form.gram.n) throw Error("DimensionMismatch", "matrix and form sizes differ");
    const int n = g.n;
    Mat rhs = g;
    if (form.kind == FormKind::Hermitian)
        for (fe& c : rhs.a) c = F.pow(c, form.q0);
    if (mat_mul(F, mat_mul(F, transpose(g), form.gram), rhs) != form.gram) return false;
    if (form.kind == FormKind::Quadratic || form.kind == FormKind::Symmetric) {
        for (int j = 0; j < n; ++j) {
            Vec col(n);
            for (int i = 0; i < n; ++i) col[i] = g(i, j);
            if (quad_value(F, form, col) != form.qmat(j, j)) return false;
        }
    }
    return true;
}

Mat reflection(const Field& F, const FormData& form, const Vec& w) {
    fe Qw = quad_value(F, form, w);
    if (Qw == 0) throw Error("SingularVector", "reflection needs a nonsingular vector");
    // x -> x - B(x, w)/Q(w) w
    return rank_one_update(F, w, row_times(F, w, form.gram), F.neg(F.inv(Qw)));
}

Mat eichler(const Field& F, const FormData& form, const Vec& u, const Vec& v) {
    const int n = static_cast<int>(u.size());
    Vec ru = row_times(F, u, form.gram);
    Vec rv = row_times(F, v, form.gram);
    fe Qv = quad_value(F, form, v);
    Mat g = identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fe t = F.sub(F.mul(v[i], ru[j]), F.mul(u[i], rv[j]));
            t = F.sub(t, F.mul(Qv, F.mul(u[i], ru[j])));
            g(i, j) = F.add(g(i, j), t);
        }
    return g;
}

int dickson_invariant(const Field& F, const Mat& g) { return rank(F, mat_sub(F, g, identity(g.n))) % 2; }

bool spinor_norm_square(const Field& F, const FormData& form, const Mat& g0) {
    const int n = g0.n;
    // Orthogonal basis of nonsingular vectors by Gram-Schmidt. In a nondegenerate
    // space either a basis vector or a sum of two is nonsingular.
    std::vector<Vec> basis;
    std::vector<Vec> space;
    for (int i = 0; i < n; ++i) space.push_back(unit_vector(n, i));
    while (!space.empty()) {
        Vec pick;
        for (std::size_t i = 0; i < space.size() && pick.empty(); ++i)
            if (quad_value(F, form, space[i]) != 0) pick = space[i];
        for (std::size_t i = 0; i < space.size() && pick.empty(); ++i)
            for (std::size_t j = i + 1; j < space.size() && pick.empty(); ++j) {
                Vec s(n);
                for (int k = 0; k < n; ++k) s[k] = F.add(space[i][k], space[j][k]);
                if (quad_value(F, form, s) != 0) pick = s;
            }
        if (pick.empty()) throw Error("Inconsistent", "no nonsingular vector in a nondegenerate space");
        basis.push_back(pick);
        fe Bpp = bilinear(F, form.gram, pick, pick);
        std::vector<Vec> next;
        for (const Vec& s : space) {
            fe c = F.div(bilinear(F, form.gram, s, pick), Bpp);
            Vec t(n);
            for (int k = 0; k < n; ++k) t[k] = F.sub(s[k], F.mul(c, pick[k]));
            next.push_back(t);
        }
        space = echelon_basis(F, next, n);
    }
    Mat h = g0;
    fe norm = 1;
    for (const Vec& y : basis) {
        Vec x = mat_vec(F, h, y);
        if (x == y) continue;
        Vec d(n), s(n);
        for (int k = 0; k < n; ++k) {
            d[k] = F.sub(x[k], y[k]);
            s[k] = F.add(x[k], y[k]);
        }
        fe Qd = quad_value(F, form, d);
        if (Qd != 0) {
            h = mat_mul(F, reflection(F, form, d), h);
            norm = F.mul(norm, Qd);
        } else {
            fe Qs = quad_value(F, form, s);
            h = mat_mul(F, reflection(F, form, y), mat_mul(F, reflection(F, form, s), h));
            norm = F.mul(norm, F.mul(Qs, quad_value(F, form, y)));
        }
    }
    if (h != identity(n)) throw Error("Inconsistent", "reflection decomposition did not terminate at the identity");
    return F.is_square(norm);
}

bool omega_membership(const Field& F, const FormData& form, const Mat& g) {
    if (!is_isometry(F, form, g)) throw Error("NotAnIsometry", "matrix does not preserve the form");
    if (F.p() == 2) return dickson_invariant(F, g) == 0;
    return spinor_norm_square(F, form, g);
}

bool is_member(const GroupSpec& spec, const Mat& g) {
    const Field& F = *spec.field;
    if (g.n != spec.n) return false;
    fe d = det(F, g);
    if (d == 0) return false;
    if (!is_isometry(F, spec.form, g)) return false;
    switch (spec.family) {
        case Family::GL:
        case Family::GO: return true;
        case Family::Omega:
            if (d != 1) return false;
            return omega_membership(F, spec.form, g);
        default: return d == 1;
    }
}

long long count_singular(const Field& F, const FormData& form, int n) {
    long long c = 0;
    for (const Vec& v : all_vectors(F, n))
        if (quad_value(F, form, v) == 0) ++c;
    return c - 1;
}

int certified_type(const Field& F, const FormData& form, int n) {
    if (n % 2) return 0;
    const int m = n / 2;
    long long q = F.q();
    long long qm = 1, qm1 = 1;
    for (int i = 0; i < m; ++i) qm *= q;
    qm1 = qm / q;
    long long c = count_singular(F, form, n);
    if (c == (qm - 1) * (qm1 + 1)) return 1;
    if (c == (qm + 1) * (qm1 - 1)) return -1;
    throw Error("Inconsistent", "singular vector count matches neither type");
}

mpz_class group_order(const GroupSpec& spec) {
    const int n = spec.n;
    const long q = spec.q;
    mpz_class r = 1;
    switch (spec.family) {
        case Family::GL:
        case Family::SL: {
            r = pw(q, static_cast<long long>(n) * (n - 1) / 2);
            for (int i = 1; i <= n; ++i) r *= pw(q, i) - 1;
            if (spec.family == Family::SL) r /= (q - 1);
            return r;
        }
        case Family::SU: {
            r = pw(q, static_cast<long long>(n) * (n - 1) / 2);
            for (int i = 2; i <= n; ++i) r *= pw(q, i) - (i % 2 ? -1 : 1);
            return r;
        }
        case Family::Sp: {
            int m = n / 2;
            r = pw(q, static_cast<long long>(m) * m);
            for (int i = 1; i <= m; ++i) r *= pw(q, 2 * i) - 1;
            return r;
        }
        default: break;
    }
    // Orthogonal: full isometry group first.
    mpz_class go;
    if (n % 2) {
        int m = n / 2;
        go = 2 * pw(q, static_cast<long long>(m) * m);
        for (int i = 1; i <= m; ++i) go *= pw(q, 2 * i) - 1;
    } else {
        int m = n / 2;
        go = 2 * pw(q, static_cast<long long>(m) * (m - 1)) * (pw(q, m) - spec.eps);
        for (int i = 1; i < m; ++i) go *= pw(q, 2 * i) - 1;
    }
    const bool odd = q % 2 == 1;
    switch (spec.family) {
        case Family::GO: return go;
        case Family::SO: return go / 2;
        case Family::Omega: return odd ? go / 4 : go / 2;
        default: return go;
    }
}

bool order_sandwich_holds(const GroupSpec& spec) {
    mpz_class qd = pw(spec.q, spec.D());
    mpz_class o = group_order(spec);
    return qd > o && 2 * o > qd;
}

std::vector<Mat> generators(const GroupSpec& spec) {
    const Field& F = *spec.field;
    const int n = spec.n;
    std::vector<Mat> cand;
    const int f = F.f();
    auto elementary = [&](int i, int j, fe a) {
        Mat m = identity(n);
        m(i, j) = a;
        return m;
    };

    switch (spec.family) {
        case Family::GL:
        case Family::SL: {
            for (int i = 0; i + 1 < n; ++i)
                for (int l = 0; l < f; ++l) {
                    cand.push_back(elementary(i, i + 1, F.exp(l)));
                    cand.push_back(elementary(i + 1, i, F.exp(l)));
                }
            if (n >= 2 && F.q() > 2) {
                Mat t = identity(n);
                t(0, 0) = F.primitive();
                t(1, 1) = F.inv(F.primitive());
                cand.push_back(t);
            }
            if (spec.family == Family::GL && F.q() > 2) {
                Mat t = identity(n);
                t(0, 0) = F.primitive();
                cand.push_back(t);
            }
            break;
        }
        case Family::Sp: {
            const int m = n / 2;
            for (int l = 0; l < f; ++l) {
                fe a = F.exp(l);
                for (int i = 0; i < m; ++i) {
                    // x -> x + a B(x, e_i) e_i and the same for f_i.
                    cand.push_back(rank_one_update(F, unit_vector(n, 2 * i), row_times(F, unit_vector(n, 2 * i), spec.form.gram), a));
                    cand.push_back(rank_one_update(F, unit_vector(n, 2 * i + 1), row_times(F, unit_vector(n, 2 * i + 1), spec.form.gram), a));
                }
                for (int i = 0; i + 1 < m; ++i) {
                    const int ei = 2 * i, fi = 2 * i + 1, ej = 2 * i + 2, fj = 2 * i + 3;
                    Mat s = identity(n);
                    s(ei, ej) = a;
                    s(fj, fi) = F.neg(a);
                    cand.push_back(s);
                    Mat t = identity(n);
                    t(ej, ei) = a;
                    t(fi, fj) = F.neg(a);
                    cand.push_back(t);
                }
            }
            break;
        }
        case Family::SO:
        case Family::Omega:
        case Family::GO: {
            const FormData& form = spec.form;
            std::vector<Vec> lines = line_representatives(F, n);
            std::vector<Vec> nonsing;
            for (const Vec& v : lines)
                if (quad_value(F, form, v) != 0) nonsing.push_back(v);
            if (nonsing.empty()) throw Error("Inconsistent", "no nonsingular vectors");
            const Vec& v0 = nonsing.front();
            if (F.p() != 2) {
                if (spec.family == Family::GO) {
                    for (const Vec& u : nonsing) cand.push_back(reflection(F, form, u));
                } else if (spec.family == Family::SO) {
                    Mat r0 = reflection(F, form, v0);
                    for (const Vec& u : nonsing)
                        if (u != v0) cand.push_back(mat_mul(F, reflection(F, form, u), r0));
                } else {
                    const Vec* va = nullptr;
                    const Vec* vb = nullptr;
                    for (const Vec& u : nonsing) {
                        bool sq = F.is_square(quad_value(F, form, u));
                        if (sq && !va) va = &u;
                        if (!sq && !vb) vb = &u;
                    }
                    for (const Vec& u : nonsing) {
                        bool sq = F.is_square(quad_value(F, form, u));
                        const Vec* ref = sq ? va : vb;
                        if (ref && u != *ref) cand.push_back(mat_mul(F, reflection(F, form, u), reflection(F, form, *ref)));
                    }
                }
            } else {
                Mat r0 = reflection(F, form, v0);
                for (const Vec& u : nonsing)
                    if (u != v0) cand.push_back(mat_mul(F, reflection(F, form, u), r0));
                // Eichler transformations along the hyperbolic basis vectors.
                const int hyp = 2 * (n / 2 - (spec.eps == -1 ? 1 : 0));
                for (int i = 0; i < hyp; ++i) {
                    Vec u = unit_vector(n, i);
                    for (int j = 0; j < n; ++j) {
                        if (j == i) continue;
                        Vec v = unit_vector(n, j);
                        if (bilinear(F, form.gram, u, v) != 0) continue;
                        for (int l = 0; l < f; ++l) {
                            Vec av = v;
                            for (fe& c : av) c = F.mul(c, F.exp(l));
                            cand.push_back(eichler(F, form, u, av));
                        }
                    }
                }
                if (spec.family == Family::GO) cand.push_back(r0);
            }
            break;
        }
        case Family::SU: {
            const FormData& form = spec.form;
            const int q0 = form.q0;
            std::vector<Vec> lines = line_representatives(F, n);
            // Nonzero elements with a + a^q0 = 0.
            std::vector<fe> trace_zero;
            for (int a = 1; a < F.q(); ++a)
                if (F.add(static_cast<fe>(a), F.pow(static_cast<fe>(a), q0)) == 0) trace_zero.push_back(static_cast<fe>(a));
            fe zeta = F.exp(q0 - 1);  // generator of the norm-one group
            auto conj_row = [&](const Vec& u) {
                Vec cu(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) cu[i] = F.pow(u[i], q0);
                // row j: (gram conj(u))_j
                Vec r(n, 0);
                for (int j = 0; j < n; ++j) {
                    fe s = 0;
                    for (int k = 0; k < n; ++k) s = F.add(s, F.mul(form.gram(j, k), cu[k]));
                    r[j] = s;
                }
                return r;
            };
            const Vec* v0 = nullptr;
            for (const Vec& u : lines)
                if (hermitian(F, form, u, u) != 0) {
                    v0 = &u;
                    break;
                }
            auto quasi = [&](const Vec& u, fe z) {
                fe huu = hermitian(F, form, u, u);
                fe c = F.div(F.sub(z, 1), huu);
                return rank_one_update(F, u, conj_row(u), c);
            };
            for (const Vec& u : lines) {
                if (hermitian(F, form, u, u) != 0) continue;
                for (fe a : trace_zero) cand.push_back(rank_one_update(F, u, conj_row(u), a));
            }
            if (v0 && zeta != 1) {
                Mat rv = quasi(*v0, F.inv(zeta));
                for (const Vec& u : lines) {
                    if (hermitian(F, form, u, u) == 0 || u == *v0) continue;
                    cand.push_back(mat_mul(F, quasi(u, zeta), rv));
                }
            }
            break;
        }
    }

    // Drop identities and duplicates, keeping the first occurrence.
    std::vector<Mat> uniq;
    {
        std::unordered_set<std::string> seen;
        Mat id = identity(n);
        for (Mat& m : cand) {
            if (m == id) continue;
            if (seen.insert(mat_key(m)).second) uniq.push_back(std::move(m));
        }
    }
    const bool heavy = spec.orthogonal() || spec.family == Family::SU;
    const mpz_class ord = group_order(spec);
    if (!heavy || ord > 200000) return uniq;

    const std::size_t target = ord.get_ui();
    std::vector<Mat> kept;
    std::unordered_set<std::string> current;
    current.insert(mat_key(identity(n)));
    for (const Mat& m : uniq) {
        if (in_closure(F, current, m)) continue;
        kept.push_back(m);
        current = closure_set(F, kept, n);
        if (current.size() >= target) break;
    }
    return kept;
}

}  // namespace cc
