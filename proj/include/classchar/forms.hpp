#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "classchar/field.hpp"
#include "classchar/matspace.hpp"

namespace cc {

enum class Family { GL, SL, SU, Sp, SO, Omega, GO };

enum class FormKind { None, Alternating, Symmetric, Hermitian, Quadratic };

// Form data in the standard basis. For orthogonal groups qmat is the upper
// triangular M with Q(v) = v^T M v and gram = M + M^T, in every characteristic.
// For hermitian forms h(x, y) = x^T gram conj(y) with conj(a) = a^q0.
struct FormData {
    FormKind kind = FormKind::None;
    Mat gram;
    Mat qmat;
    int q0 = 0;  // hermitian only
};

struct GroupSpec {
    Family family = Family::SL;
    int n = 0;
    int q = 0;    // field of definition: q0 for SU
    int eps = 0;  // +1 / -1 for even-dimensional orthogonal, 0 otherwise
    FieldPtr field;  // entry field: GF(q0^2) for SU
    FormData form;

    // Ambient algebraic group dimension.
    int D() const;
    // Canonical spec string, e.g. "Sp(4,3)", "O-(6,2)", "SU(3,2)".
    std::string name() const;
    bool orthogonal() const { return family == Family::SO || family == Family::Omega || family == Family::GO; }
};

// Parses "SL(n,q)", "GL(n,q)", "SU(n,q0)", "Sp(n,q)", "SO(n,q)", "SO+(n,q)",
// "SO-(n,q)", "GO(n,q)", "GO+(n,q)", "GO-(n,q)", "O+(n,q)", "O-(n,q)",
// "O(n,q)" (n odd), "Omega(n,q)", "Omega+(n,q)", "Omega-(n,q)"; case-insensitive.
// "O" always means the group Omega.
GroupSpec parse_spec(const std::string& s);
GroupSpec make_spec(Family fam, int n, int q, int eps = 0);

FormData standard_form(Family fam, int n, const Field& F, int eps);

// Q(v) for the quadratic form, B(u, v) = u^T gram v, and the hermitian product.
fe quad_value(const Field& F, const FormData& form, const Vec& v);
fe bilinear(const Field& F, const Mat& gram, const Vec& u, const Vec& v);
fe hermitian(const Field& F, const FormData& form, const Vec& u, const Vec& v);

bool is_isometry(const Field& F, const FormData& form, const Mat& g);
// Odd q: spinor norm of g in SO is a square. Even q: Dickson invariant is 0.
// Throws NotAnIsometry.
bool omega_membership(const Field& F, const FormData& form, const Mat& g);
// Spinor norm class via a constructive reflection decomposition: true if square.
bool spinor_norm_square(const Field& F, const FormData& form, const Mat& g);
// rank(g - 1) mod 2.
int dickson_invariant(const Field& F, const Mat& g);
// Full membership test for the group of the spec.
bool is_member(const GroupSpec& spec, const Mat& g);

// Orthogonal reflection in a nonsingular vector w (orthogonal transvection in
// characteristic 2).
Mat reflection(const Field& F, const FormData& form, const Vec& w);
// Eichler transformation E_{u,v}; u singular, v orthogonal to u.
Mat eichler(const Field& F, const FormData& form, const Vec& u, const Vec& v);

// Generating set; deterministic. For enumerable groups redundant candidates are
// pruned against the growing closure.
std::vector<Mat> generators(const GroupSpec& spec);
// Exact order by the product formulas.
mpz_class group_order(const GroupSpec& spec);
// q^D > |G| > q^D / 2 with q the field of definition.
bool order_sandwich_holds(const GroupSpec& spec);

// Number of nonzero singular vectors of an orthogonal form.
long long count_singular(const Field& F, const FormData& form, int n);
// Witt type certified from the singular count: +1, -1, or 0 (odd dimension).
int certified_type(const Field& F, const FormData& form, int n);

// All vectors of F^n in integer-code order (guarded).
std::vector<Vec> all_vectors(const Field& F, int n);
Vec unit_vector(int n, int i);

}  // namespace cc
