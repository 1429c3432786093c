#pragma once

#include <string>
#include <utility>
#include <vector>

#include "classchar/field.hpp"

namespace cc {

using Vec = std::vector<fe>;

// Dense square matrix over a field, row-major.
struct Mat {
    int n = 0;
    std::vector<fe> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
    fe& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    fe operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool operator<(const Mat& o) const { return a < o.a; }
};

Mat identity(int n);
Mat mat_mul(const Field& F, const Mat& x, const Mat& y);
void mat_mul_into(const Field& F, const fe* x, const fe* y, fe* out, int n);
Mat mat_add(const Field& F, const Mat& x, const Mat& y);
Mat mat_sub(const Field& F, const Mat& x, const Mat& y);
Mat mat_scale(const Field& F, fe c, const Mat& x);
Mat transpose(const Mat& x);
// Entrywise a -> a^(p^k).
Mat mat_frobenius(const Field& F, const Mat& x, int k);
Mat mat_pow(const Field& F, const Mat& x, long long e);
fe det(const Field& F, const Mat& x);
// Throws if singular.
Mat inverse(const Field& F, const Mat& x);
Vec mat_vec(const Field& F, const Mat& x, const Vec& v);
bool is_scalar(const Mat& x);
std::string mat_to_string(const Mat& x);

// Row reduction of an arbitrary rows x cols matrix (row-major). Returns the rank
// and leaves the reduced echelon form in place; pivots receives pivot columns.
int rref(const Field& F, std::vector<fe>& m, int rows, int cols, std::vector<int>* pivots = nullptr);

struct RankKernel {
    int rank = 0;
    std::vector<Vec> kernel;  // reduced echelon basis
};
RankKernel rank_and_kernel(const Field& F, const Mat& m);
// Kernel of a rows x n matrix.
RankKernel rank_and_kernel_rect(const Field& F, const std::vector<fe>& m, int rows, int cols);
int rank(const Field& F, const Mat& m);
// Rank of a list of vectors of length n.
int span_dim(const Field& F, const std::vector<Vec>& vs, int n);
// Reduced echelon basis of the span.
std::vector<Vec> echelon_basis(const Field& F, const std::vector<Vec>& vs, int n);

// Polynomials over GF(q), coefficients low-to-high with trailing zeros trimmed.
using Poly = std::vector<fe>;

int deg(const Poly& f);
void trim(Poly& f);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
// Quotient and remainder; b nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
Poly poly_monic(const Field& F, const Poly& a);
Poly poly_gcd(const Field& F, Poly a, Poly b);
Poly poly_powmod(const Field& F, const Poly& base, unsigned long long e, const Poly& m);
Poly poly_derivative(const Field& F, const Poly& a);
fe poly_eval(const Field& F, const Poly& f, fe x);
std::string poly_to_string(const Poly& f);

Poly char_poly(const Field& F, const Mat& m);
Mat eval_poly_at_matrix(const Field& F, const Poly& P, const Mat& m);
Mat companion(const Field& F, const Poly& monic);

struct Factor {
    Poly poly;  // monic irreducible
    int mult = 0;
    bool operator==(const Factor& o) const { return poly == o.poly && mult == o.mult; }
};
// Monic irreducible factors with multiplicities, sorted lexicographically
// (by degree, then coefficients from the top). Throws ZeroPolynomial.
std::vector<Factor> factor_squarefree_irreducible(const Field& F, const Poly& f);
// Irreducibility via gcd(x^(q^k) - x, f) = 1 for k <= deg/2.
bool is_irreducible(const Field& F, const Poly& f);

}  // namespace cc
