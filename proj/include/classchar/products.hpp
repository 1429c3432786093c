#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "classchar/chars.hpp"
#include "classchar/grp.hpp"
#include "classchar/report.hpp"

namespace cc {

struct CoverReport {
    std::string group;
    int x = 0;
    // sum_chi chi(x)^2 conj(chi(g)) / chi(1) for every class g.
    std::vector<mpq_class> frob;
    std::vector<char> covered;
    std::vector<int> missed;
    // frob[g] |x^G|^2 / |G| equals the structure constant a(x, x, g) for every g.
    bool sc_agrees = true;
    bool mod_center = false;  // covered is taken modulo central multiplication

    nlohmann::json to_json() const;
};

CoverReport class_square(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t, int x);

struct ThompsonResult {
    std::string group;
    bool mod_center = false;
    std::vector<int> scan_order;  // largest support first, then class id
    std::vector<char> witness;    // per class: x^G x^G meets every coset of Z(G)
    std::optional<int> first_witness;
    bool discrepancy_free = true;  // Frobenius sums agree with structure constants
    std::string note;
    nlohmann::json to_json() const;
};
ThompsonResult thompson_search(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t);

Mat block_diag(const Mat& a, const Mat& b);
// diag(g, I_(n - dim g)).
Mat pad_identity(const Mat& g, int n);

struct FlipRow {
    int x = 0, y = 0;  // classes of the two factors
    bool conjugate = false;
};
struct FlipResult {
    std::string a, b, ambient;
    bool hypothesis = true;  // false for odd-q Omega with an odd half-dimension
    std::vector<FlipRow> rows;
    bool all_conjugate() const;
};
// diag(x, y) against diag(y, x) in the ambient group for every pair of class
// representatives. The ambient must be enumerable; both factors use the
// ambient family with type +.
FlipResult flip_conjugacy_check(const GroupSpec& a, const GroupSpec& b, const std::string& cache_dir = "");
BoundReport flip_report(const FlipResult& f);

// Real classes z of the ambient with diag(g, I) in z^G z^G.
CoverReport real_cover_check(const EnumeratedGroup& ambient, const StructureConstants& sc, const CharTable& t, const Mat& g,
                             std::vector<int>* real_witnesses);

// For real x in A and real y in B, every class covered by x or by y (embedded
// top-left) is covered by diag(x, y) in the ambient.
BoundReport union_check(const GroupSpec& a, const GroupSpec& b, const std::string& cache_dir = "");

// #{(x, y) : [x, y] = g} = |G| sum_chi chi(g)/chi(1), with a scan cross-check
// when |G| <= scan_limit.
BoundReport commutator_report(const EnumeratedGroup& G, const CharTable& t, std::size_t scan_limit = 2000);

// Image of (x, y) -> x^N y^N as a union of classes.
BoundReport power_word_check(const EnumeratedGroup& G, const StructureConstants& sc, long N);

// Regular semisimple classes of SL or SU: covered classes and the largest
// support among classes not covered.
BoundReport singer_square_scan(const EnumeratedGroup& G, const StructureConstants& sc, const CharTable& t);

}  // namespace cc
