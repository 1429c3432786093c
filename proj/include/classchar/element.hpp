#pragma once

#include <map>
#include <vector>

#include "classchar/forms.hpp"
#include "classchar/matspace.hpp"
#include "classchar/report.hpp"

namespace cc {

class EnumeratedGroup;
struct ClassData;

struct EigenBlock {
    Poly factor;      // monic irreducible factor of the characteristic polynomial
    int alg_mult = 0;  // multiplicity in the characteristic polynomial
    int geom_mult = 0; // dim ker f(g) / deg f
};

struct SupportProfile {
    int n = 0;
    std::vector<EigenBlock> blocks;
    int supp = 0;
};

SupportProfile support(const Field& F, const Mat& g);

// Partition stored as counts: parts[i] = number of blocks of size i (parts[0] unused).
using Partition = std::vector<int>;

struct JordanType {
    Partition unipotent;  // Jordan type of the unipotent part on all of V
    // For each factor f of the characteristic polynomial of g, the Jordan type of
    // the unipotent part on one eigenspace of the semisimple part over the closure.
    std::vector<std::pair<Poly, Partition>> per_factor;
};

struct JordanDecomposition {
    Mat semisimple;
    Mat unipotent;
    JordanType type;
};

// Multiplicative order of an invertible matrix (by repeated multiplication).
long matrix_order(const Field& F, const Mat& g, long cap = 100000000);
// order <= 0 means "compute it".
JordanDecomposition jordan_decompose(const Field& F, const Mat& g, long order = 0);
// Partition of a unipotent matrix from the kernel ladder dim ker (u - 1)^j.
Partition unipotent_partition(const Field& F, const Mat& u);
// Partition from counts of block sizes given in descending order.
Partition partition_from_blocks(const std::vector<int>& sizes);
std::vector<int> blocks_descending(const Partition& p);
int partition_size(const Partition& p);
std::string partition_to_string(const Partition& p);

enum class CentFamily { GL, Sp, GO };

// Twice the centralizer dimension, so the half-integer formulas stay exact:
//   GL: 2 * sum_{i,j} min(i,j) n_i n_j
//   Sp: sum i n_i^2 + 2 sum_{i<j} i n_i n_j + sum_{i odd} n_i
//   GO: sum i n_i^2 + 2 sum_{i<j} i n_i n_j - sum_{i odd} n_i
long centralizer_dim2(const Partition& p, CentFamily fam);
// Dimension of the centralizer in GL over the closure from the Jordan type.
long gl_centralizer_dim(const JordanType& jt);
// dim of {X : gX = Xg}, computed as the kernel of the commutator map.
int commutant_dim(const Field& F, const Mat& g);

// sum_i i n_i^2 + 2 sum_{i<j} i n_i n_j and sum_k (2k-1) m_k.
std::pair<long, long> two_ways(const Partition& p);

// Class-size sandwich rows for one class: the general support bounds and the
// family-specific bounds, each pass/fail or advisory.
std::vector<BoundRow> check_sandwich(const EnumeratedGroup& G, const ClassData& cls);
BoundReport sandwich_report(const EnumeratedGroup& G);

// Unipotent centralizer windows in Sp(V) and GO(V): |C| from enumeration
// against the polynomial windows. For orthogonal groups the centralizer is
// taken in the full isometry group GO, enumerated separately.
BoundReport unipotent_window_report(const EnumeratedGroup& G, const EnumeratedGroup* go);

// Exhaustive checks over an enumerated linear group.
BoundReport gl_s_dimension_report(const EnumeratedGroup& G);
BoundReport matrix_cent_report(const EnumeratedGroup& G, const std::vector<int>& nu_percent);
BoundReport alpha_eps_report(const EnumeratedGroup& G, const std::vector<mpq_class>& eps);
BoundReport two_ways_report(int count, int max_n, unsigned long seed);

}  // namespace cc
