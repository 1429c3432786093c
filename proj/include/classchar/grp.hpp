#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "classchar/forms.hpp"

namespace cc {

using eid = std::uint32_t;

struct ClassData {
    int id = 0;
    eid rep = 0;
    mpz_class size;
    mpz_class centralizer_order;
    int support = 0;
    bool is_real = false;
    long long order_of_rep = 1;
    int inverse_class = 0;
};

// Exact class-indexed probability vector.
struct Distribution {
    std::vector<mpq_class> p;
};

class EnumeratedGroup {
public:
    GroupSpec spec;
    FieldPtr field;
    int n = 0;
    int m = 0;  // entries per element

    std::vector<fe> elems;  // flat, m entries per element
    std::vector<eid> inv;
    std::vector<int> class_of;
    std::vector<ClassData> classes;
    std::vector<std::vector<eid>> members;  // element ids per class, ascending
    std::vector<Mat> gens;

    std::size_t order() const { return elems.size() / static_cast<std::size_t>(m); }
    int num_classes() const { return static_cast<int>(classes.size()); }
    const fe* data(eid i) const { return elems.data() + static_cast<std::size_t>(i) * m; }
    Mat element(eid i) const;
    // Element id of a matrix, or -1.
    long long find(const fe* a) const;
    long long find(const Mat& x) const { return find(x.a.data()); }
    eid mul(eid a, eid b) const;
    eid power(eid a, long long k) const;
    long long element_order(eid a) const;
    bool conjugate(eid a, eid b) const { return class_of[a] == class_of[b]; }
    // Class of rep^k.
    int power_class(int cls, long long k) const;
    // Classes consisting of central elements.
    std::vector<int> central_classes() const;

    // Rebuilds the hash index from elems.
    void build_index();

private:
    std::vector<std::uint32_t> table_;
    std::uint64_t mask_ = 0;
    std::uint64_t hash(const fe* a) const;
    void insert_index(eid id);

    friend EnumeratedGroup enumerate(const GroupSpec&, std::size_t);
    friend void compute_classes(EnumeratedGroup&);
};

constexpr std::size_t kDefaultCap = 2000000;

// BFS closure of the generators, conjugacy classes, inverses. Throws CapExceeded.
EnumeratedGroup enumerate(const GroupSpec& spec, std::size_t cap = kDefaultCap);
// Loads from the binary cache when present and current, otherwise enumerates and
// writes the cache. An empty cache_dir disables caching.
EnumeratedGroup load_or_enumerate(const GroupSpec& spec, const std::string& cache_dir, bool use_cache,
                                  std::size_t cap = kDefaultCap);
void compute_classes(EnumeratedGroup& G);

// a[(i*k + j)*k + l] = #{(x, y) in C_i x C_j : x y = rep(C_l)}.
struct StructureConstants {
    int k = 0;
    std::vector<long long> a;
    long long operator()(int i, int j, int l) const { return a[(static_cast<std::size_t>(i) * k + j) * k + l]; }
};
StructureConstants structure_constants(const EnumeratedGroup& G);
StructureConstants structure_constants_serial(const EnumeratedGroup& G);

// Distribution of X Y with X uniform on class i and Y a class function with the
// given class masses.
Distribution convolve_class(const EnumeratedGroup& G, const StructureConstants& sc, int i, const Distribution& y);
Distribution point_class(const EnumeratedGroup& G, int cls);

class UniformSampler {
public:
    UniformSampler(const EnumeratedGroup& G, std::uint64_t seed, std::uint64_t stream = 0);
    eid next();

private:
    const EnumeratedGroup* G_;
    std::mt19937_64 rng_;
};

// Product replacement with an accumulator: 15 slots, 200 burn-in steps.
class ProductReplacement {
public:
    ProductReplacement(const GroupSpec& spec, const std::vector<Mat>& gens, std::uint64_t seed, std::uint64_t stream = 0,
                       int slots = 15, int burn_in = 200);
    Mat next();

private:
    void step();
    const Field* F_;
    std::vector<Mat> slots_;
    Mat acc_;
    std::mt19937_64 rng_;
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace cc
