#include "classchar/grp.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "classchar/element.hpp"

namespace cc {

namespace {
constexpr std::uint32_t kEmpty = 0xffffffffu;
constexpr const char* kCacheMagic = "classchar-cache";
constexpr int kCacheVersion = 3;
}  // namespace

Mat EnumeratedGroup::element(eid i) const {
    Mat x(n);
    std::memcpy(x.a.data(), data(i), sizeof(fe) * m);
    return x;
}

std::uint64_t EnumeratedGroup::hash(const fe* a) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < m; ++i) {
        h ^= a[i];
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 29;
    }
    return h;
}

void EnumeratedGroup::insert_index(eid id) {
    std::uint64_t h = hash(data(id)) & mask_;
    while (table_[h] != kEmpty) h = (h + 1) & mask_;
    table_[h] = id;
}

void EnumeratedGroup::build_index() {
    std::size_t want = 16;
    while (want < 2 * order() + 2) want <<= 1;
    table_.assign(want, kEmpty);
    mask_ = want - 1;
    for (eid i = 0; i < order(); ++i) insert_index(i);
}

long long EnumeratedGroup::find(const fe* a) const {
    std::uint64_t h = hash(a) & mask_;
    while (table_[h] != kEmpty) {
        if (std::memcmp(data(table_[h]), a, sizeof(fe) * m) == 0) return table_[h];
        h = (h + 1) & mask_;
    }
    return -1;
}

eid EnumeratedGroup::mul(eid a, eid b) const {
    std::vector<fe> out(m);
    mat_mul_into(*field, data(a), data(b), out.data(), n);
    long long r = find(out.data());
    if (r < 0) throw Error("Inconsistent", "product left the enumerated group");
    return static_cast<eid>(r);
}

eid EnumeratedGroup::power(eid a, long long k) const {
    if (k < 0) {
        a = inv[a];
        k = -k;
    }
    eid r = 0, base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return r;
}

long long EnumeratedGroup::element_order(eid a) const {
    long long k = 1;
    eid x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

int EnumeratedGroup::power_class(int cls, long long k) const {
    long long o = classes[cls].order_of_rep;
    k %= o;
    if (k < 0) k += o;
    return class_of[power(classes[cls].rep, k)];
}

std::vector<int> EnumeratedGroup::central_classes() const {
    std::vector<int> out;
    for (const ClassData& c : classes)
        if (c.size == 1) out.push_back(c.id);
    return out;
}

EnumeratedGroup enumerate(const GroupSpec& spec, std::size_t cap) {
    mpz_class ord = group_order(spec);
    if (ord > cap)
        throw Error("CapExceeded", spec.name() + " has order " + ord.get_str() + " above the enumeration cap " + std::to_string(cap));
    EnumeratedGroup G;
    G.spec = spec;
    G.field = spec.field;
    G.n = spec.n;
    G.m = spec.n * spec.n;
    G.gens = generators(spec);
    const Field& F = *G.field;
    const std::size_t target = ord.get_ui();
    G.elems.reserve(target * G.m);
    Mat id = identity(G.n);
    G.elems.insert(G.elems.end(), id.a.begin(), id.a.end());
    std::size_t want = 16;
    while (want < 2 * target + 2) want <<= 1;
    G.table_.assign(want, kEmpty);
    G.mask_ = want - 1;
    G.insert_index(0);
    std::vector<fe> buf(G.m);
    for (std::size_t head = 0; head < G.order(); ++head) {
        for (const Mat& g : G.gens) {
            mat_mul_into(F, g.a.data(), G.data(static_cast<eid>(head)), buf.data(), G.n);
            if (G.find(buf.data()) >= 0) continue;
            if (G.order() >= target)
                throw Error("Inconsistent", "closure of the generators exceeds the order formula for " + spec.name());
            G.elems.insert(G.elems.end(), buf.begin(), buf.end());
            G.insert_index(static_cast<eid>(G.order() - 1));
        }
    }
    G.inv.resize(G.order());
    for (eid i = 0; i < G.order(); ++i) {
        Mat xi = inverse(F, G.element(i));
        long long j = G.find(xi);
        if (j < 0) throw Error("Inconsistent", "inverse missing from the closure");
        G.inv[i] = static_cast<eid>(j);
    }
    compute_classes(G);
    return G;
}

void compute_classes(EnumeratedGroup& G) {
    const Field& F = *G.field;
    const std::size_t N = G.order();
    std::vector<int> raw(N, -1);
    std::vector<std::vector<eid>> orbits;
    std::vector<Mat> ginv;
    for (const Mat& g : G.gens) ginv.push_back(inverse(F, g));
    std::vector<fe> t1(G.m), t2(G.m);
    for (eid start = 0; start < N; ++start) {
        if (raw[start] >= 0) continue;
        const int cid = static_cast<int>(orbits.size());
        std::vector<eid> orb{start};
        raw[start] = cid;
        for (std::size_t h = 0; h < orb.size(); ++h) {
            for (std::size_t gi = 0; gi < G.gens.size(); ++gi) {
                mat_mul_into(F, G.gens[gi].a.data(), G.data(orb[h]), t1.data(), G.n);
                mat_mul_into(F, t1.data(), ginv[gi].a.data(), t2.data(), G.n);
                long long y = G.find(t2.data());
                if (y < 0) throw Error("Inconsistent", "conjugate left the group");
                if (raw[y] < 0) {
                    raw[y] = cid;
                    orb.push_back(static_cast<eid>(y));
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    // Order classes by (size, order of representative, representative bytes).
    std::vector<long long> ord(orbits.size());
    for (std::size_t c = 0; c < orbits.size(); ++c) ord[c] = G.element_order(orbits[c].front());
    std::vector<int> perm(orbits.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        return std::lexicographical_compare(G.data(orbits[a].front()), G.data(orbits[a].front()) + G.m, G.data(orbits[b].front()),
                                            G.data(orbits[b].front()) + G.m);
    });
    std::vector<int> newid(orbits.size());
    for (std::size_t i = 0; i < perm.size(); ++i) newid[perm[i]] = static_cast<int>(i);
    G.class_of.assign(N, 0);
    for (std::size_t x = 0; x < N; ++x) G.class_of[x] = newid[raw[x]];
    G.members.assign(orbits.size(), {});
    G.classes.assign(orbits.size(), ClassData{});
    for (std::size_t c = 0; c < orbits.size(); ++c) {
        int id = newid[c];
        ClassData& cd = G.classes[id];
        cd.id = id;
        cd.rep = orbits[c].front();
        cd.size = static_cast<unsigned long>(orbits[c].size());
        cd.centralizer_order = static_cast<unsigned long>(N / orbits[c].size());
        cd.order_of_rep = ord[c];
        G.members[id] = std::move(orbits[c]);
    }
    const int k = G.num_classes();
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < k; ++c) {
        ClassData& cd = G.classes[c];
        cd.inverse_class = G.class_of[G.inv[cd.rep]];
        cd.is_real = cd.inverse_class == c;
        cd.support = support(F, G.element(cd.rep)).supp;
    }
}

// ---------------------------------------------------------------- cache

namespace {

std::string cache_path(const std::string& dir, const GroupSpec& spec) {
    std::string name = spec.name();
    for (char& c : name)
        if (c == '(' || c == ')' || c == ',' || c == '+' || c == '-') c = c == '+' ? 'p' : (c == '-' ? 'm' : '_');
    return dir + "/" + name + ".v" + std::to_string(kCacheVersion) + ".bin";
}

template <class T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
bool get(std::ifstream& is, T& v) {
    return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

void write_cache(const std::string& path, const EnumeratedGroup& G) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return;
    std::string header = std::string(kCacheMagic) + " " + std::to_string(kCacheVersion) + " " + G.spec.name();
    std::uint32_t hl = static_cast<std::uint32_t>(header.size());
    put(os, hl);
    os.write(header.data(), hl);
    std::uint64_t N = G.order();
    put(os, N);
    std::uint32_t ng = static_cast<std::uint32_t>(G.gens.size());
    put(os, ng);
    for (const Mat& g : G.gens) os.write(reinterpret_cast<const char*>(g.a.data()), sizeof(fe) * G.m);
    os.write(reinterpret_cast<const char*>(G.elems.data()), sizeof(fe) * G.elems.size());
    os.write(reinterpret_cast<const char*>(G.inv.data()), sizeof(eid) * G.inv.size());
    std::uint32_t k = static_cast<std::uint32_t>(G.classes.size());
    put(os, k);
    for (const ClassData& c : G.classes) {
        put(os, c.rep);
        put(os, c.order_of_rep);
        put(os, c.support);
        put(os, c.inverse_class);
    }
    os.write(reinterpret_cast<const char*>(G.class_of.data()), sizeof(int) * G.class_of.size());
}

bool read_cache(const std::string& path, const GroupSpec& spec, EnumeratedGroup& G) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    std::uint32_t hl = 0;
    if (!get(is, hl) || hl > 256) return false;
    std::string header(hl, '\0');
    if (!is.read(header.data(), hl)) return false;
    if (header != std::string(kCacheMagic) + " " + std::to_string(kCacheVersion) + " " + spec.name()) return false;
    G.spec = spec;
    G.field = spec.field;
    G.n = spec.n;
    G.m = spec.n * spec.n;
    std::uint64_t N = 0;
    if (!get(is, N) || N != group_order(spec)) return false;
    std::uint32_t ng = 0;
    if (!get(is, ng)) return false;
    G.gens.assign(ng, Mat(G.n));
    for (Mat& g : G.gens)
        if (!is.read(reinterpret_cast<char*>(g.a.data()), sizeof(fe) * G.m)) return false;
    G.elems.resize(N * G.m);
    if (!is.read(reinterpret_cast<char*>(G.elems.data()), sizeof(fe) * G.elems.size())) return false;
    G.inv.resize(N);
    if (!is.read(reinterpret_cast<char*>(G.inv.data()), sizeof(eid) * N)) return false;
    std::uint32_t k = 0;
    if (!get(is, k)) return false;
    G.classes.assign(k, ClassData{});
    for (std::uint32_t c = 0; c < k; ++c) {
        ClassData& cd = G.classes[c];
        cd.id = static_cast<int>(c);
        if (!get(is, cd.rep) || !get(is, cd.order_of_rep) || !get(is, cd.support) || !get(is, cd.inverse_class)) return false;
        cd.is_real = cd.inverse_class == static_cast<int>(c);
    }
    G.class_of.resize(N);
    if (!is.read(reinterpret_cast<char*>(G.class_of.data()), sizeof(int) * N)) return false;
    G.members.assign(k, {});
    for (eid x = 0; x < N; ++x) G.members[G.class_of[x]].push_back(x);
    for (std::uint32_t c = 0; c < k; ++c) {
        G.classes[c].size = static_cast<unsigned long>(G.members[c].size());
        G.classes[c].centralizer_order = static_cast<unsigned long>(N / G.members[c].size());
    }
    G.build_index();
    return true;
}

}  // namespace

EnumeratedGroup load_or_enumerate(const GroupSpec& spec, const std::string& cache_dir, bool use_cache, std::size_t cap) {
    if (!use_cache || cache_dir.empty()) return enumerate(spec, cap);
    std::string path = cache_path(cache_dir, spec);
    EnumeratedGroup G;
    if (read_cache(path, spec, G)) return G;
    G = enumerate(spec, cap);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    write_cache(path, G);
    return G;
}

// ---------------------------------------------------------------- structure constants

namespace {

void structure_slice(const EnumeratedGroup& G, StructureConstants& sc, int l, std::vector<fe>& buf) {
    const int k = sc.k;
    const eid z = G.classes[l].rep;
    const std::size_t N = G.order();
    for (eid x = 0; x < N; ++x) {
        mat_mul_into(*G.field, G.data(G.inv[x]), G.data(z), buf.data(), G.n);
        long long y = G.find(buf.data());
        sc.a[(static_cast<std::size_t>(G.class_of[x]) * k + G.class_of[y]) * k + l] += 1;
    }
}

}  // namespace

StructureConstants structure_constants_serial(const EnumeratedGroup& G) {
    StructureConstants sc;
    sc.k = G.num_classes();
    sc.a.assign(static_cast<std::size_t>(sc.k) * sc.k * sc.k, 0);
    std::vector<fe> buf(G.m);
    for (int l = 0; l < sc.k; ++l) structure_slice(G, sc, l, buf);
    return sc;
}

StructureConstants structure_constants(const EnumeratedGroup& G) {
    StructureConstants sc;
    sc.k = G.num_classes();
    sc.a.assign(static_cast<std::size_t>(sc.k) * sc.k * sc.k, 0);
#pragma omp parallel
    {
        std::vector<fe> buf(G.m);
#pragma omp for schedule(dynamic)
        for (int l = 0; l < sc.k; ++l) structure_slice(G, sc, l, buf);
    }
    return sc;
}

Distribution point_class(const EnumeratedGroup& G, int cls) {
    Distribution d;
    d.p.assign(G.num_classes(), 0);
    d.p[cls] = 1;
    return d;
}

Distribution convolve_class(const EnumeratedGroup& G, const StructureConstants& sc, int i, const Distribution& y) {
    const int k = sc.k;
    Distribution out;
    out.p.assign(k, 0);
    const mpz_class& ci = G.classes[i].size;
    for (int j = 0; j < k; ++j) {
        if (y.p[j] == 0) continue;
        mpq_class w = y.p[j] / mpq_class(ci * G.classes[j].size);
        for (int l = 0; l < k; ++l) {
            long long a = sc(i, j, l);
            if (a == 0) continue;
            out.p[l] += w * mpq_class(mpz_class(static_cast<long>(a)) * G.classes[l].size);
        }
    }
    return out;
}

// ---------------------------------------------------------------- sampling

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

UniformSampler::UniformSampler(const EnumeratedGroup& G, std::uint64_t seed, std::uint64_t stream)
    : G_(&G), rng_(make_rng(seed, stream)) {}

eid UniformSampler::next() {
    std::uniform_int_distribution<std::uint64_t> d(0, G_->order() - 1);
    return static_cast<eid>(d(rng_));
}

ProductReplacement::ProductReplacement(const GroupSpec& spec, const std::vector<Mat>& gens, std::uint64_t seed,
                                       std::uint64_t stream, int slots, int burn_in)
    : F_(spec.field.get()), acc_(identity(spec.n)), rng_(make_rng(seed, stream)) {
    if (gens.empty()) throw Error("InconsistentSpec", "product replacement needs generators");
    for (int i = 0; i < slots; ++i) slots_.push_back(gens[static_cast<std::size_t>(i) % gens.size()]);
    for (int i = 0; i < burn_in; ++i) step();
}

void ProductReplacement::step() {
    const std::uint64_t s = slots_.size();
    std::uniform_int_distribution<std::uint64_t> pick(0, s - 1);
    std::uint64_t i = pick(rng_), j = pick(rng_);
    while (j == i) j = pick(rng_);
    std::bernoulli_distribution side(0.5), invert(0.5);
    Mat other = invert(rng_) ? inverse(*F_, slots_[j]) : slots_[j];
    slots_[i] = side(rng_) ? mat_mul(*F_, slots_[i], other) : mat_mul(*F_, other, slots_[i]);
    acc_ = mat_mul(*F_, acc_, slots_[i]);
}

Mat ProductReplacement::next() {
    step();
    return acc_;
}

}  // namespace cc
