#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "classchar/chars.hpp"
#include "classchar/element.hpp"
#include "classchar/grp.hpp"
#include "classchar/products.hpp"
#include "classchar/verify.hpp"
#include "classchar/walks.hpp"

using namespace cc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string group;
    std::string format = "table";
    std::optional<std::uint64_t> seed;
    long trials = 10000;
    std::string cache_dir = ".classchar-cache";
    int jobs = 0;
    std::string tv = "l1";
    bool no_cache = false;
};

const std::vector<std::string> kClaims = {"thmA",  "mb3",    "linear-supp", "frob",      "count-v",     "order",
                                          "orbit1", "orbit2", "trans",       "tuples",    "aprods",      "big-support",
                                          "mb2-curve", "sandwich", "2ways",   "matrix-cent", "alpha-eps"};

// Claims decided by sampling; their failures are reported but never change the exit status.
bool observational_claim(const std::string& c) { return c == "aprods" || c == "big-support" || c == "mb2-curve"; }

const std::vector<std::string> kRoster = {"SL(2,2)", "SL(2,3)",  "SL(2,4)",  "SL(2,5)",  "SL(2,7)",  "SL(3,2)", "SL(3,3)",
                                          "SU(3,2)", "SU(3,3)",  "Sp(2,3)",  "Sp(4,2)",  "Sp(4,3)",  "SO(3,3)", "O+(4,2)",
                                          "O-(4,2)", "O+(4,3)",  "O-(4,3)",  "O+(6,2)",  "O-(6,2)"};

// Lazily built group data for one spec.
class Context {
public:
    Context(const RunConfig& cfg) : cfg_(cfg) {
        if (cfg.group.empty()) throw Error("MissingGroup", "--group is required");
        spec = parse_spec(cfg.group);
    }
    GroupSpec spec;

    const EnumeratedGroup& G() {
        if (!G_) G_ = load_or_enumerate(spec, cfg_.cache_dir, !cfg_.no_cache);
        return *G_;
    }
    const StructureConstants& sc() {
        if (!sc_) sc_ = structure_constants(G());
        return *sc_;
    }
    const CharTable& table() {
        if (!t_) t_ = load_or_compute_table(G(), sc(), cfg_.cache_dir, !cfg_.no_cache);
        return *t_;
    }
    const RatioData& ratios() {
        if (!rd_) rd_ = ratio_data(table());
        return *rd_;
    }

private:
    const RunConfig& cfg_;
    std::optional<EnumeratedGroup> G_;
    std::optional<StructureConstants> sc_;
    std::optional<CharTable> t_;
    std::optional<RatioData> rd_;
};

std::uint64_t require_seed(const RunConfig& cfg, const std::string& what) {
    if (!cfg.seed) throw Error("MissingSeed", what + " samples at random; pass --seed");
    return *cfg.seed;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string report_csv(const std::vector<BoundReport>& reps, bool header = true) {
    std::ostringstream os;
    if (header) os << "group,claim,subject,measured,bound,margin,verdict\n";
    for (const BoundReport& r : reps)
        for (const BoundRow& row : r.rows)
            os << csv_field(r.group) << ',' << csv_field(r.claim) << ',' << csv_field(row.subject) << ','
               << csv_field(row.measured) << ',' << csv_field(row.bound) << ',' << row.margin << ','
               << to_string(row.verdict) << '\n';
    return os.str();
}

void print_table(std::ostream& os, const BoundReport& r) {
    os << r.claim << " " << r.group << ": " << to_string(r.overall()) << " (" << r.count(Verdict::Pass) << " pass, "
       << r.count(Verdict::Fail) << " fail, " << r.rows.size() << " rows)\n";
    for (const BoundRow& row : r.rows)
        os << "  [" << to_string(row.verdict) << "] " << row.subject << " | " << row.measured << " | " << row.bound << "\n";
}

void emit(const RunConfig& cfg, const std::vector<BoundReport>& reps) {
    if (cfg.format == "json") {
        json arr = json::array();
        for (const BoundReport& r : reps) arr.push_back(r.to_json());
        std::cout << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << report_csv(reps);
    } else {
        for (const BoundReport& r : reps) print_table(std::cout, r);
    }
}

int exit_status(const std::vector<BoundReport>& reps, bool observational) {
    if (observational) return 0;
    for (const BoundReport& r : reps)
        if (r.overall() == Verdict::Fail) return 1;
    return 0;
}

// ---------------------------------------------------------------- group, classes, chartable, element

json field_json(const Field& F) { return {{"p", F.p()}, {"f", F.f()}, {"modulus", F.modulus()}}; }

int cmd_group(const RunConfig& cfg) {
    Context ctx(cfg);
    const EnumeratedGroup& G = ctx.G();
    nlohmann::ordered_json j = {{"group", ctx.spec.name()},
              {"n", ctx.spec.n},
              {"field", field_json(*ctx.spec.field)},
              {"order_formula", group_order(ctx.spec).get_str()},
              {"order_enumerated", G.order()},
              {"classes", G.num_classes()},
              {"generators", G.gens.size()},
              {"D", ctx.spec.D()},
              {"order_sandwich", order_sandwich_holds(ctx.spec)}};
    bool members = true;
    for (eid i = 0; i < G.order(); ++i)
        if (!is_member(ctx.spec, G.element(i))) {
            members = false;
            break;
        }
    j["all_members"] = members;
    const bool ok = members && group_order(ctx.spec) == mpz_class(static_cast<unsigned long>(G.order()));
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_classes(const RunConfig& cfg) {
    Context ctx(cfg);
    const EnumeratedGroup& G = ctx.G();
    json arr = json::array();
    for (const ClassData& c : G.classes)
        arr.push_back({{"id", c.id},
                       {"size", c.size.get_str()},
                       {"centralizer", c.centralizer_order.get_str()},
                       {"support", c.support},
                       {"order", c.order_of_rep},
                       {"real", c.is_real},
                       {"inverse", c.inverse_class}});
    if (cfg.format == "json") {
        std::cout << json{{"group", ctx.spec.name()}, {"classes", arr}}.dump(2) << "\n";
        return 0;
    }
    const char sep = cfg.format == "csv" ? ',' : ' ';
    std::cout << "id" << sep << "size" << sep << "centralizer" << sep << "support" << sep << "order" << sep << "real" << sep
              << "inverse\n";
    for (const json& c : arr)
        std::cout << c["id"] << sep << c["size"].get<std::string>() << sep << c["centralizer"].get<std::string>() << sep
                  << c["support"] << sep << c["order"] << sep << (c["real"].get<bool>() ? 1 : 0) << sep << c["inverse"]
                  << "\n";
    return 0;
}

int cmd_chartable(const RunConfig& cfg) {
    Context ctx(cfg);
    const CharTable& t = ctx.table();
    const Orthogonality o = check_orthogonality(t);
    if (cfg.format == "json") {
        json j = t.to_json();
        j["orthogonality"] = {{"rows", o.rows}, {"columns", o.columns}, {"degree_sum", o.degree_sum},
                              {"degrees_divide", o.degrees_divide}};
        std::cout << j.dump(2) << "\n";
        return o.ok() ? 0 : 1;
    }
    const char* sep = cfg.format == "csv" ? "," : " | ";
    std::cout << "chi";
    for (int c = 0; c < t.k; ++c) std::cout << sep << "C" << c;
    std::cout << "\n";
    if (cfg.format != "csv") {
        std::cout << "size";
        for (int c = 0; c < t.k; ++c) std::cout << sep << t.class_sizes[c].get_str();
        std::cout << "\n";
    }
    for (int chi = 0; chi < t.k; ++chi) {
        std::cout << "X" << chi;
        for (int c = 0; c < t.k; ++c) std::cout << sep << csv_field(t(chi, c).reduced().str());
        std::cout << "\n";
    }
    if (cfg.format != "csv")
        std::cout << "orthogonality: rows " << o.rows << ", columns " << o.columns << ", degree sum " << o.degree_sum
                  << ", degrees divide " << o.degrees_divide << "\n";
    return o.ok() ? 0 : 1;
}

std::string jordan_string(const JordanType& jt) {
    std::string s = "u" + partition_to_string(jt.unipotent);
    for (const auto& [f, p] : jt.per_factor) s += " " + poly_to_string(f) + ":" + partition_to_string(p);
    return s;
}

int cmd_element(const RunConfig& cfg) {
    Context ctx(cfg);
    const EnumeratedGroup& G = ctx.G();
    const Field& F = *G.field;
    std::vector<json> rows(G.num_classes());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < G.num_classes(); ++i) {
        const ClassData& c = G.classes[i];
        const Mat g = G.element(c.rep);
        const JordanDecomposition jd = jordan_decompose(F, g, c.order_of_rep);
        json margins = json::array();
        for (const BoundRow& r : check_sandwich(G, c))
            margins.push_back({{"bound", r.subject}, {"margin", r.margin}, {"verdict", to_string(r.verdict)}});
        rows[i] = {{"id", c.id},
                   {"size", c.size.get_str()},
                   {"centralizer", c.centralizer_order.get_str()},
                   {"support", c.support},
                   {"jordan", jordan_string(jd.type)},
                   {"sandwich", margins}};
    }
    if (cfg.format == "json") {
        std::cout << json{{"group", ctx.spec.name()}, {"classes", rows}}.dump(2) << "\n";
        return 0;
    }
    std::cout << "id,size,centralizer,support,jordan,sandwich_margins\n";
    for (const json& r : rows) {
        std::string m;
        for (const json& x : r["sandwich"]) {
            if (!m.empty()) m += ";";
            std::ostringstream os;
            os << x["margin"].get<double>() << "(" << x["verdict"].get<std::string>() << ")";
            m += os.str();
        }
        std::cout << r["id"] << "," << r["size"].get<std::string>() << "," << r["centralizer"].get<std::string>() << ","
                  << r["support"] << "," << csv_field(r["jordan"].get<std::string>()) << "," << csv_field(m) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- verify

Vec unit(int n, int i) { return unit_vector(n, i); }

std::vector<CountVPoint> default_count_v_points() {
    return {{2, 3, 1, 0, {}}, {2, 3, 1, 1, {}}, {2, 4, 2, 1, {}}, {2, 4, 2, 2, {}},
            {3, 3, 1, 1, {}}, {3, 4, 2, 1, {}}, {4, 3, 1, 1, {}}, {2, 5, 2, 2, {}}};
}

std::vector<SubspacePoint> default_subspace_points() {
    std::vector<SubspacePoint> pts;
    for (const char* s : {"SL(5,2)", "SL(6,2)", "SL(5,3)", "Sp(6,2)", "O-(6,2)", "Omega(5,3)", "SU(5,2)"}) {
        const int n = parse_spec(s).n;
        pts.push_back({s, {unit(n, 0)}, unit(n, 1)});
    }
    return pts;
}

std::vector<SubspacePoint> group_subspace_points(const GroupSpec& spec) {
    const int n = spec.n;
    std::vector<SubspacePoint> pts;
    if (n >= 2) pts.push_back({spec.name(), {unit(n, 0)}, unit(n, n - 1)});
    if (n >= 4) pts.push_back({spec.name(), {unit(n, 0), unit(n, 1)}, unit(n, n - 1)});
    return pts;
}

BoundReport verify_claim(Context* ctx, const RunConfig& cfg, const std::string& claim, int cls) {
    auto need = [&]() -> Context& {
        if (!ctx) throw Error("MissingGroup", "claim " + claim + " needs --group");
        return *ctx;
    };
    if (claim == "thmA") {
        Context& c = need();
        return exponent_scan(c.G(), c.table(), c.ratios());
    }
    if (claim == "mb3" || claim == "linear-supp") {
        Context& c = need();
        const std::vector<BoundReport> r = supp_exponent_scan(c.G(), c.table(), c.ratios());
        return claim == "mb3" ? r[0] : r[1];
    }
    if (claim == "frob") {
        Context& c = need();
        return frob_identity_check(c.G(), c.sc(), c.table());
    }
    if (claim == "mb2-curve") {
        Context& c = need();
        return cent_bound_scan(c.G(), c.table(), c.ratios(), {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    }
    if (claim == "sandwich") return sandwich_report(need().G());
    if (claim == "matrix-cent") return matrix_cent_report(need().G(), {10, 25, 50, 75});
    if (claim == "alpha-eps") return alpha_eps_report(need().G(), {mpq_class(1, 3), mpq_class(2, 3)});
    if (claim == "2ways") return two_ways_report(static_cast<int>(std::min(cfg.trials, 100000L)), 16, cfg.seed.value_or(1));
    if (claim == "count-v") return count_v_report(default_count_v_points());
    if (claim == "order" || claim == "orbit2") {
        const auto pts = ctx ? group_subspace_points(ctx->spec) : default_subspace_points();
        return claim == "order" ? order_report(pts) : orbit2_report(pts);
    }
    if (claim == "orbit1") {
        if (ctx) return orbit1_report({{ctx->spec.name(), {}, unit(ctx->spec.n, 0)}});
        return orbit1_report({{"Sp(4,3)", {}, unit(4, 0)},
                              {"O+(4,3)", {}, unit(4, 0)},
                              {"SU(3,2)", {}, unit(3, 0)},
                              {"Omega(5,3)", {}, unit(5, 2)},
                              {"SU(3,3)", {}, unit(3, 1)}});
    }
    if (claim == "trans") {
        Context& c = need();
        const int k = c.G().num_classes();
        const int use = cls >= 0 ? cls : k - 1;
        if (use <= 0 || use >= k) throw Error("OutOfRange", "class id out of range");
        return trans_report({{c.spec.name(), use, {}, {unit(c.spec.n, 0)}, {}}}, cfg.cache_dir);
    }
    if (claim == "tuples") {
        Context& c = need();
        const int k = c.G().num_classes();
        const int use = cls >= 0 ? cls : k - 1;
        return tuples_report({{c.spec.name(), use, Poly{1}, 1, {unit(c.spec.n, 0)}},
                              {c.spec.name(), use, Poly{1, 1}, 2, {unit(c.spec.n, 0)}}},
                             cfg.cache_dir);
    }
    if (claim == "aprods" || claim == "big-support") {
        Context& c = need();
        const std::uint64_t seed = require_seed(cfg, claim);
        if (group_order(c.spec) > kDefaultCap) {
            // Too large to enumerate: product-replacement support growth.
            Mat g = identity(c.spec.n);
            const std::vector<Mat> gens = generators(c.spec);
            g = cls >= 0 ? gens.at(static_cast<std::size_t>(cls)) : gens.front();
            return support_growth_report(mc_support_growth(c.spec, g, c.spec.n, cfg.trials, seed));
        }
        UniformHarnessConfig h;
        h.cls = cls >= 0 ? cls : c.G().num_classes() - 1;
        h.trials = cfg.trials;
        h.seed = seed;
        BoundReport r = mc_uniform_harness(c.G(), c.sc(), h);
        r.claim = claim;
        return r;
    }
    throw Error("UnknownClaim", "unknown claim id '" + claim + "'");
}

int cmd_verify(const RunConfig& cfg, const std::string& claim, int cls) {
    std::optional<Context> ctx;
    if (!cfg.group.empty()) ctx.emplace(cfg);
    const BoundReport r = verify_claim(ctx ? &*ctx : nullptr, cfg, claim, cls);
    emit(cfg, {r});
    return exit_status({r}, observational_claim(claim));
}

// ---------------------------------------------------------------- walk, mckay

int cmd_walk(const RunConfig& cfg, int cls, bool mc, int steps, int n_max) {
    Context ctx(cfg);
    WalkReport w;
    if (mc) {
        const std::uint64_t seed = require_seed(cfg, "walk --mc");
        Mat g;
        if (group_order(ctx.spec) <= kDefaultCap) {
            g = ctx.G().element(ctx.G().classes.at(static_cast<std::size_t>(cls)).rep);
        } else {
            g = generators(ctx.spec).at(static_cast<std::size_t>(cls));
        }
        w = mc_walk(ctx.spec, g, steps, cfg.trials, seed);
        w.convention = parse_tv_convention(cfg.tv);
    } else {
        if (cls <= 0 || cls >= ctx.G().num_classes()) throw Error("OutOfRange", "class id must name a nontrivial class");
        w = exact_walk(ctx.G(), ctx.sc(), ctx.table(), cls, n_max, parse_tv_convention(cfg.tv));
    }
    const BoundReport r = walk_report(w);
    if (cfg.format == "csv" && !mc) {
        std::cout << w.csv();
    } else if (cfg.format == "json") {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        print_table(std::cout, r);
    }
    return exit_status({r}, mc);
}

int cmd_mckay(const RunConfig& cfg, int chi, int start, int l_max) {
    Context ctx(cfg);
    const CharTable& t = ctx.table();
    if (chi < 0 || chi >= t.k) throw Error("OutOfRange", "character id out of range");
    const McKayGraph g = mckay_graph(t, chi);
    const McKayWalk w = g.faithful ? mckay_walk(t, chi, start, l_max) : McKayWalk{};
    const BoundReport r = mckay_report(t, g, w);
    if (cfg.format == "csv") {
        std::cout << "l,lhs,rhs\n";
        for (std::size_t l = 0; l < w.lhs.size(); ++l) std::cout << l << "," << w.lhs[l].get_d() << "," << w.rhs[l].get_d() << "\n";
    } else {
        emit(cfg, {r});
    }
    return exit_status({r}, false);
}

// ---------------------------------------------------------------- cover, thompson, powerword

int cmd_cover(const RunConfig& cfg, int cls) {
    Context ctx(cfg);
    if (cls < 0 || cls >= ctx.G().num_classes()) throw Error("OutOfRange", "class id out of range");
    const CoverReport r = class_square(ctx.G(), ctx.sc(), ctx.table(), cls);
    if (cfg.format == "json") {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        std::cout << r.group << " class " << cls << ": covers " << (ctx.G().num_classes() - r.missed.size()) << "/"
                  << ctx.G().num_classes();
        if (!r.missed.empty()) {
            std::cout << "; missed";
            for (int m : r.missed) std::cout << " " << m;
        }
        std::cout << "; frobenius vs structure constants " << (r.sc_agrees ? "agree" : "DISAGREE") << "\n";
    }
    return r.sc_agrees ? 0 : 1;
}

BoundReport thompson_as_report(const ThompsonResult& r) {
    BoundReport rep;
    rep.claim = "thompson";
    rep.group = r.group;
    std::string w;
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        if (r.witness[i]) w += (w.empty() ? "" : " ") + std::to_string(i);
    rep.rows.push_back({"class with x^G x^G = G" + std::string(r.mod_center ? " mod Z(G)" : ""),
                        r.first_witness ? "class " + std::to_string(*r.first_witness) + " (all: " + w + ")" : "none",
                        r.note.empty() ? "exhaustive scan" : r.note, 0.0,
                        r.first_witness ? Verdict::Pass : Verdict::Observational});
    rep.rows.push_back({"Frobenius sign vs structure constants", r.discrepancy_free ? "zero discrepancies" : "discrepancy",
                        "agreement on every (x, g)", 0.0, r.discrepancy_free ? Verdict::Pass : Verdict::Fail});
    rep.extra = r.to_json();
    return rep;
}

int cmd_thompson(const RunConfig& cfg) {
    Context ctx(cfg);
    const ThompsonResult r = thompson_search(ctx.G(), ctx.sc(), ctx.table());
    if (cfg.format == "json") {
        std::cout << r.to_json().dump(2) << "\n";
    } else if (r.first_witness) {
        std::cout << *r.first_witness << "\n";
    } else {
        std::cout << "none: " << r.note << "\n";
    }
    return r.discrepancy_free ? 0 : 1;
}

int cmd_powerword(const RunConfig& cfg, long N) {
    Context ctx(cfg);
    const BoundReport r = power_word_check(ctx.G(), ctx.sc(), N);
    emit(cfg, {r});
    return exit_status({r}, false);
}

// ---------------------------------------------------------------- roster

struct RosterConfig {
    std::vector<std::string> groups = kRoster;
    std::set<std::string> claims = {"table", "thmA", "mb3", "linear-supp", "frob", "sandwich",
                                    "walk",  "mckay", "thompson", "powerword"};
    long walk_limit = 100000;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// key = value lines; '#' starts a comment.
RosterConfig read_roster_config(const std::string& path, RunConfig& run) {
    std::ifstream in(path);
    if (!in) throw Error("ConfigError", path + ": cannot open");
    RosterConfig rc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno) + ": ";
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("ConfigError", where + "expected key = value");
        auto strip = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        const std::string key = strip(line.substr(0, eq)), value = strip(line.substr(eq + 1));
        try {
            if (key == "groups") {
                rc.groups = split_list(value);
                for (const std::string& g : rc.groups) parse_spec(g);
            } else if (key == "claims") {
                const auto v = split_list(value);
                rc.claims = {v.begin(), v.end()};
            } else if (key == "seed") {
                run.seed = std::stoull(value);
            } else if (key == "trials") {
                run.trials = std::stol(value);
            } else if (key == "walk_limit") {
                rc.walk_limit = std::stol(value);
            } else {
                throw Error("ConfigError", "unknown key '" + key + "'");
            }
        } catch (const Error& e) {
            throw Error("ConfigError", where + e.what());
        } catch (const std::exception& e) {
            throw Error("ConfigError", where + "bad value for '" + key + "': " + e.what());
        }
    }
    return rc;
}

std::vector<BoundReport> roster_group(const RunConfig& cfg, const RosterConfig& rc, const std::string& name,
                                      std::map<std::string, std::string>* walk_csv) {
    RunConfig one = cfg;
    one.group = name;
    Context ctx(one);
    std::vector<BoundReport> out;
    auto want = [&](const char* c) { return rc.claims.count(c) > 0; };
    const EnumeratedGroup& G = ctx.G();

    {
        BoundReport r;
        r.claim = "group";
        r.group = ctx.spec.name();
        const mpz_class formula = group_order(ctx.spec);
        const bool eq = formula == mpz_class(static_cast<unsigned long>(G.order()));
        r.rows.push_back({"closure size", std::to_string(G.order()), "order formula " + formula.get_str(), 0.0,
                          eq ? Verdict::Pass : Verdict::Fail});
        long bad = 0;
        for (eid i = 0; i < G.order(); ++i)
            if (!is_member(ctx.spec, G.element(i))) ++bad;
        r.rows.push_back({"membership", std::to_string(bad) + " non-members", "every element preserves the form", 0.0,
                          bad == 0 ? Verdict::Pass : Verdict::Fail});
        mpz_class total = 0;
        for (const ClassData& c : G.classes) total += c.size;
        r.rows.push_back({"class equation", total.get_str(), "|G|", 0.0, total == formula ? Verdict::Pass : Verdict::Fail});
        out.push_back(r);
    }
    if (want("table")) {
        const Orthogonality o = check_orthogonality(ctx.table());
        BoundReport r;
        r.claim = "table";
        r.group = ctx.spec.name();
        auto row = [&](const char* s, bool ok) {
            r.rows.push_back({s, ok ? "holds" : "fails", "exact", 0.0, ok ? Verdict::Pass : Verdict::Fail});
        };
        row("row orthogonality", o.rows);
        row("column orthogonality", o.columns);
        row("sum chi(1)^2 = |G|", o.degree_sum);
        row("chi(1) divides |G|", o.degrees_divide);
        out.push_back(r);
    }
    if (want("thmA")) out.push_back(exponent_scan(G, ctx.table(), ctx.ratios()));
    if (want("mb3") || want("linear-supp")) {
        const auto s = supp_exponent_scan(G, ctx.table(), ctx.ratios());
        if (want("mb3")) out.push_back(s[0]);
        if (want("linear-supp")) out.push_back(s[1]);
    }
    if (want("frob")) out.push_back(frob_identity_check(G, ctx.sc(), ctx.table()));
    if (want("sandwich")) out.push_back(sandwich_report(G));
    if (want("walk") && G.order() <= static_cast<std::size_t>(rc.walk_limit)) {
        BoundReport all;
        all.claim = "walk";
        all.group = ctx.spec.name();
        std::string curves = "class,N,tv\n";
        for (int c = 1; c < G.num_classes(); ++c) {
            const WalkReport w = exact_walk(G, ctx.sc(), ctx.table(), c, 64, parse_tv_convention(cfg.tv));
            for (BoundRow row : walk_report(w).rows) all.rows.push_back(row);
            for (std::size_t N = 0; N < w.tv.size(); ++N)
                curves += std::to_string(c) + "," + std::to_string(N) + "," +
                          std::to_string(w.tv_in_convention(static_cast<int>(N)).get_d()) + "\n";
        }
        (*walk_csv)[ctx.spec.name()] = curves;
        out.push_back(all);
    }
    if (want("mckay")) {
        BoundReport all;
        all.claim = "mckay";
        all.group = ctx.spec.name();
        const CharTable& t = ctx.table();
        for (int chi = 1; chi < t.k; ++chi) {
            const McKayGraph g = mckay_graph(t, chi);
            const McKayWalk w = g.faithful ? mckay_walk(t, chi, 0, 20) : McKayWalk{};
            for (const BoundRow& row : mckay_report(t, g, w).rows) all.rows.push_back(row);
        }
        out.push_back(all);
    }
    if (want("thompson")) out.push_back(thompson_as_report(thompson_search(G, ctx.sc(), ctx.table())));
    if (want("powerword"))
        for (long N : {1L, 2L, 3L, 6L, 12L, 30L}) out.push_back(power_word_check(G, ctx.sc(), N));
    return out;
}

std::string sanitize(const std::string& s) {
    std::string o;
    for (char c : s) o += std::isalnum(static_cast<unsigned char>(c)) ? c : (c == '+' ? 'p' : (c == '-' ? 'm' : '_'));
    return o;
}

int cmd_roster(RunConfig cfg, const std::string& config_path, const std::string& out_dir) {
    RosterConfig rc;
    if (!config_path.empty()) rc = read_roster_config(config_path, cfg);
    fs::create_directories(out_dir);
    std::vector<BoundReport> all;
    std::map<std::string, std::string> walk_csv;
    for (const std::string& g : rc.groups) {
        std::cerr << "roster: " << g << std::endl;
        for (BoundReport& r : roster_group(cfg, rc, g, &walk_csv)) all.push_back(std::move(r));
    }

    std::map<std::string, std::vector<BoundReport>> by_claim;
    for (const BoundReport& r : all) by_claim[r.claim].push_back(r);
    json summary = json::object();
    bool exact_fail = false;
    for (const auto& [claim, reps] : by_claim) {
        std::ofstream(fs::path(out_dir) / (claim + ".csv")) << report_csv(reps);
        json s = {{"pass", 0}, {"fail", 0}, {"other", 0}};
        for (const BoundReport& r : reps) {
            const Verdict v = r.overall();
            if (v == Verdict::Pass) s["pass"] = s["pass"].get<int>() + 1;
            else if (v == Verdict::Fail) s["fail"] = s["fail"].get<int>() + 1;
            else s["other"] = s["other"].get<int>() + 1;
            if (v == Verdict::Fail && !observational_claim(claim)) exact_fail = true;
        }
        summary[claim] = s;
    }
    for (const auto& [g, csv] : walk_csv) std::ofstream(fs::path(out_dir) / ("walk_curves_" + sanitize(g) + ".csv")) << csv;

    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    json bundle;
    bundle["header"] = {{"schema", "classchar.bundle/1"}, {"timestamp", ts.str()}};
    bundle["groups"] = rc.groups;
    bundle["tv_convention"] = cfg.tv;
    bundle["summary"] = summary;
    bundle["reports"] = json::array();
    for (const BoundReport& r : all) bundle["reports"].push_back(r.to_json());
    std::ofstream(fs::path(out_dir) / "bundle.json") << bundle.dump(1) << "\n";

    for (const auto& [claim, s] : summary.items())
        std::cout << std::left << std::setw(14) << claim << " pass " << s["pass"] << " fail " << s["fail"] << " other "
                  << s["other"] << "\n";
    std::cout << (exact_fail ? "exact claim failures present" : "no exact claim failed") << "; bundle in " << out_dir
              << "\n";
    return exact_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character and conjugacy-class computations for finite classical groups"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* s, bool group) {
        if (group) s->add_option("--group", cfg.group, "group spec, e.g. \"Sp(4,3)\"; SU takes q0");
        s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
        s->add_option("--cache-dir", cfg.cache_dir, "group and table cache directory");
        s->add_flag("--no-cache", cfg.no_cache, "rebuild instead of reading the cache");
        s->add_option("--jobs", cfg.jobs, "OpenMP threads (0 = runtime default)");
    };
    auto mc_opts = [&](CLI::App* s) {
        s->add_option("--seed", cfg.seed, "RNG seed (required for sampling)");
        s->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    };

    auto* group = app.add_subcommand("group", "order, generators and membership of a group");
    common(group, true);
    auto* classes = app.add_subcommand("classes", "conjugacy classes");
    common(classes, true);
    auto* chartable = app.add_subcommand("chartable", "character table");
    common(chartable, true);
    auto* element = app.add_subcommand("element", "per-class support, Jordan data and sandwich margins");
    common(element, true);
    std::string element_action = "report";
    element->add_option("action", element_action)->check(CLI::IsMember({"report"}));

    auto* verify = app.add_subcommand("verify", "run one claim verifier");
    common(verify, true);
    mc_opts(verify);
    std::string claim;
    int cls = -1;
    verify->add_option("claim", claim, "claim id")->required()->check(CLI::IsMember(kClaims));
    verify->add_option("--class", cls, "class id for class-based claims");

    auto* walk = app.add_subcommand("walk", "random walk on a conjugacy class");
    common(walk, true);
    mc_opts(walk);
    walk->add_option("--tv-convention", cfg.tv)->check(CLI::IsMember({"l1", "half"}));
    int walk_cls = 1, steps = 10, n_max = 64;
    bool exact = false, mc = false;
    walk->add_option("--class", walk_cls, "class id (generator index with --mc for large groups)");
    auto* ex = walk->add_flag("--exact", exact);
    walk->add_flag("--mc", mc)->excludes(ex);
    walk->add_option("--steps", steps, "walk length for --mc");
    walk->add_option("--max-n", n_max, "longest exact walk");

    auto* mckay = app.add_subcommand("mckay", "McKay graph and walk of a character");
    common(mckay, true);
    int chi = 1, start = 0, l_max = 20;
    mckay->add_option("--char", chi, "character id")->required();
    mckay->add_option("--start", start, "starting character of the walk");
    mckay->add_option("--steps", l_max, "walk length");

    auto* cover = app.add_subcommand("cover", "classes covered by x^G x^G");
    common(cover, true);
    int cover_cls = 1;
    cover->add_option("--class", cover_cls)->required();
    auto* thompson = app.add_subcommand("thompson", "search for a class with x^G x^G = G");
    common(thompson, true);
    auto* powerword = app.add_subcommand("powerword", "image of x^N y^N");
    common(powerword, true);
    long N = 2;
    powerword->add_option("--N", N)->required()->check(CLI::PositiveNumber);

    auto* roster = app.add_subcommand("roster", "run every claim over the roster and write a report bundle");
    common(roster, false);
    mc_opts(roster);
    roster->add_option("--tv-convention", cfg.tv)->check(CLI::IsMember({"l1", "half"}));
    std::string config_path, out_dir = "roster-out";
    roster->add_option("--config", config_path, "key = value file: groups, claims, seed, trials, walk_limit");
    roster->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    if (!cfg.no_cache && !cfg.cache_dir.empty()) fs::create_directories(cfg.cache_dir);

    try {
        if (*group) return cmd_group(cfg);
        if (*classes) return cmd_classes(cfg);
        if (*chartable) return cmd_chartable(cfg);
        if (*element) return cmd_element(cfg);
        if (*verify) return cmd_verify(cfg, claim, cls);
        if (*walk) {
            if (!exact && !mc) exact = true;
            return cmd_walk(cfg, walk_cls, mc, steps, n_max);
        }
        if (*mckay) return cmd_mckay(cfg, chi, start, l_max);
        if (*cover) return cmd_cover(cfg, cover_cls);
        if (*thompson) return cmd_thompson(cfg);
        if (*powerword) return cmd_powerword(cfg, N);
        if (*roster) return cmd_roster(cfg, config_path, out_dir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
