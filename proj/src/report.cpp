#include "classchar/report.hpp"

#include <cmath>

namespace cc {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Vacuous: return "vacuous";
        case Verdict::Advisory: return "advisory";
        case Verdict::Observational: return "observational";
        case Verdict::Flagged: return "flagged";
    }
    return "?";
}

std::size_t BoundReport::count(Verdict v) const {
    std::size_t c = 0;
    for (const BoundRow& r : rows)
        if (r.verdict == v) ++c;
    return c;
}

Verdict BoundReport::overall() const {
    if (rows.empty()) return Verdict::Vacuous;
    if (count(Verdict::Fail)) return Verdict::Fail;
    if (count(Verdict::Pass)) return Verdict::Pass;
    return rows.front().verdict;
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "classchar.report/1";
    j["claim"] = claim;
    j["group"] = group;
    j["verdict"] = to_string(overall());
    j["rows"] = nlohmann::json::array();
    for (const BoundRow& r : rows) {
        j["rows"].push_back({{"subject", r.subject},
                             {"measured", r.measured},
                             {"bound", r.bound},
                             {"margin", std::isfinite(r.margin) ? nlohmann::json(r.margin) : nlohmann::json(nullptr)},
                             {"verdict", to_string(r.verdict)}});
    }
    if (!extra.empty()) j["extra"] = extra;
    return j;
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

double log_mpz(const mpz_class& x) {
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

int cmp_products(const std::vector<PowTerm>& lhs, const std::vector<PowTerm>& rhs) {
    mpz_class L = 1;
    for (const auto* side : {&lhs, &rhs})
        for (const PowTerm& t : *side) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.exp.get_den_mpz_t());
    mpz_class a = 1, b = 1;
    auto apply = [&](const std::vector<PowTerm>& terms, mpz_class& same, mpz_class& other) {
        for (const PowTerm& t : terms) {
            mpq_class e = t.exp * L;
            mpz_class E = e.get_num();
            if (E >= 0) same *= ipow(t.base, E.get_ui());
            else other *= ipow(t.base, mpz_class(-E).get_ui());
        }
    };
    apply(lhs, a, b);
    apply(rhs, b, a);
    return cmp(a, b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace cc
