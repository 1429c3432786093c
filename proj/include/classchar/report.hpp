#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>
#include <vector>

namespace cc {

enum class Verdict { Pass, Fail, Vacuous, Advisory, Observational, Flagged };

std::string to_string(Verdict v);

// One checked row: a class, a (class, character) pair, a parameter point.
struct BoundRow {
    std::string subject;
    std::string measured;
    std::string bound;
    double margin = 0.0;
    Verdict verdict = Verdict::Pass;
};

struct BoundReport {
    std::string claim;
    std::string group;
    std::vector<BoundRow> rows;
    nlohmann::json extra = nlohmann::json::object();

    // Fail if any row failed; otherwise Pass if any row passed; otherwise the
    // verdict of the first row (or Vacuous for an empty report).
    Verdict overall() const;
    std::size_t count(Verdict v) const;
    nlohmann::json to_json() const;
};

// A factor base^exp with base >= 1 and a rational exponent.
struct PowTerm {
    mpz_class base;
    mpq_class exp;
};

// Sign of prod(lhs) - prod(rhs), decided exactly by raising both sides to the
// common denominator of the exponents.
int cmp_products(const std::vector<PowTerm>& lhs, const std::vector<PowTerm>& rhs);

mpz_class ipow(const mpz_class& b, unsigned long e);
double log_mpz(const mpz_class& x);

}  // namespace cc
