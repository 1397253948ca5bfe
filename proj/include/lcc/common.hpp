#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcc {

using Rational = mpq_class;
using Integer = mpz_class;

// Thrown when an enumeration would exceed its configured size budget.
// `count` holds how many items were produced before giving up.
struct BudgetExceeded : std::runtime_error {
    std::uint64_t count;
    BudgetExceeded(const std::string& what, std::uint64_t count_so_far)
        : std::runtime_error(what), count(count_so_far) {}
};

Integer binom(long n, long k);
std::uint64_t binom_u64(long n, long k);  // throws on overflow
Integer factorial(long n);
Integer ipow(const Integer& base, unsigned long e);

// "p/q" always, even for integers, so files diff cleanly.
std::string rat_str(const Rational& q);
Rational parse_rat(const std::string& s);

// Budget override: LCC_BUDGET_SCALE multiplies every configured limit.
std::uint64_t scaled_budget(std::uint64_t base);

}  // namespace lcc
