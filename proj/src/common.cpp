#include "lcc/common.hpp"

#include <cstdlib>
#include <limits>

namespace lcc {

Integer binom(long n, long k) {
    Integer out;
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::uint64_t binom_u64(long n, long k) {
    Integer b = binom(n, k);
    if (!b.fits_ulong_p()) throw std::overflow_error("binomial does not fit in 64 bits");
    return b.get_ui();
}

Integer factorial(long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rat(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::uint64_t scaled_budget(std::uint64_t base) {
    const char* env = std::getenv("LCC_BUDGET_SCALE");
    if (!env || !*env) return base;
    char* end = nullptr;
    double scale = std::strtod(env, &end);
    if (end == env || !(scale > 0)) return base;
    double scaled = static_cast<double>(base) * scale;
    if (scaled >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(scaled);
}

}  // namespace lcc
