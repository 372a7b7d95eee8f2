#include "latspec/combinatorics.hpp"

namespace latspec {

Integer binom(long n, long k) {
    if (n < 0) throw invalid_parameter_error("binom: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer q_int(long i, long q) {
    if (q < 2) throw invalid_parameter_error("q_int: q must be >= 2");
    if (i < 1) return 0;
    Integer num = int_pow(Integer(q), static_cast<unsigned long>(i)) - 1;
    return num / Integer(q - 1);  // always divides
}

Integer q_binom(long i, long j, long q) {
    if (q < 2) throw invalid_parameter_error("q_binom: q must be >= 2");
    if (j < 0 || j > i) return 0;
    Integer num = 1;
    Integer den = 1;
    for (long t = 0; t < j; ++t) {
        num *= q_int(i - t, q);
        den *= q_int(t + 1, q);
    }
    Integer r;
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0)
        throw verification_error("q_binom: quotient of q-integer products is not integral");
    mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace latspec
