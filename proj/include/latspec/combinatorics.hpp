#pragma once

#include "latspec/rational.hpp"

namespace latspec {

/// C(n, k). Returns 0 when k < 0 or k > n. Requires n >= 0.
Integer binom(long n, long k);

/// q-integer [i]_q = (q^i - 1)/(q - 1) for i >= 1, and 0 for i < 1.
/// Requires q >= 2.
Integer q_int(long i, long q);

/// Gaussian coefficient: the number of j-dimensional subspaces of an
/// i-dimensional space over a q-element field, computed as a quotient of
/// q-integer products with the division verified exact. Returns 0 when
/// j < 0 or j > i. Requires q >= 2.
Integer q_binom(long i, long j, long q);

bool is_prime(long p);

}  // namespace latspec
