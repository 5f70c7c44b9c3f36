#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace tsd {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational from numerator/denominator; denominator must be nonzero.
Rat make_rat(const Int& num, const Int& den);

// Parses "p" or "p/q" with optional leading '-'.  Throws ParseError.
Rat parse_rat(const std::string& text);

// "p/q", or just "p" for integers.
std::string rat_to_string(const Rat& x);

bool is_integer(const Rat& x);

// x reduced mod m into [0, m).  m > 0.
Rat mod_rat(const Rat& x, long m);

bool is_prime(const Int& n);

// p-adic valuation of a rational.  infinite is set when x == 0.
struct PadicValuation {
    Int prime;
    bool infinite = false;
    long value = 0;
};

// Throws std::invalid_argument unless p is prime.
PadicValuation padic_val(const Rat& x, const Int& p);

// 2-adic valuation helper; returns a large sentinel for x == 0.
long v2(const Rat& x);
constexpr long kValuationInfinity = 1L << 60;

// Trial-division factorization of n > 0 by primes <= bound.  If the
// remaining cofactor is neither 1 nor prime, throws BoundExceeded.
std::map<long, int> factor_trial(const Int& n, long bound);

Int binomial(unsigned long n, unsigned long k);

// (sum e_i)! / prod e_i!
Int multinomial(const std::vector<unsigned>& e);

} // namespace tsd
