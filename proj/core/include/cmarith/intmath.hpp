#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cmarith/rational.hpp"

namespace cmarith {

// A place of Q: a finite prime p, or the archimedean place.
struct Place {
    bool infinite = false;
    i64 p = 0;

    static Place real() { return Place{true, 0}; }
    static Place prime(i64 p) { return Place{false, p}; }
};

bool is_prime(i64 n);
std::vector<i64> primes_upto(i64 n);

// n = product p^e, sorted by p.  n must be positive.
std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_squarefree(i64 n);
int num_prime_divisors(i64 n);

i64 mod_pow(i64 base, i64 exp, i64 mod);
i64 mod_inv(i64 a, i64 mod);

// Legendre symbol (a|p) for odd prime p.
int legendre(i64 a, i64 p);

// Kronecker symbol (a|n) for arbitrary integers (n may be negative or even).
int kronecker(i64 a, i64 n);

// Hilbert symbol (a,b)_v for nonzero rationals at a place of Q.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);
int hilbert_symbol(i64 a, i64 b, const Place& v);

}  // namespace cmarith
