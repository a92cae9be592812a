#include "cmarith/intmath.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace cmarith {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<i64> primes_upto(i64 n) {
    std::vector<bool> sieve = std::vector<bool>(size_t(std::max<i64>(n + 1, 2)), true);
    sieve[0] = sieve[1] = false;
    for (i64 i = 2; i * i <= n; ++i)
        if (sieve[size_t(i)])
            for (i64 j = i * i; j <= n; j += i) sieve[size_t(j)] = false;
    std::vector<i64> out;
    for (i64 i = 2; i <= n; ++i)
        if (sieve[size_t(i)]) out.push_back(i);
    return out;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n <= 0) throw std::domain_error("factorize: argument must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(i64 n) {
    for (auto& [p, e] : factorize(n < 0 ? -n : n))
        if (e > 1) return false;
    return true;
}

int num_prime_divisors(i64 n) { return int(factorize(n < 0 ? -n : n).size()); }

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    base %= mod;
    if (base < 0) base += mod;
    i64 r = 1 % mod;
    while (exp > 0) {
        if (exp & 1) r = i64(i128(r) * base % mod);
        base = i64(i128(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

i64 mod_inv(i64 a, i64 mod) {
    i64 t = 0, nt = 1, r = mod, nr = a % mod;
    if (nr < 0) nr += mod;
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("mod_inv: not invertible");
    return t < 0 ? t + mod : t;
}

int legendre(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    i64 s = mod_pow(a, (p - 1) / 2, p);
    return s == 1 ? 1 : -1;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v2 = 0;
    while (n % 2 == 0) { n /= 2; ++v2; }
    if (v2 > 0) {
        if (a % 2 == 0) return 0;
        i64 am8 = ((a % 8) + 8) % 8;
        int k2 = (am8 == 1 || am8 == 7) ? 1 : -1;  // (a|2) = (2|a)
        if (v2 % 2 == 1) sign *= k2;
    }
    // now n odd positive; Jacobi symbol (a|n) by reciprocity
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    if (n != 1) return 0;
    return sign * result;
}

namespace {

// (a,b)_p for odd prime p, with a = p^alpha u, b = p^beta v.
int hilbert_odd(i64 a, i64 b, i64 p) {
    int alpha = 0, beta = 0;
    while (a % p == 0) { a /= p; ++alpha; }
    while (b % p == 0) { b /= p; ++beta; }
    int r = 1;
    if ((alpha & beta & 1) && legendre(-1, p) == -1) r = -r;
    if (beta & 1) r *= legendre(a, p);
    if (alpha & 1) r *= legendre(b, p);
    return r;
}

int hilbert_two(i64 a, i64 b) {
    int alpha = 0, beta = 0;
    while (a % 2 == 0) { a /= 2; ++alpha; }
    while (b % 2 == 0) { b /= 2; ++beta; }
    auto eps = [](i64 u) { return (((u - 1) / 2) % 2 + 2) % 2; };    // (u-1)/2 mod 2
    auto omg = [](i64 u) { return (((u * u - 1) / 8) % 2 + 2) % 2; };  // (u^2-1)/8 mod 2
    int e = int(eps(a) * eps(b));
    if (beta & 1) e += int(omg(a));
    if (alpha & 1) e += int(omg(b));
    return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

int hilbert_symbol(i64 a, i64 b, const Place& v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
    if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
    if (v.p == 2) return hilbert_two(a, b);
    return hilbert_odd(a, b, v.p);
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    // (a,b) depends only on square classes: clear denominators.
    return hilbert_symbol(checked_cast(i128(a.num()) * a.den(), "hilbert"),
                          checked_cast(i128(b.num()) * b.den(), "hilbert"), v);
}

}  // namespace cmarith
