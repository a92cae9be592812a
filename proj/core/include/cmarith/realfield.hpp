#pragma once

#include <optional>
#include <map>
#include <vector>

#include "cmarith/intmath.hpp"
#include "cmarith/rational.hpp"

namespace cmarith {

// Integer polynomial, ascending coefficients.
using PolyZ = std::vector<i64>;

// Element of Z[theta] in the power basis (length n).
using FElem = std::vector<i64>;

struct UnsupportedPrime : std::domain_error {
    explicit UnsupportedPrime(const std::string& msg) : std::domain_error(msg) {}
};

struct PrimeIdealF {
    i64 ell = 0;     // residue characteristic
    int f = 1;       // residue degree
    int e = 1;       // ramification index
    PolyZ gpoly;     // monic irreducible factor of min_poly mod ell (lifted to Z)

    i64 norm() const {
        i64 r = 1;
        for (int i = 0; i < f; ++i) r *= ell;
        return r;
    }
    bool operator==(const PrimeIdealF& o) const {
        return ell == o.ell && f == o.f && e == o.e && gpoly == o.gpoly;
    }
    bool operator<(const PrimeIdealF& o) const {
        if (ell != o.ell) return ell < o.ell;
        if (f != o.f) return f < o.f;
        return gpoly < o.gpoly;
    }
};

struct FactoredIdealF {
    std::vector<std::pair<PrimeIdealF, int>> factors;  // exponents may be negative

    bool is_integral() const {
        for (auto& [p, e] : factors)
            if (e < 0) return false;
        return true;
    }
    Rational norm() const {
        Rational r(1);
        for (auto& [p, e] : factors) {
            Rational pn(p.norm());
            for (int i = 0; i < (e < 0 ? -e : e); ++i) r = (e > 0) ? r * pn : r / pn;
        }
        return r;
    }
};

// Rational element y/den of F with y in Z[theta].
struct FElemQ {
    FElem num;
    i64 den = 1;
};

// Totally real number field F = Q(theta), theta a root of a monic integer
// polynomial with all roots real.  Prime factorization is supported at primes
// not dividing the index [O_F : Z[theta]] (Dedekind's criterion rejects the
// rest with UnsupportedPrime).
class TotallyRealField {
public:
    explicit TotallyRealField(PolyZ min_poly);

    int degree() const { return n_; }
    const PolyZ& min_poly() const { return f_; }
    i64 poly_disc() const { return disc_; }
    const std::vector<double>& roots() const { return roots_; }

    FElem zero() const { return FElem(size_t(n_), 0); }
    FElem one() const;
    FElem theta() const;
    FElem add(const FElem& x, const FElem& y) const;
    FElem sub(const FElem& x, const FElem& y) const;
    FElem mul(const FElem& x, const FElem& y) const;
    FElem smul(i64 c, const FElem& x) const;
    i64 trace(const FElem& x) const;
    i64 norm(const FElem& x) const;
    std::vector<double> embeddings(const FElem& x) const;
    std::vector<double> embeddings(const FElemQ& x) const;
    bool is_totally_positive(const FElemQ& x) const;
    Rational trace_q(const FElemQ& x) const;
    Rational norm_q(const FElemQ& x) const;

    // f'(theta); generates the different under the monogenic restriction.
    FElem different_gen() const;

    std::vector<PrimeIdealF> primes_above(i64 ell) const;

    // All prime ideals of norm <= X (throws UnsupportedPrime if an index
    // divisor <= X is hit).
    std::vector<PrimeIdealF> primes_upto_norm(i64 X) const;

    // Ideal counts a_F(m) for m <= X, plus the chi-weighted variant
    // chi(m)*a_F(m) for a quadratic character chi given as a callback.
    std::vector<i64> ideal_counts(i64 X) const;

    // Valuation of a nonzero element at a prime ideal.
    int valuation(const FElem& x, const PrimeIdealF& P) const;
    int valuation(const FElemQ& x, const PrimeIdealF& P) const;

    // Factor the principal fractional ideal (x) into prime ideals.
    FactoredIdealF factor_principal(const FElemQ& x) const;

    // Residue-field norm (down to F_ell, as an integer in [0, ell)) of the
    // unit part y / ell^v at P, where y is integral with val_P(y) = v and P is
    // unramified over ell.  The division is performed in the P-adic completion
    // via Hensel lifting of the local factor.
    i64 residue_norm_of_unit_part(const FElem& y, const PrimeIdealF& P, int v) const;

private:
    struct IdealLat;  // HNF lattice, defined in the .cpp
    std::vector<std::vector<i64>> mult_matrix(const FElem& x) const;

    PolyZ f_;
    int n_;
    i64 disc_;
    std::vector<double> roots_;
};

// --- polynomial utilities over F_ell (used by the field code and tests) ---

// Monic factorization of poly mod ell: returns (factor, multiplicity) pairs,
// factors monic irreducible, lifted to [0, ell) coefficients.
std::vector<std::pair<PolyZ, int>> factor_poly_mod(const PolyZ& poly, i64 ell, std::uint64_t seed = 12345);

i64 poly_disc(const PolyZ& f);

}  // namespace cmarith
