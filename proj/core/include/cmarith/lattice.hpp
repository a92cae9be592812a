#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cmarith/discmodule.hpp"
#include "cmarith/quadfield.hpp"

namespace cmarith {

// Hermitian O_k-lattice given by a Z-basis inside the standard module k^m,
// with the hermitian form <x,y> = sum_{j,l} x_j conj(y_l) gram[j][l] * scale.
// The standard constructor uses the O_k-basis {e_1..e_m}, Z-basis
// {e_1..e_m, pi e_1..pi e_m}; ideal twists produce non-free Z-bases.
class HermLattice {
public:
    HermLattice(ImagQuadField k, std::vector<std::vector<QuadInt>> gram,
                Rational scale = Rational(1));

    static HermLattice standard_selfdual(const ImagQuadField& k, int rank);
    // rank-1 lattice with <x,y> = c * x conj(y)
    static HermLattice rank1(const ImagQuadField& k, i64 c);

    const ImagQuadField& field() const { return k_; }
    int rank() const { return m_; }
    int zrank() const { return 2 * m_; }
    const Rational& scale() const { return scale_; }
    const std::vector<std::vector<QuadInt>>& gram() const { return gram_; }

    // hermitian product of two Z-basis coordinate vectors (length 2m)
    QuadRat herm(const std::vector<i64>& x, const std::vector<i64>& y) const;
    Rational qvalue(const std::vector<i64>& x) const;

    // integer bilinear Gram of the trace form: T[i][j] = Tr<b_i,b_j> * scale
    const IMat& trace_gram() const { return tgram_; }
    std::pair<int, int> signature() const;  // hermitian signature (pos, neg)
    bool is_positive_definite() const;

    Rational det_hermitian() const;  // det of the scaled hermitian Gram

    const DiscModule& disc() const;
    bool is_selfdual() const;

    HermLattice direct_sum(const HermLattice& other) const;
    // Lattice I*L with form scaled by 1/N(I).
    HermLattice ideal_twist(const QuadIdeal& I) const;
    // Twist by the product of ramified primes over q | Q (Q | D, L self-dual).
    HermLattice ramified_twist(i64 Q) const;

    // All x with 0 < Q(x) <= bound (both signs included; exact arithmetic at
    // the leaves).  Requires positive definite.
    std::vector<std::pair<std::vector<i64>, Rational>> short_vectors(const Rational& bound) const;
    // Brute-force oracle with box bounds from the inverse Gram diagonal.
    std::vector<std::pair<std::vector<i64>, Rational>> short_vectors_naive(const Rational& bound) const;

    // Representation counts of the dual lattice per coset:
    // rep(m, mu) = #{x in mu + L : Q(x) = m}, for 0 <= m <= prec.
    struct ThetaTable {
        i64 level = 1;
        i64 prec = 0;
        i64 order = 1;
        std::vector<i64> flat;  // index (m*level)*order + coset
        i64 rep(const Rational& m, i64 coset) const;
        // nonzero entries as ((m*level, coset), count), ascending
        std::vector<std::pair<std::pair<i64, i64>, i64>> nonzero() const;
    };
    ThetaTable theta_coeffs(i64 prec) const;

    // #{x in mu + L' : Q(x) = m} (from a fresh enumeration)
    i64 rep_number(const Rational& m, i64 coset) const;
    // scalar theta coefficients: R^sc(m) = #{x in L : Q(x) = m}, m <= prec integer
    std::vector<i64> scalar_theta(i64 prec) const;

    i64 aut_count() const;
    bool is_isometric_to(const HermLattice& other) const;

private:
    void build_trace_gram();
    std::vector<std::pair<std::vector<i64>, Rational>> enumerate_gram(
        const std::vector<std::vector<Rational>>& A, const Rational& bound) const;

    ImagQuadField k_;
    int m_;
    std::vector<std::vector<QuadInt>> gram_;
    Rational scale_;
    std::vector<std::vector<QuadInt>> zbasis_;  // 2m vectors in k^m (O_k coords)
    IMat tgram_;
    mutable std::optional<DiscModule> disc_;
};

// Fourth root of unity as exact pair (re, im) in {(1,0),(-1,0),(0,1),(0,-1)}.
struct Root4 {
    int re = 1;
    int im = 0;
    Root4 operator*(const Root4& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Root4 conj() const { return {re, -im}; }
    bool operator==(const Root4& o) const { return re == o.re && im == o.im; }
};

}  // namespace cmarith
