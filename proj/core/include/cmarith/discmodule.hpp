#pragma once

#include <vector>

#include "cmarith/rational.hpp"

namespace cmarith {

using IMat = std::vector<std::vector<i64>>;

// Smith normal form S = U * M * V with U, V unimodular.
struct SmithNF {
    IMat U, V, S;
};
SmithNF smith_normal_form(const IMat& M);

IMat identity_matrix(int n);
IMat mat_mul(const IMat& A, const IMat& B);
// Exact inverse of a unimodular integer matrix.
IMat unimodular_inverse(const IMat& U);
// Inertia (n_plus, n_minus) of a nondegenerate symmetric integer matrix.
std::pair<int, int> symmetric_inertia(const IMat& G);

// Finite quadratic module L'/L of an even Z-lattice with bilinear Gram G
// ([x,y] = x^T G y, Q(x) = [x,x]/2).  Elements are indexed 0..order-1; the
// zero coset has index 0.  An element's pairing vector is its image y in
// Z^n / G Z^n (so the dual vector is G^{-1} y in lattice coordinates).
class DiscModule {
public:
    explicit DiscModule(const IMat& gram);

    i64 order() const { return order_; }
    int zrank() const { return n_; }
    const std::vector<i64>& cyclic_orders() const { return ords_; }

    Rational q_value(i64 idx) const { return qvals_[size_t(idx)]; }
    Rational pairing(i64 idx, i64 jdx) const;
    i64 add(i64 idx, i64 jdx) const;
    i64 neg(i64 idx) const;
    // idx scaled by an integer
    i64 smul(i64 c, i64 idx) const;
    i64 element_order(i64 idx) const;

    // Index of the coset of the dual vector with pairing vector y.
    i64 coset_of_pairing_vector(const std::vector<i64>& y) const;
    // A pairing-vector representative of the element.
    std::vector<i64> pairing_vector(i64 idx) const;

    // smallest N with N*Q(mu) integral for all mu
    i64 level() const { return level_; }

    // Gauss sum sum_mu e(Q(mu)) (used for quadratic-module isomorphism tests).
    std::pair<double, double> gauss_sum() const;

private:
    std::vector<i64> idx_to_coords(i64 idx) const;
    i64 coords_to_idx(const std::vector<i64>& c) const;

    int n_;
    i64 order_;
    i64 level_;
    IMat G_;
    IMat U_, Uinv_;
    std::vector<i64> ords_;            // cyclic orders d_i (may include 1s)
    std::vector<std::vector<Rational>> Ginv_;
    std::vector<Rational> qvals_;
    std::vector<std::vector<i64>> reps_;  // pairing vectors per element
};


// Upper-triangular (column) HNF basis of the full-rank lattice spanned by the
// given columns; basis[j][i] = 0 for i > j and basis[j][j] > 0.
std::vector<std::vector<i64>> hnf_basis(int n, std::vector<std::vector<i64>> cols);

std::vector<std::vector<Rational>> rational_matrix_inverse(
    const std::vector<std::vector<Rational>>& M);

}  // namespace cmarith
