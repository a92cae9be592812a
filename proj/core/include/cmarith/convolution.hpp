#pragma once

#include <complex>
#include <vector>

#include "cmarith/newform.hpp"

namespace cmarith {

// Index map A_Lambda -> A_L for L = <-1> (+) Lambda.
std::vector<i64> embed_cosets(const HermLattice& L, const HermLattice& Lambda);

// Terms b(m) of a convolution Dirichlet series with gamma factor
// Gamma(s/2 + n - 1) and denominators (4 pi m)^(s/2+n-1).
struct ConvolutionSeries {
    int weight = 0;                                  // n
    std::vector<std::pair<Rational, cplx>> terms;    // (m, b(m)), m > 0 ascending
    double tail_constant = 0;                        // measured sup |b(m)| / m^(n-1)

    // value at real s in the convergence region, plus a crude tail bound
    std::pair<cplx, double> evaluate(double s) const;
};

// Vector-valued convolution: b(m) = sum_mu conj(a~(m, iota(mu))) R_Lambda(m, mu).
ConvolutionSeries conv_coeffs(const InducedForm& gt, const HermLattice& Lambda, i64 prec);
// Scalar convolution: b(m) = conj(c(m)) R^sc(m).
ConvolutionSeries conv_coeffs_scalar(const NewformData& g, const std::vector<cplx>& theta_sc,
                                     i64 prec);

// Both sides of the coset-twist relation
//   sum_{mu : Q_mu | Q} R_Lambda(m, mu) = R_{Lambda_q}(mQ, 0)
// by independent enumerations (exact integers).
std::pair<i64, i64> coset_twist_identity(const HermLattice& Lambda, const Rational& m, i64 Q);

// Per-index residuals of the coefficient-level identity
//   sum_mu conj(a~(m,iota(mu))) R_Lambda(m,mu)
//     = sum_{Q | D, mQ integral} Q^(1-n) gamma_Q conj(c_Q(mQ)) R^sc_{Lambda_q}(mQ).
struct IdentityReport {
    std::vector<std::pair<Rational, double>> residuals;  // (m, |lhs - rhs|)
    double max_residual = 0;
};
IdentityReport scalar_vector_identity(const NewformData& g, const HermLattice& Lambda, i64 prec,
                                      int flip_gamma_at = 0 /* prime, for mutation tests */);

// Finite Euler-type product  prod_p (1 + c_p p^(s/2))  and d/ds at s = 0.
struct EulerFactorProduct {
    std::vector<std::pair<i64, cplx>> factors;  // (p, c_p)
    cplx value(double s) const;
    // derivative at s = 0; multiplicity = number of vanishing factors at 0
    std::pair<cplx, int> derivative_at_zero() const;
};

// Class-group-twisted scalar theta function
//   theta^sc_{eta,Lambda} = sum_h eta(h)/|Aut(Lambda_h)| theta^sc_{Lambda_h},
// where h runs over ideal classes of k and eta is the character sending the
// chosen generator of the (cyclic) class group to e(t/h).
struct EtaTheta {
    std::vector<cplx> coeff;  // index m
    bool cuspidal_flag = false;
};
EtaTheta eta_twisted_theta(const HermLattice& Lambda, i64 character_index, i64 prec);

// |Aut| over the class-group orbit, for the twist-invariance check.
std::vector<i64> aut_counts_over_classes(const HermLattice& Lambda);

}  // namespace cmarith
