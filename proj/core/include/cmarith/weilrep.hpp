#pragma once

#include <complex>
#include <vector>

#include "cmarith/discmodule.hpp"
#include "cmarith/lattice.hpp"

namespace cmarith {

using cplx = std::complex<double>;
using CMat = std::vector<std::vector<cplx>>;

CMat cmat_mul(const CMat& A, const CMat& B);

// Weil representation of SL_2(Z) on C[A] for the discriminant module of a
// lattice of Z-signature (b+, b-):
//   rho(T) phi_mu = e(Q(mu)) phi_mu
//   rho(S) phi_mu = sigma/sqrt|A| * sum_nu e(-[mu,nu]) phi_nu,
// with sigma = e((b- - b+)/8).  The conjugated variant takes entrywise
// complex conjugates (the representation written omega-bar).
struct WeilRep {
    i64 order = 0;
    int sig_pos = 0, sig_neg = 0;
    bool conjugated = false;
    std::vector<cplx> rhoT;  // diagonal
    CMat rhoS;
};

WeilRep generator_matrices(const DiscModule& A, std::pair<int, int> z_signature,
                           bool conjugated = false);
WeilRep generator_matrices(const HermLattice& L, bool conjugated = false);

// Residuals of the defining relations, for tests and the verification suite.
struct WeilRelationResiduals {
    double s4_identity;       // || rho(S)^4 - 1 ||
    double braid;             // || (rho(S)rho(T))^3 - rho(S)^2 ||
    double unitarity;         // || rho(S)* rho(S) - 1 ||
    double s2_negation_phase; // || rho(S)^2 - e((b- - b+)/4) * (mu -> -mu) ||
    double max() const;
};
WeilRelationResiduals weil_relation_residuals(const WeilRep& W, const DiscModule& A);

// delta_p: 1 if p = 1 mod 4, i if p = 3 mod 4 (p odd).
Root4 delta_p(i64 p);

// Local index gamma_p for p | D:
//   gamma_p = delta_p^{-n} * (D,p)_p^n * inv_p(V),
//   inv_p(V) = ( (-1)^{n(n-1)/2} det(Gram), -D )_p.
Root4 gamma_p(i64 p, int n, const Rational& det_herm, i64 D);
Root4 gamma_Q(i64 Q, int n, const Rational& det_herm, i64 D);

// Q_mu = product of p | D with nonzero p-part of mu.
i64 q_mu(const DiscModule& A, i64 mu, i64 D);

inline cplx to_cplx(const Root4& r) { return cplx(r.re, r.im); }

}  // namespace cmarith
