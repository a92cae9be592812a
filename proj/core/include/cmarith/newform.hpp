#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "cmarith/quadfield.hpp"
#include "cmarith/weilrep.hpp"

namespace cmarith {

// Normalized cuspidal new eigenform of weight n, level D, nebentypus chi_k^n.
struct NewformData {
    int weight = 0;
    i64 level = 0;
    std::vector<cplx> c;           // c[m], index 0 unused
    std::vector<i64> c_int;        // exact values when the form has integer coefficients
    bool exact = false;

    i64 prec() const { return i64(c.size()) - 1; }
    cplx coeff(i64 m) const;
};

// Hecke theta series of the character psi((alpha)) = alpha^(n-1) on a class
// number one field: a newform in S_n(Gamma_0(D), chi_k^n) with integer
// coefficients.  Requires h_k = 1, n odd, and w_k | n-1.
NewformData cm_newform(const ImagQuadField& k, int weight, i64 prec);

// Atkin-Lehner pseudo-eigenvalue and coefficient table of g_Q for Q | D.
struct ALData {
    i64 Q = 1;
    cplx eps{1, 0};
    std::vector<cplx> cQ;  // cQ[m], index 0 unused
    cplx coeff(i64 m) const;
};
ALData atkin_lehner(const NewformData& g, i64 Q);

// lambda_q for a prime q | D.
cplx atkin_lehner_lambda(const NewformData& g, i64 q);

// chi_Q, the factor of chi_k supported on Q | D, as a Jacobi symbol.
int chi_factor(i64 m, i64 Q);

// Coefficients a~(m, mu) of the induction of g to the vector-valued side,
// for the lattice L = <-1> (+) Lambda of signature (n-1, 1):
//   a~(m, mu) = [m = Q_L(mu) mod 1] * sum_{Q_mu | Q | D} Q^(1-n) conj(gamma_Q) c_Q(mQ).
class InducedForm {
public:
    InducedForm(const NewformData& g, const HermLattice& L);

    const HermLattice& lattice() const { return *L_; }
    const DiscModule& disc() const { return L_->disc(); }
    i64 level() const { return D_; }
    int weight() const { return n_; }
    // largest m for which coefficients are available
    Rational max_index() const;

    cplx coeff(const Rational& m, i64 coset) const;

private:
    const HermLattice* L_;
    i64 D_;
    int n_;
    std::vector<ALData> al_;       // indexed by divisor list
    std::vector<i64> divisors_;
    std::vector<cplx> gamma_conj_; // conj(gamma_Q) per divisor
    std::vector<i64> qmu_;         // Q_mu per coset
};

InducedForm induce(const NewformData& g, const HermLattice& L);

}  // namespace cmarith
