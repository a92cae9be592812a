#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cmarith/cmfield.hpp"

namespace cmarith {

using cplx = std::complex<double>;

// Hurwitz zeta zeta(s, x) for real s != 1 and 0 < x <= 1 (Euler-Maclaurin).
double hurwitz_zeta(double s, double x);

// log Gamma for complex argument with Re z > 0 (Lanczos).
cplx lgamma_c(cplx z);
// digamma for complex argument with Re z > 0.
cplx digamma_c(cplx z);

// Dirichlet character as a value table mod m (0 at non-coprime residues).
struct DirichletChar {
    i64 modulus = 1;
    std::vector<cplx> val;  // val[a % modulus]

    cplx operator()(i64 a) const {
        a %= modulus;
        if (a < 0) a += modulus;
        return val[size_t(a)];
    }
    bool is_odd() const;

    // quadratic character (disc | .), table mod |disc|
    static DirichletChar quadratic(i64 disc);
    // the two conjugate cubic characters mod f (f = 9 or a prime = 1 mod 3)
    static std::vector<DirichletChar> cubic(i64 conductor);
    // product character mod m1*m2 for coprime moduli
    DirichletChar times(const DirichletChar& other) const;
};

// L(0, chi) = sum_a chi(a) (1/2 - a/m); exact rational for the odd quadratic
// character of conductor D.
cplx dirichlet_L0(const DirichletChar& chi);
Rational dirichlet_L0_exact(i64 D);

// L'(0, chi) = sum_a chi(a) log Gamma(a/m) - L(0, chi) log m  (chi nonprincipal).
cplx dirichlet_Lderiv0(const DirichletChar& chi);

// L(s, chi) by Hurwitz zeta; completed form for odd chi:
//   Lambda(s) = (m/pi)^((s+1)/2) Gamma((s+1)/2) L(s, chi).
cplx dirichlet_L(const DirichletChar& chi, double s);
cplx completed_dirichlet_lambda(const DirichletChar& chi, double s);

// ---------------------------------------------------------------------------
// Hecke L-function of chi_E
// ---------------------------------------------------------------------------

enum class HeckeMode { abelian_factor, ideal_series, both };

struct HeckeLResult {
    double L0 = 0;
    double Lprime0 = 0;
    std::string method;
    i64 cutoff = 0;
    double est_error = 0;
};

// Self-dual L-function engine: Lambda(s) = C^(s/2) Gamma_R(s+1)^g L(s) with
// real coefficients r(m), evaluated by contour quadrature of the smoothed
// inverse-Mellin kernel and the functional-equation reflection.
class SelfDualHeckeL {
public:
    SelfDualHeckeL(int gamma_copies, double conductor, std::vector<double> coeffs);

    double lambda(double s) const;
    double lambda_deriv(double s) const;
    double tail_estimate(double s) const;
    i64 cutoff() const { return i64(r_.size()) - 1; }

    // log-derivative of the gamma factor at z
    double gamma_logderiv(double z) const;

private:
    cplx kernel(double z, double logm) const;        // F(z, m)
    cplx kernel_dz(double z, double logm) const;     // dF/dz
    cplx gamma_factor(cplx z) const;

    int g_;
    double C_;
    std::vector<double> r_;
    double contour_c_ = 1.25;
    double T_;
    double h_ = 0.05;
};

// Defaults per the project configuration: cutoff = max(50 sqrt(D^n D_F), 10^4).
i64 default_hecke_cutoff(const CMExtension& E);

HeckeLResult hecke_L_chiE_deriv0(const CMExtension& E, HeckeMode mode,
                                 i64 cutoff_override = 0);

// The Dirichlet-character factors of L(s, chi_E) for abelian F.
std::vector<DirichletChar> abelian_factors(const CMExtension& E);

// Lambda(s, chi_E) via the abelian factorization (for functional-equation and
// mode-agreement checks).
cplx completed_lambda_abelian(const CMExtension& E, double s);

// Exact rational Lambda(0, chi_E) = (2 h1/w1)(2 h2/w2) for biquadratic E.
Rational lambda0_exact_biquadratic(const CMExtension& E);

// Completed-L wrapper at s = 0 with the displayed log-derivative relation:
//   Lambda'/Lambda(0) = L'/L(0) + (1/2) log|D_E/D_F| - (n/2) log(4 pi e^gamma).
struct CompletedLView {
    double lambda0 = 0;
    double lambda_prime0 = 0;
    double logderiv = 0;           // Lambda'/Lambda(0)
    double relation_residual = 0;  // |direct - displayed relation|
};
CompletedLView completed_L_at_zero(const CMExtension& E, const HeckeLResult& lr);

}  // namespace cmarith
