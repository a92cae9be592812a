#pragma once

#include <optional>
#include <set>
#include <vector>

#include "cmarith/cmfield.hpp"
#include "cmarith/lfun.hpp"

namespace cmarith {

// Incoherent rank-1 context over E/F: the quadratic form Q(x) = beta x conj(x)
// with beta generating d_F^{-1} at every finite prime and exactly one negative
// real embedding (the special place).
struct EisensteinContext {
    CMExtension E;
    FElemQ beta;
    int special_embedding = -1;
    int r = 0;  // ramified places of F in E, archimedean included

    explicit EisensteinContext(CMExtension ext);
    // alternative beta differing by a norm from E (same Diff sets)
    FElemQ beta_times_norm(i64 a, i64 b) const;  // beta * N_{E/F}(a + b sqrt(-D)) = beta*(a^2 + D b^2)
};

// Diff(C, alpha): finite primes p nonsplit in E with chi_{E,p}(alpha beta) = -1.
std::vector<PrimeIdealF> diff_set(const EisensteinContext& ctx, const FElemQ& alpha);
std::vector<PrimeIdealF> diff_set_with_beta(const EisensteinContext& ctx, const FElemQ& alpha,
                                            const FElemQ& beta);

// rho(b) = #{ideals B of O_E with B conj(B) = b O_E}: 0 unless b integral,
// multiplicative with split p^k -> k+1, inert p^k -> [k even], ramified -> 1.
i64 rho_count(const CMExtension& E, const FactoredIdealF& b);
// independent oracle: direct enumeration of divisors of b O_E with the
// conjugation condition.
i64 rho_count_bruteforce(const CMExtension& E, const FactoredIdealF& b);

// a_F(alpha, 0) of the central Eisenstein derivative:
//   0 when |Diff| > 1, else -2^(r-1) rho(alpha d_F p^-eps) ord_p(alpha p d_F) log N(p).
double a_F_alpha(const EisensteinContext& ctx, const FElemQ& alpha);

// a_F(0, mu): -2 Lambda'(0, chi_E) at mu = 0, zero at other cosets.
double a_F_zero(const EisensteinContext& ctx, const HeckeLResult& lr);

// sum of a_F(alpha, 0) over totally positive alpha in d_F^{-1} of trace m
double trace_sum(const EisensteinContext& ctx, i64 m);
std::vector<FElemQ> trace_candidates(const EisensteinContext& ctx, i64 m);

// deg_C(Y_sm) = (h/w)^2 2^(1-o(D)) / |Aut(Lambda)|
Rational deg_small(const ImagQuadField& k, i64 aut_lambda);

// deg_C(Y_big) = n (h/w) Lambda(0, chi_E) / 2^(r-1); exact in biquadratic mode.
struct BigDegree {
    double value = 0;
    std::optional<Rational> exact;  // set for [F:Q] = 2
    Rational deg_over_n_exact() const;
};
BigDegree deg_big(const CMExtension& E, const HeckeLResult& lr);

// Exact consistency data of the class-number-formula identity in the
// biquadratic case: |B~| = w_E Lambda(0,chi_E) must be a positive integer
// divisible by 2^(r-1).
struct GenusGroupCheck {
    Rational b_tilde;       // w_E * Lambda(0)
    bool integral = false;
    bool divisible = false; // by 2^(r-1)
};
GenusGroupCheck genus_group_check(const CMExtension& E);

}  // namespace cmarith
