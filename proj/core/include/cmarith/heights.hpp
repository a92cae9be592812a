#pragma once

#include "cmarith/cmcycles.hpp"

namespace cmarith {

// Faltings-height calculators and the consistency web between the two
// closed-form height theorems.
struct HeightReport {
    i64 D = 0;
    int n = 0;
    double lambda0_chiE = 0;
    double logderiv_chiE = 0;   // Lambda'/Lambda(0, chi_E)
    double logderiv_chik = 0;   // Lambda'/Lambda(0, chi_k)
    double hfalt_k = 0;
    double hfalt_E_Phi = 0;
    double deg_big_value = 0;
    double omega_degree = 0;    // [omega^ : Y_big] prediction
    double gross_c = 0;
    double consistency_residual = 0;
};

// Lambda'/Lambda(0, chi_k) through the Dirichlet machinery.
double logderiv_chik(i64 D);

// h^Falt_k = -1/2 Lambda'/Lambda(0,chi_k) - 1/4 log(16 pi^3 e^gamma).
double hfalt_k(i64 D);
// Independent oracle: 1/4 log(D/(4 pi^2)) - (w/(4h)) sum chi(a) log Gamma(a/D).
double hfalt_k_gamma_product(i64 D);

// Closed form of the CM height for (E, Phi) of signature (n-1, 1):
//   -(2/n) Lambda'/Lambda(0,chi_E) + ((4-n)/2) Lambda'/Lambda(0,chi_k)
//   - (n/4) log(16 pi^3 e^gamma).
double hfalt_E_Phi(int n, double logderiv_chiE, double logderiv_chik_val);

// [omega^ : Y_big] = -(2/n) deg_C(Y_big) Lambda'/Lambda(0, chi_E).
double omega_degree_prediction(int n, double deg_big_value, double logderiv_chiE);

// [Z^(0) : Y_sm] = -[omega^ : Y_sm] = 2 deg_C(Y_sm) Lambda'/Lambda(0, chi_k).
double small_cm_constant(double deg_small_value, double logderiv_chik_val);

// c = (4 - 2n) h^Falt_k + log(4 pi^2 D).
double gross_constant(int n, i64 D, double hfalt_k_value);

// Residual of the equivalence of the two height theorems:
//   omega_degree/deg = h^Falt_(E,Phi) + ((n-4)/2) Lambda'/Lambda(0,chi_k)
//                      + (n/4) log(16 pi^3 e^gamma).
double consistency_residual(int n, double logderiv_chiE, double logderiv_chik_val);

HeightReport height_report(const CMExtension& E, const HeckeLResult& lr);

}  // namespace cmarith
