#include "cmarith/heights.hpp"

#include <cmath>

namespace cmarith {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
double log_16pi3egamma() { return std::log(16.0 * M_PI * M_PI * M_PI) + kEulerGamma; }
}  // namespace

double logderiv_chik(i64 D) {
    auto chi = DirichletChar::quadratic(-D);
    double L0 = dirichlet_L0(chi).real();
    double Lp = dirichlet_Lderiv0(chi).real();
    return Lp / L0 + 0.5 * std::log(double(D)) -
           0.5 * std::log(4 * M_PI * std::exp(kEulerGamma));
}

double hfalt_k(i64 D) { return -0.5 * logderiv_chik(D) - 0.25 * log_16pi3egamma(); }

double hfalt_k_gamma_product(i64 D) {
    ImagQuadField k(D);
    double s = 0;
    for (i64 a = 1; a < D; ++a) s += double(k.chi(a)) * std::lgamma(double(a) / double(D));
    double w = double(k.unit_count()), h = double(k.class_number());
    return 0.25 * std::log(double(D) / (4 * M_PI * M_PI)) - (w / (4 * h)) * s;
}

double hfalt_E_Phi(int n, double logderiv_chiE, double logderiv_chik_val) {
    return -2.0 / double(n) * logderiv_chiE + (4.0 - double(n)) / 2.0 * logderiv_chik_val -
           double(n) / 4.0 * log_16pi3egamma();
}

double omega_degree_prediction(int n, double deg_big_value, double logderiv_chiE) {
    return -2.0 / double(n) * deg_big_value * logderiv_chiE;
}

double small_cm_constant(double deg_small_value, double logderiv_chik_val) {
    return 2.0 * deg_small_value * logderiv_chik_val;
}

double gross_constant(int n, i64 D, double hfalt_k_value) {
    return (4.0 - 2.0 * double(n)) * hfalt_k_value + std::log(4 * M_PI * M_PI * double(D));
}

double consistency_residual(int n, double logderiv_chiE, double logderiv_chik_val) {
    double per_deg = -2.0 / double(n) * logderiv_chiE;  // omega prediction / deg
    double rhs = hfalt_E_Phi(n, logderiv_chiE, logderiv_chik_val) +
                 (double(n) - 4.0) / 2.0 * logderiv_chik_val +
                 double(n) / 4.0 * log_16pi3egamma();
    return std::fabs(per_deg - rhs);
}

HeightReport height_report(const CMExtension& E, const HeckeLResult& lr) {
    HeightReport rep;
    rep.D = E.k().D();
    rep.n = E.n();
    auto v = completed_L_at_zero(E, lr);
    rep.lambda0_chiE = v.lambda0;
    rep.logderiv_chiE = v.logderiv;
    rep.logderiv_chik = logderiv_chik(rep.D);
    rep.hfalt_k = hfalt_k(rep.D);
    rep.hfalt_E_Phi = hfalt_E_Phi(rep.n, rep.logderiv_chiE, rep.logderiv_chik);
    auto bd = deg_big(E, lr);
    rep.deg_big_value = bd.value;
    rep.omega_degree = omega_degree_prediction(rep.n, rep.deg_big_value, rep.logderiv_chiE);
    rep.gross_c = gross_constant(rep.n, rep.D, rep.hfalt_k);
    rep.consistency_residual = consistency_residual(rep.n, rep.logderiv_chiE, rep.logderiv_chik);
    return rep;
}

}  // namespace cmarith
