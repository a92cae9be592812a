#include "cmarith/lfun.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmarith {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}

double hurwitz_zeta(double s, double x) {
    if (x <= 0 || x > 1) throw std::domain_error("hurwitz_zeta: 0 < x <= 1 required");
    if (std::fabs(s - 1.0) < 1e-12) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int N = 14;
    const int J = 12;
    // Bernoulli numbers B_2..B_24
    static const double B[] = {1.0 / 6,  -1.0 / 30,   1.0 / 42,      -1.0 / 30,
                               5.0 / 66, -691.0 / 2730, 7.0 / 6,     -3617.0 / 510,
                               43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
                               -236364091.0 / 2730};
    double sum = 0;
    for (int k = 0; k < N; ++k) sum += std::pow(x + k, -s);
    double xN = x + N;
    sum += std::pow(xN, 1 - s) / (s - 1);
    sum += 0.5 * std::pow(xN, -s);
    double poch = s;  // (s)_1
    double fact = 1;
    for (int j = 1; j <= J; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        // (s)_{2j-1} = s (s+1) ... (s + 2j - 2)
        double term = B[j - 1] / fact * poch * std::pow(xN, -s - 2 * j + 1);
        sum += term;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
    }
    return sum;
}

cplx lgamma_c(cplx z) {
    // Lanczos, g = 7
    static const double c[] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                               771.32342877765313,   -176.61502916214059, 12.507343278686905,
                               -0.13857109526572012, 9.9843695780195716e-6,
                               1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        return std::log(M_PI) - std::log(std::sin(M_PI * z)) - lgamma_c(cplx(1, 0) - z);
    }
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx digamma_c(cplx z) {
    // recurrence to push Re z >= 10, then the asymptotic series
    cplx shift(0, 0);
    while (z.real() < 10) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    cplx inv = 1.0 / z;
    cplx inv2 = inv * inv;
    cplx r = std::log(z) - 0.5 * inv;
    static const double B2k_over[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132,
                                      -691.0 / 32760, 1.0 / 12};
    cplx p = inv2;
    for (double coef : B2k_over) {
        r -= coef * p;
        p *= inv2;
    }
    return r + shift;
}

bool DirichletChar::is_odd() const {
    cplx v = (*this)(-1);
    return std::abs(v - cplx(-1, 0)) < 1e-12;
}

DirichletChar DirichletChar::quadratic(i64 disc) {
    DirichletChar chi;
    chi.modulus = disc < 0 ? -disc : disc;
    chi.val.resize(size_t(chi.modulus));
    for (i64 a = 0; a < chi.modulus; ++a) chi.val[size_t(a)] = cplx(double(kronecker(disc, a)), 0);
    return chi;
}

std::vector<DirichletChar> DirichletChar::cubic(i64 f) {
    bool ok = (f == 9) || (is_prime(f) && f % 3 == 1);
    if (!ok) throw std::domain_error("DirichletChar::cubic: conductor must be 9 or a prime = 1 mod 3");
    // (Z/f)^x is cyclic; find a generator
    i64 phi = (f == 9) ? 6 : f - 1;
    i64 g = 0;
    for (i64 cand = 2; cand < f; ++cand) {
        if (std::gcd(cand, f) != 1) continue;
        i64 ord = 1;
        i64 v = cand % f;
        while (v != 1) {
            v = i64(i128(v) * cand % f);
            ++ord;
        }
        if (ord == phi) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::logic_error("DirichletChar::cubic: no generator found");
    std::vector<DirichletChar> out;
    for (int j : {1, 2}) {
        DirichletChar chi;
        chi.modulus = f;
        chi.val.assign(size_t(f), cplx(0, 0));
        i64 v = 1;
        for (i64 t = 0; t < phi; ++t) {
            double ang = 2 * M_PI * double(j) * double(t % 3) / 3.0;
            chi.val[size_t(v)] = cplx(std::cos(ang), std::sin(ang));
            v = i64(i128(v) * g % f);
        }
        // chi has order 3: force exact cube roots at t multiples
        out.push_back(chi);
    }
    return out;
}

DirichletChar DirichletChar::times(const DirichletChar& other) const {
    if (std::gcd(modulus, other.modulus) != 1)
        throw std::domain_error("DirichletChar::times: moduli must be coprime");
    DirichletChar chi;
    chi.modulus = modulus * other.modulus;
    chi.val.resize(size_t(chi.modulus));
    for (i64 a = 0; a < chi.modulus; ++a) chi.val[size_t(a)] = (*this)(a)*other(a);
    return chi;
}

cplx dirichlet_L0(const DirichletChar& chi) {
    cplx s(0, 0);
    for (i64 a = 1; a < chi.modulus; ++a)
        s += chi(a) * (0.5 - double(a) / double(chi.modulus));
    return s;
}

Rational dirichlet_L0_exact(i64 D) {
    ImagQuadField k(D);  // validates fundamental odd
    i64 acc = 0;
    for (i64 a = 1; a < D; ++a) acc += k.chi(a) * a;
    return Rational(-acc, D);
}

cplx dirichlet_Lderiv0(const DirichletChar& chi) {
    cplx sum(0, 0);
    cplx chisum(0, 0);
    for (i64 a = 1; a < chi.modulus; ++a) {
        cplx v = chi(a);
        if (v == cplx(0, 0)) continue;
        sum += v * std::lgamma(double(a) / double(chi.modulus));
        chisum += v;
    }
    if (std::abs(chisum) > 1e-9)
        throw std::domain_error("dirichlet_Lderiv0: principal character unsupported");
    return sum - dirichlet_L0(chi) * std::log(double(chi.modulus));
}

cplx dirichlet_L(const DirichletChar& chi, double s) {
    cplx sum(0, 0);
    for (i64 a = 1; a <= chi.modulus; ++a) {
        cplx v = chi(a);
        if (v == cplx(0, 0)) continue;
        sum += v * hurwitz_zeta(s, double(a) / double(chi.modulus));
    }
    return sum * std::pow(double(chi.modulus), -s);
}

cplx completed_dirichlet_lambda(const DirichletChar& chi, double s) {
    if (!chi.is_odd()) throw std::domain_error("completed_dirichlet_lambda: odd character required");
    double m = double(chi.modulus);
    cplx gam = std::exp(lgamma_c(cplx((s + 1) / 2, 0)));
    return std::pow(m / M_PI, (s + 1) / 2) * gam * dirichlet_L(chi, s);
}

// ---------------------------------------------------------------------------
// contour engine
// ---------------------------------------------------------------------------

SelfDualHeckeL::SelfDualHeckeL(int gamma_copies, double conductor, std::vector<double> coeffs)
    : g_(gamma_copies), C_(conductor), r_(std::move(coeffs)) {
    if (g_ < 1) throw std::domain_error("SelfDualHeckeL: gamma_copies >= 1 required");
    // truncation: |Gamma((x+iT)/2)|^g decays like exp(-g pi T / 4)
    T_ = 4.0 * 42.0 / (M_PI * double(g_));
}

cplx SelfDualHeckeL::gamma_factor(cplx z) const {
    cplx lg = 0.5 * z * std::log(C_) - double(g_) * (z + 1.0) / 2.0 * std::log(M_PI) +
              double(g_) * lgamma_c((z + 1.0) / 2.0);
    return std::exp(lg);
}

double SelfDualHeckeL::gamma_logderiv(double z) const {
    cplx v = 0.5 * std::log(C_) - double(g_) / 2.0 * std::log(M_PI) +
             double(g_) / 2.0 * digamma_c(cplx((z + 1) / 2, 0));
    return v.real();
}

cplx SelfDualHeckeL::kernel(double z, double logm) const {
    cplx sum(0, 0);
    const double c = contour_c_;
    for (double t = 0; t <= T_; t += h_) {
        cplx w(c, t);
        cplx f = gamma_factor(z + w) * std::exp(-(z + w) * logm) / w;
        sum += (t == 0 ? 0.5 : 1.0) * f;
    }
    // integrand at -t is the conjugate for real z: total = 2 Re(sum) * h / (2 pi)
    return cplx(sum.real() * h_ / M_PI, 0);
}

cplx SelfDualHeckeL::kernel_dz(double z, double logm) const {
    cplx sum(0, 0);
    const double c = contour_c_;
    for (double t = 0; t <= T_; t += h_) {
        cplx w(c, t);
        cplx zz = z + w;
        cplx ell = 0.5 * std::log(C_) - double(g_) / 2.0 * std::log(M_PI) +
                   double(g_) / 2.0 * digamma_c((zz + 1.0) / 2.0);
        cplx f = gamma_factor(zz) * (ell - logm) * std::exp(-zz * logm) / w;
        sum += (t == 0 ? 0.5 : 1.0) * f;
    }
    return cplx(sum.real() * h_ / M_PI, 0);
}

namespace {

// node weights gamma(z + c + it_k)/w_k (and the log-derivative variant) for the
// fast inner loops of lambda()/lambda_deriv()
struct KernelNodes {
    double c, h, z;
    std::vector<cplx> base;   // gamma(z+w)/w * trapezoid weight
    std::vector<cplx> ell;    // gamma(z+w) ell(z+w)/w * trapezoid weight
};

}  // namespace

double SelfDualHeckeL::lambda(double s) const {
    auto make_nodes = [&](double z) {
        KernelNodes N;
        N.c = contour_c_;
        N.h = h_;
        N.z = z;
        for (double t = 0; t <= T_; t += h_) {
            cplx w(contour_c_, t);
            N.base.push_back((t == 0 ? 0.5 : 1.0) * gamma_factor(z + w) / w);
        }
        return N;
    };
    KernelNodes Ns = make_nodes(s), Nr = make_nodes(1 - s);
    double total = 0;
    for (size_t m = 1; m < r_.size(); ++m) {
        if (r_[m] == 0) continue;
        double lm = std::log(double(m));
        cplx rot = std::exp(cplx(0, -h_ * lm));  // e^{-i h log m}
        double part = 0;
        for (const KernelNodes* N : {&Ns, &Nr}) {
            cplx phase = std::exp(cplx(-(N->z + N->c) * lm, 0));
            cplx acc(0, 0);
            cplx p(1, 0);
            for (const cplx& b : N->base) {
                acc += b * p;
                p *= rot;
            }
            part += (phase * acc).real();
        }
        total += r_[m] * part * h_ / M_PI;
    }
    return total;
}

double SelfDualHeckeL::lambda_deriv(double s) const {
    auto make_nodes = [&](double z) {
        KernelNodes N;
        N.c = contour_c_;
        N.h = h_;
        N.z = z;
        for (double t = 0; t <= T_; t += h_) {
            cplx w(contour_c_, t);
            cplx zz = z + w;
            cplx g = gamma_factor(zz) / w;
            cplx el = 0.5 * std::log(C_) - double(g_) / 2.0 * std::log(M_PI) +
                      double(g_) / 2.0 * digamma_c((zz + 1.0) / 2.0);
            double wt = (t == 0 ? 0.5 : 1.0);
            N.base.push_back(wt * g);
            N.ell.push_back(wt * g * el);
        }
        return N;
    };
    KernelNodes Ns = make_nodes(s), Nr = make_nodes(1 - s);
    double total = 0;
    for (size_t m = 1; m < r_.size(); ++m) {
        if (r_[m] == 0) continue;
        double lm = std::log(double(m));
        cplx rot = std::exp(cplx(0, -h_ * lm));
        double part = 0;
        int sign = 1;
        for (const KernelNodes* N : {&Ns, &Nr}) {
            cplx phase = std::exp(cplx(-(N->z + N->c) * lm, 0));
            cplx acc_b(0, 0), acc_e(0, 0);
            cplx p(1, 0);
            for (size_t k = 0; k < N->base.size(); ++k) {
                acc_b += N->base[k] * p;
                acc_e += N->ell[k] * p;
                p *= rot;
            }
            part += sign * (phase * (acc_e - lm * acc_b)).real();
            sign = -sign;
        }
        total += r_[m] * part * h_ / M_PI;
    }
    return total;
}

double SelfDualHeckeL::tail_estimate(double s) const {
    double M = double(r_.size());
    double lm = std::log(M);
    double k = std::fabs(kernel(s, lm).real()) + std::fabs(kernel(1 - s, lm).real());
    // coefficients are O(m^eps); allow a generous divisor-bound factor
    return 64.0 * M * k;
}

i64 default_hecke_cutoff(const CMExtension& E) {
    double base = std::sqrt(double(E.abs_disc_E()) / double(E.disc_F()));
    i64 cut = i64(50.0 * base);
    return std::max<i64>(cut, 10000);
}

std::vector<DirichletChar> abelian_factors(const CMExtension& E) {
    i64 D = E.k().D();
    auto chi_k = DirichletChar::quadratic(-D);
    int n = E.n();
    if (n == 1) return {chi_k};
    if (n == 2) {
        i64 DF = E.disc_F();
        auto psi = DirichletChar::quadratic(DF);
        return {chi_k, chi_k.times(psi)};
    }
    if (n == 3) {
        i64 DF = E.disc_F();
        // cyclic cubic: disc = f^2
        i64 f = i64(std::llround(std::sqrt(double(DF))));
        if (f * f != DF)
            throw std::domain_error("abelian_factors: cubic field is not cyclic (disc not a square)");
        auto psis = DirichletChar::cubic(f);
        return {chi_k, chi_k.times(psis[0]), chi_k.times(psis[1])};
    }
    throw std::domain_error("abelian_factors: degree > 3 not supported");
}

cplx completed_lambda_abelian(const CMExtension& E, double s) {
    cplx prod(1, 0);
    for (auto& chi : abelian_factors(E)) prod *= completed_dirichlet_lambda(chi, s);
    // product of completed factors = sqrt(C) * Lambda(s, chi_E)
    double C = double(E.conductor_factor());
    return prod / std::sqrt(C);
}

Rational lambda0_exact_biquadratic(const CMExtension& E) {
    if (E.n() != 2) throw std::domain_error("lambda0_exact_biquadratic: [F:Q] = 2 required");
    i64 D = E.k().D();
    i64 DF = E.disc_F();
    i64 D2 = D * DF;
    if (!is_squarefree(D2))
        throw std::domain_error("lambda0_exact_biquadratic: product discriminant not fundamental");
    ImagQuadField k1(D);
    ImagQuadField k2(D2);
    Rational a(2 * k1.class_number(), k1.unit_count());
    Rational b(2 * k2.class_number(), k2.unit_count());
    return a * b;
}

HeckeLResult hecke_L_chiE_deriv0(const CMExtension& E, HeckeMode mode, i64 cutoff_override) {
    HeckeLResult ab, is;
    bool have_ab = false, have_is = false;

    if (mode == HeckeMode::abelian_factor || mode == HeckeMode::both) {
        auto chars = abelian_factors(E);
        cplx L0(1, 0);
        for (auto& chi : chars) L0 *= dirichlet_L0(chi);
        cplx logd(0, 0);
        for (auto& chi : chars) logd += dirichlet_Lderiv0(chi) / dirichlet_L0(chi);
        cplx Lp = L0 * logd;
        if (std::abs(L0.imag()) > 1e-9 || std::abs(Lp.imag()) > 1e-9)
            throw std::logic_error("hecke_L: nonreal value from conjugate-closed factors");
        ab.L0 = L0.real();
        ab.Lprime0 = Lp.real();
        ab.method = "abelian_factor";
        ab.est_error = 1e-12;
        have_ab = true;
    }
    if (mode == HeckeMode::ideal_series || mode == HeckeMode::both) {
        i64 cut = cutoff_override > 0 ? cutoff_override : default_hecke_cutoff(E);
        auto counts = E.F().ideal_counts(cut);
        std::vector<double> r(counts.size(), 0.0);
        for (size_t m = 1; m < counts.size(); ++m)
            r[m] = double(E.chi_E_of_norm(i64(m))) * double(counts[m]);
        SelfDualHeckeL engine(E.n(), double(E.conductor_factor()), std::move(r));
        double lam0 = engine.lambda(0);
        double lamp0 = engine.lambda_deriv(0);
        // L(0) = Lambda(0) since gamma(0) = 1; L'(0) = Lambda'(0) - ell(0) Lambda(0)
        is.L0 = lam0;
        is.Lprime0 = lamp0 - engine.gamma_logderiv(0) * lam0;
        is.method = "ideal_series";
        is.cutoff = cut;
        is.est_error = engine.tail_estimate(0);
        have_is = true;
    }
    if (have_ab && have_is) {
        if (std::fabs(ab.L0 - is.L0) > 1e-6 || std::fabs(ab.Lprime0 - is.Lprime0) > 1e-6)
            throw std::runtime_error("hecke_L: abelian and ideal-series modes disagree beyond 1e-6");
        ab.method = "both";
        ab.cutoff = is.cutoff;
        ab.est_error = std::max(ab.est_error, std::fabs(ab.L0 - is.L0));
        return ab;
    }
    return have_ab ? ab : is;
}

CompletedLView completed_L_at_zero(const CMExtension& E, const HeckeLResult& lr) {
    CompletedLView v;
    v.lambda0 = lr.L0;  // gamma(0) = 1
    int n = E.n();
    double C = double(E.conductor_factor());
    double ell0 = 0.5 * std::log(C) - double(n) / 2.0 * std::log(4 * M_PI * std::exp(kEulerGamma));
    v.lambda_prime0 = lr.Lprime0 + ell0 * lr.L0;
    v.logderiv = v.lambda_prime0 / v.lambda0;
    double displayed = lr.Lprime0 / lr.L0 + 0.5 * std::log(C) -
                       double(n) / 2.0 * std::log(4 * M_PI * std::exp(kEulerGamma));
    v.relation_residual = std::fabs(v.logderiv - displayed);
    return v;
}

}  // namespace cmarith
