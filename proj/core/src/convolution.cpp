#include "cmarith/convolution.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <stdexcept>

namespace cmarith {

std::vector<i64> embed_cosets(const HermLattice& L, const HermLattice& Lambda) {
    const DiscModule& AL = L.disc();
    const DiscModule& A = Lambda.disc();
    int m = Lambda.rank();
    if (L.rank() != m + 1) throw std::domain_error("embed_cosets: rank mismatch");
    std::vector<i64> out(size_t(A.order()));
    for (i64 mu = 0; mu < A.order(); ++mu) {
        auto y = A.pairing_vector(mu);
        std::vector<i64> yl(size_t(2 * (m + 1)), 0);
        for (int j = 0; j < m; ++j) {
            yl[size_t(1 + j)] = y[size_t(j)];
            yl[size_t(m + 2 + j)] = y[size_t(m + j)];
        }
        out[size_t(mu)] = AL.coset_of_pairing_vector(yl);
    }
    return out;
}

std::pair<cplx, double> ConvolutionSeries::evaluate(double s) const {
    int n = weight;
    if (s / 2 + n - 1 <= 1)
        throw std::domain_error("ConvolutionSeries: s outside the convergence region");
    cplx sum(0, 0);
    double expo = s / 2 + double(n) - 1;
    for (auto& [m, b] : terms) {
        double md = m.to_double();
        sum += b / std::pow(4 * M_PI * md, expo);
    }
    double gam = std::tgamma(expo);
    // tail: |b(m)| <= C m^(n-1) gives sum_{m > M} C m^{n-1} (4 pi m)^{-expo}
    double M = terms.empty() ? 1.0 : terms.back().first.to_double();
    double tail = 0;
    if (expo - double(n - 1) > 1) {
        double a = expo - double(n - 1);
        tail = gam * tail_constant * std::pow(4 * M_PI, -expo) * std::pow(M, 1 - a) / (a - 1);
    }
    return {gam * sum, tail};
}

ConvolutionSeries conv_coeffs(const InducedForm& gt, const HermLattice& Lambda, i64 prec) {
    if (prec <= 0) throw std::domain_error("conv_coeffs: prec must be positive");
    ConvolutionSeries S;
    S.weight = gt.weight();
    auto T = Lambda.theta_coeffs(prec);
    auto emb = embed_cosets(gt.lattice(), Lambda);
    const DiscModule& A = Lambda.disc();
    // bucket the theta table by m
    std::map<i64, std::vector<std::pair<i64, i64>>> per_m;  // m*level -> [(coset, count)]
    for (auto& [key, cnt] : T.nonzero()) per_m[key.first].push_back({key.second, cnt});
    for (auto& [ml, row] : per_m) {
        if (ml == 0) continue;
        Rational m(ml, T.level);
        cplx b(0, 0);
        for (auto& [coset, cnt] : row)
            b += std::conj(gt.coeff(m, emb[size_t(coset)])) * double(cnt);
        S.terms.emplace_back(m, b);
        (void)A;
    }
    std::sort(S.terms.begin(), S.terms.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [m, b] : S.terms)
        S.tail_constant = std::max(S.tail_constant,
                                   std::abs(b) / std::pow(m.to_double(), S.weight - 1));
    return S;
}

ConvolutionSeries conv_coeffs_scalar(const NewformData& g, const std::vector<cplx>& theta_sc,
                                     i64 prec) {
    if (prec <= 0) throw std::domain_error("conv_coeffs_scalar: prec must be positive");
    if (prec > g.prec() || prec >= i64(theta_sc.size()))
        throw std::out_of_range("conv_coeffs_scalar: precision exceeded");
    ConvolutionSeries S;
    S.weight = g.weight;
    for (i64 m = 1; m <= prec; ++m) {
        cplx b = std::conj(g.coeff(m)) * theta_sc[size_t(m)];
        S.terms.emplace_back(Rational(m), b);
    }
    for (auto& [m, b] : S.terms)
        S.tail_constant = std::max(S.tail_constant,
                                   std::abs(b) / std::pow(m.to_double(), S.weight - 1));
    return S;
}

std::pair<i64, i64> coset_twist_identity(const HermLattice& Lambda, const Rational& m, i64 Q) {
    i64 D = Lambda.field().D();
    if (Q <= 0 || D % Q != 0) throw std::domain_error("coset_twist_identity: Q must divide D");
    const DiscModule& A = Lambda.disc();
    auto T = Lambda.theta_coeffs(m.floor() + 1);
    i64 lhs = 0;
    for (i64 mu = 0; mu < A.order(); ++mu) {
        if (Q % q_mu(A, mu, D)) continue;
        lhs += T.rep(m, mu);
    }
    auto Tw = Lambda.ramified_twist(Q);
    Rational mQ = m * Rational(Q);
    i64 rhs = Tw.rep_number(mQ, 0);
    return {lhs, rhs};
}

IdentityReport scalar_vector_identity(const NewformData& g, const HermLattice& Lambda, i64 prec,
                                      int flip_gamma_at) {
    i64 D = g.level;
    int n = g.weight;
    if (Lambda.field().D() != D) throw std::domain_error("scalar_vector_identity: field mismatch");

    auto L = HermLattice::rank1(Lambda.field(), -1).direct_sum(Lambda);
    InducedForm gt(g, L);
    auto emb = embed_cosets(L, Lambda);

    const DiscModule& A = Lambda.disc();
    auto T = Lambda.theta_coeffs(prec);

    // right side ingredients per divisor
    std::vector<i64> divisors;
    std::vector<ALData> al;
    std::vector<cplx> gam;
    Rational det = L.det_hermitian();
    for (i64 Q = 1; Q <= D; ++Q) {
        if (D % Q) continue;
        divisors.push_back(Q);
        al.push_back(atkin_lehner(g, Q));
        cplx gq = to_cplx(gamma_Q(Q, n, det, D));
        if (flip_gamma_at > 0 && Q % flip_gamma_at == 0) gq = -gq;
        gam.push_back(gq);
    }
    std::vector<std::vector<i64>> twisted_sc;
    for (i64 Q : divisors) {
        auto Tw = Lambda.ramified_twist(Q);
        auto tab = Tw.theta_coeffs(prec * Q);
        std::vector<i64> sc(size_t(prec * Q + 1), 0);
        for (i64 mm = 0; mm <= prec * Q; ++mm) sc[size_t(mm)] = tab.rep(Rational(mm), 0);
        twisted_sc.push_back(std::move(sc));
    }

    // gather all m with either side potentially nonzero: multiples of 1/level
    IdentityReport R;
    i64 level = T.level;
    for (i64 ml = 1; ml <= prec * level; ++ml) {
        Rational m(ml, level);
        cplx lhs(0, 0);
        for (i64 mu = 0; mu < A.order(); ++mu) {
            i64 cnt = T.rep(m, mu);
            if (cnt == 0) continue;
            lhs += std::conj(gt.coeff(m, emb[size_t(mu)])) * double(cnt);
        }
        cplx rhs(0, 0);
        for (size_t i = 0; i < divisors.size(); ++i) {
            i64 Q = divisors[i];
            Rational idx = m * Rational(Q);
            if (!idx.is_integer()) continue;
            i64 mQ = idx.num();
            if (mQ < 1) continue;
            double qpow = std::pow(double(Q), 1.0 - double(n));
            rhs += qpow * gam[i] * std::conj(al[i].coeff(mQ)) * double(twisted_sc[i][size_t(mQ)]);
        }
        double resid = std::abs(lhs - rhs);
        R.residuals.emplace_back(m, resid);
        R.max_residual = std::max(R.max_residual, resid);
    }
    return R;
}

cplx EulerFactorProduct::value(double s) const {
    cplx v(1, 0);
    for (auto& [p, c] : factors) v *= (cplx(1, 0) + c * std::pow(double(p), s / 2));
    return v;
}

std::pair<cplx, int> EulerFactorProduct::derivative_at_zero() const {
    int vanishing = 0;
    for (auto& [p, c] : factors)
        if (std::abs(cplx(1, 0) + c) < 1e-12) ++vanishing;
    if (vanishing >= 2) return {cplx(0, 0), vanishing};
    if (vanishing == 1) {
        // derivative concentrates on the vanishing factor
        cplx d(0, 0);
        cplx rest(1, 0);
        for (auto& [p, c] : factors) {
            if (std::abs(cplx(1, 0) + c) < 1e-12)
                d = c * std::log(double(p)) / 2.0;
            else
                rest *= (cplx(1, 0) + c);
        }
        return {d * rest, 1};
    }
    // no vanishing factor: logarithmic derivative
    cplx v = value(0);
    cplx logd(0, 0);
    for (auto& [p, c] : factors) logd += c * (std::log(double(p)) / 2.0) / (cplx(1, 0) + c);
    return {v * logd, 0};
}

EtaTheta eta_twisted_theta(const HermLattice& Lambda, i64 character_index, i64 prec) {
    const ImagQuadField& k = Lambda.field();
    i64 h = k.class_number();
    // cyclic generator: an element of maximal order under composition
    const auto& forms = k.reduced_forms();
    int gen = -1;
    for (size_t i = 0; i < forms.size(); ++i) {
        auto f = forms[i];
        auto acc = f;
        i64 ord = 1;
        while (!(acc == k.principal_form())) {
            acc = k.compose(acc, f);
            ++ord;
        }
        if (ord == h) {
            gen = int(i);
            break;
        }
    }
    if (gen < 0) throw std::domain_error("eta_twisted_theta: class group not cyclic");
    // class list in generator order
    std::vector<ReducedForm> classes;
    auto cur = k.principal_form();
    for (i64 j = 0; j < h; ++j) {
        classes.push_back(cur);
        cur = k.compose(cur, forms[size_t(gen)]);
    }
    EtaTheta out;
    out.coeff.assign(size_t(prec + 1), cplx(0, 0));
    out.cuspidal_flag = (character_index % h) != 0;
    for (i64 j = 0; j < h; ++j) {
        double ang = 2 * M_PI * double(character_index) * double(j) / double(h);
        cplx eta(std::cos(ang), std::sin(ang));
        auto Lh = Lambda.ideal_twist(k.ideal_of_form(classes[size_t(j)]));
        double w = 1.0 / double(Lh.aut_count());
        auto sc = Lh.scalar_theta(prec);
        for (i64 m = 0; m <= prec; ++m) out.coeff[size_t(m)] += eta * w * double(sc[size_t(m)]);
    }
    return out;
}

std::vector<i64> aut_counts_over_classes(const HermLattice& Lambda) {
    const ImagQuadField& k = Lambda.field();
    std::vector<i64> out;
    for (auto& f : k.reduced_forms()) out.push_back(Lambda.ideal_twist(k.ideal_of_form(f)).aut_count());
    return out;
}

}  // namespace cmarith
