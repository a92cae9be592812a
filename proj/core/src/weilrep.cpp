#include "cmarith/weilrep.hpp"

#include <cmath>
#include <stdexcept>

namespace cmarith {

namespace {

cplx e_of(const Rational& x) {
    double a = 2 * M_PI * x.to_double();
    return {std::cos(a), std::sin(a)};
}

cplx e8(int k) {  // e(k/8)
    double a = 2 * M_PI * double(((k % 8) + 8) % 8) / 8.0;
    return {std::cos(a), std::sin(a)};
}

}  // namespace

CMat cmat_mul(const CMat& A, const CMat& B) {
    size_t n = A.size(), k = B.size(), m = B[0].size();
    CMat C(n, std::vector<cplx>(m, cplx(0, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            cplx a = A[i][l];
            if (a == cplx(0, 0)) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += a * B[l][j];
        }
    return C;
}

WeilRep generator_matrices(const DiscModule& A, std::pair<int, int> z_signature, bool conjugated) {
    WeilRep W;
    W.order = A.order();
    W.sig_pos = z_signature.first;
    W.sig_neg = z_signature.second;
    W.conjugated = conjugated;
    size_t N = size_t(W.order);

    W.rhoT.resize(N);
    for (i64 mu = 0; mu < W.order; ++mu) W.rhoT[size_t(mu)] = e_of(A.q_value(mu));

    cplx sigma = e8(W.sig_neg - W.sig_pos);
    double scale = 1.0 / std::sqrt(double(W.order));
    W.rhoS.assign(N, std::vector<cplx>(N));
    for (i64 mu = 0; mu < W.order; ++mu)
        for (i64 nu = 0; nu < W.order; ++nu)
            W.rhoS[size_t(mu)][size_t(nu)] = sigma * scale * e_of(-A.pairing(mu, nu));

    if (conjugated) {
        for (auto& v : W.rhoT) v = std::conj(v);
        for (auto& row : W.rhoS)
            for (auto& v : row) v = std::conj(v);
    }
    return W;
}

WeilRep generator_matrices(const HermLattice& L, bool conjugated) {
    auto [p, q] = L.signature();
    return generator_matrices(L.disc(), {2 * p, 2 * q}, conjugated);
}

double WeilRelationResiduals::max() const {
    return std::max(std::max(s4_identity, braid), std::max(unitarity, s2_negation_phase));
}

WeilRelationResiduals weil_relation_residuals(const WeilRep& W, const DiscModule& A) {
    size_t N = size_t(W.order);
    auto frob = [&](const CMat& M) {
        double s = 0;
        for (auto& row : M)
            for (auto& v : row) s += std::norm(v);
        return std::sqrt(s);
    };
    auto sub_identity = [&](CMat M) {
        for (size_t i = 0; i < N; ++i) M[i][i] -= 1.0;
        return M;
    };

    CMat S2 = cmat_mul(W.rhoS, W.rhoS);
    CMat S4 = cmat_mul(S2, S2);

    // rho(S) rho(T): column scaling of rho(S) by rhoT
    CMat ST = W.rhoS;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) ST[i][j] *= W.rhoT[j];
    CMat ST3 = cmat_mul(cmat_mul(ST, ST), ST);

    CMat diff = ST3;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) diff[i][j] -= S2[i][j];

    // unitarity: S* S = 1
    CMat Sh(N, std::vector<cplx>(N));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) Sh[i][j] = std::conj(W.rhoS[j][i]);
    CMat StS = cmat_mul(Sh, W.rhoS);

    // rho(S)^2 = e((b- - b+)/4) * permutation mu -> -mu  (conjugated: inverse phase)
    int k = ((W.sig_neg - W.sig_pos) % 8 + 8) % 8;
    cplx phase(std::cos(2 * M_PI * k / 8.0), std::sin(2 * M_PI * k / 8.0));
    phase *= phase;  // e(k/4)
    if (W.conjugated) phase = std::conj(phase);
    CMat S2expect(N, std::vector<cplx>(N, cplx(0, 0)));
    for (i64 mu = 0; mu < W.order; ++mu) S2expect[size_t(A.neg(mu))][size_t(mu)] = phase;
    CMat d2 = S2;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) d2[i][j] -= S2expect[i][j];

    WeilRelationResiduals R;
    R.s4_identity = frob(sub_identity(S4));
    R.braid = frob(diff);
    R.unitarity = frob(sub_identity(StS));
    R.s2_negation_phase = frob(d2);
    return R;
}

Root4 delta_p(i64 p) {
    if (p <= 2 || p % 2 == 0) throw std::domain_error("delta_p: p must be an odd prime");
    return (p % 4 == 1) ? Root4{1, 0} : Root4{0, 1};
}

Root4 gamma_p(i64 p, int n, const Rational& det_herm, i64 D) {
    if (p <= 2 || D % p != 0) throw std::domain_error("gamma_p: p must be an odd divisor of D");
    Root4 delta = delta_p(p);
    Root4 r{1, 0};
    int e = ((-n) % 4 + 4) % 4;
    for (int i = 0; i < e; ++i) r = r * delta;
    // (D,p)_p^n
    if (n % 2 == 1) {
        int h = hilbert_symbol(Rational(D), Rational(p), Place::prime(p));
        if (h == -1) r = r * Root4{-1, 0};
    }
    // inv_p(V) = ( (-1)^{n(n-1)/2} det, -D )_p
    Rational s = det_herm;
    if ((i64(n) * (n - 1) / 2) % 2 == 1) s = -s;
    int inv = hilbert_symbol(s, Rational(-D), Place::prime(p));
    if (inv == -1) r = r * Root4{-1, 0};
    return r;
}

Root4 gamma_Q(i64 Q, int n, const Rational& det_herm, i64 D) {
    if (Q <= 0 || D % Q != 0) throw std::domain_error("gamma_Q: Q must divide D");
    Root4 r{1, 0};
    for (auto& [q, e] : factorize(Q)) {
        (void)e;
        r = r * gamma_p(q, n, det_herm, D);
    }
    return r;
}

i64 q_mu(const DiscModule& A, i64 mu, i64 D) {
    if (D % A.element_order(mu) != 0)
        throw std::domain_error("q_mu: element order does not divide D");
    i64 Q = 1;
    for (auto& [p, e] : factorize(D)) {
        (void)e;
        if (A.smul(D / p, mu) != 0) Q *= p;
    }
    return Q;
}

}  // namespace cmarith
