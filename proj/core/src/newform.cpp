#include "cmarith/newform.hpp"

#include <cmath>
#include <stdexcept>

namespace cmarith {

cplx NewformData::coeff(i64 m) const {
    if (m < 1 || m > prec()) throw std::out_of_range("NewformData: coefficient index out of range");
    return c[size_t(m)];
}

NewformData cm_newform(const ImagQuadField& k, int weight, i64 prec) {
    if (k.class_number() != 1)
        throw std::domain_error("cm_newform: class number one required");
    if (weight < 3 || weight % 2 == 0) throw std::domain_error("cm_newform: odd weight >= 3 required");
    if ((weight - 1) % k.unit_count() != 0)
        throw std::domain_error("cm_newform: w_k must divide weight-1");

    NewformData g;
    g.weight = weight;
    g.level = k.D();
    g.exact = true;
    g.c_int.assign(size_t(prec + 1), 0);

    // sum alpha^(n-1) over all alpha with N(alpha) = m, then divide by w_k
    std::vector<QuadInt> acc(size_t(prec + 1), QuadInt{0, 0});
    i64 D = k.D();
    i64 bmax = i64(std::sqrt(4.0 * double(prec) / double(D))) + 1;
    for (i64 b = -bmax; b <= bmax; ++b) {
        for (i64 a = -i64(std::sqrt(double(prec)) + std::abs(b) + 2);
             a <= i64(std::sqrt(double(prec)) + std::abs(b) + 2); ++a) {
            QuadInt alpha{a, b};
            if (alpha.is_zero()) continue;
            i64 N = k.norm(alpha);
            if (N > prec) continue;
            QuadInt p = k.pow(alpha, weight - 1);
            acc[size_t(N)] = acc[size_t(N)] + p;
        }
    }
    for (i64 m = 1; m <= prec; ++m) {
        QuadInt s = acc[size_t(m)];
        // the pi-part must cancel (ideals come in conjugate pairs) and the
        // unit orbit contributes a factor w_k
        i64 t = k.pi_trace();
        // value = s.a + s.b * pi must be real: 2*value = 2 s.a + s.b * t (+ s.b sqrt(-D))
        if (s.b != 0) {
            // real part only after pairing with conjugates: s must satisfy b = 0
            throw std::logic_error("cm_newform: nonreal coefficient sum");
        }
        (void)t;
        if (s.a % k.unit_count() != 0) throw std::logic_error("cm_newform: unit orbit mismatch");
        g.c_int[size_t(m)] = s.a / k.unit_count();
    }
    if (g.c_int[1] != 1) throw std::logic_error("cm_newform: c(1) != 1");
    g.c.assign(size_t(prec + 1), cplx(0, 0));
    for (i64 m = 1; m <= prec; ++m) g.c[size_t(m)] = cplx(double(g.c_int[size_t(m)]), 0);
    return g;
}

int chi_factor(i64 m, i64 Q) { return kronecker(m, Q); }

cplx atkin_lehner_lambda(const NewformData& g, i64 q) {
    if (g.level % q != 0 || !is_prime(q)) throw std::domain_error("lambda_q: q must be a prime divisor of D");
    cplx cq = g.coeff(q);
    if (std::abs(cq) < 1e-12)
        throw std::domain_error("lambda_q: c(q) = 0, cannot normalize");
    int n = g.weight;
    if (n % 2 == 0) {
        double f = -std::pow(double(q), 1.0 - double(n) / 2.0);
        return std::conj(cq) * f;
    }
    cplx delta = (q % 4 == 1) ? cplx(1, 0) : cplx(0, 1);
    double f = std::pow(double(q), (1.0 - double(n)) / 2.0);
    return std::conj(cq) * delta * f;
}

cplx ALData::coeff(i64 m) const {
    if (m < 1 || m >= i64(cQ.size())) throw std::out_of_range("ALData: index out of range");
    return cQ[size_t(m)];
}

ALData atkin_lehner(const NewformData& g, i64 Q) {
    i64 D = g.level;
    if (Q <= 0 || D % Q != 0) throw std::domain_error("atkin_lehner: Q must divide D");
    int n = g.weight;
    ALData al;
    al.Q = Q;
    al.eps = cplx(1, 0);
    for (auto& [q, e] : factorize(Q)) {
        (void)e;
        al.eps *= double(chi_factor(Q / q, Q)) * atkin_lehner_lambda(g, q);
    }
    // assemble c_Q from the three relations: for m = mQ * m' with mQ the
    // Q-part, c_Q(m) = eps_Q chi_Q^n(m') chi_{D/Q}^n(mQ) c(m') conj(c(mQ)).
    i64 prec = g.prec();
    al.cQ.assign(size_t(prec + 1), cplx(0, 0));
    for (i64 m = 1; m <= prec; ++m) {
        i64 mQ = 1, rest = m;
        for (auto& [q, e] : factorize(Q)) {
            (void)e;
            while (rest % q == 0) {
                rest /= q;
                mQ *= q;
            }
        }
        cplx v = al.eps * g.coeff(rest) * std::conj(g.coeff(mQ));
        int ch = chi_factor(rest, Q) * chi_factor(mQ, D / Q);
        if (n % 2 == 0) ch = (ch == 0) ? 0 : 1;
        al.cQ[size_t(m)] = v * double(ch);
    }
    return al;
}

InducedForm::InducedForm(const NewformData& g, const HermLattice& L) : L_(&L) {
    D_ = g.level;
    n_ = g.weight;
    if (L.field().D() != D_) throw std::domain_error("induce: level must match disc(k)");
    if (L.rank() != n_) throw std::domain_error("induce: rank(L) must equal the weight");
    auto sig = L.signature();
    if (sig != std::pair<int, int>{n_ - 1, 1})
        throw std::domain_error("induce: L must have signature (n-1, 1)");
    if (!L.is_selfdual()) throw std::domain_error("induce: L must be self-dual");

    Rational det = L.det_hermitian();
    for (i64 Q = 1; Q <= D_; ++Q) {
        if (D_ % Q) continue;
        divisors_.push_back(Q);
        al_.push_back(atkin_lehner(g, Q));
        gamma_conj_.push_back(std::conj(to_cplx(gamma_Q(Q, n_, det, D_))));
    }
    const DiscModule& A = L.disc();
    qmu_.resize(size_t(A.order()));
    for (i64 mu = 0; mu < A.order(); ++mu) qmu_[size_t(mu)] = q_mu(A, mu, D_);
}

Rational InducedForm::max_index() const {
    // c_Q(mQ) needs mQ <= prec
    i64 p = al_.front().cQ.empty() ? 0 : i64(al_.front().cQ.size()) - 1;
    return Rational(p, D_);
}

cplx InducedForm::coeff(const Rational& m, i64 coset) const {
    const DiscModule& A = disc();
    if (m.sign() <= 0) return {0, 0};
    // support: m = Q_L(mu) mod 1
    if (!(m - A.q_value(coset)).mod1().is_zero()) return {0, 0};
    cplx out(0, 0);
    i64 Qmu = qmu_[size_t(coset)];
    for (size_t i = 0; i < divisors_.size(); ++i) {
        i64 Q = divisors_[i];
        if (Q % Qmu) continue;
        Rational idx = m * Rational(Q);
        if (!idx.is_integer()) continue;  // c_Q supported on integers
        i64 mQ = idx.num();
        if (mQ < 1 || mQ > i64(al_[i].cQ.size()) - 1)
            throw std::out_of_range("InducedForm: precision exceeded");
        double qpow = std::pow(double(Q), 1.0 - double(n_));
        out += qpow * gamma_conj_[i] * al_[i].coeff(mQ);
    }
    return out;
}

InducedForm induce(const NewformData& g, const HermLattice& L) { return InducedForm(g, L); }

}  // namespace cmarith
