#include "cmarith/cmcycles.hpp"

#include "cmarith/discmodule.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <cmath>
#include <stdexcept>

namespace cmarith {

namespace {

// x^{-1} in Q[theta]/(f) by solving the multiplication system.
FElemQ field_inverse(const TotallyRealField& F, const FElem& y) {
    int n = F.degree();
    // columns: y * theta^j; solve M x = e_0 over Q
    std::vector<std::vector<Rational>> M(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    FElem col = y;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) M[size_t(i)][size_t(j)] = Rational(col[size_t(i)]);
        if (j + 1 < n) col = F.mul(col, F.theta());
    }
    auto Minv = rational_matrix_inverse(M);
    // x = Minv e_0: first column
    std::vector<Rational> x(size_t(n), Rational(0));
    i64 den = 1;
    for (int i = 0; i < n; ++i) {
        x[size_t(i)] = Minv[size_t(i)][0];
        den = std::lcm(den, x[size_t(i)].den());
    }
    FElemQ out;
    out.den = den;
    out.num.assign(size_t(n), 0);
    for (int i = 0; i < n; ++i)
        out.num[size_t(i)] = (x[size_t(i)] * Rational(den)).num();
    return out;
}

FElemQ mul_q(const TotallyRealField& F, const FElemQ& a, const FElemQ& b) {
    FElemQ out;
    out.num = F.mul(a.num, b.num);
    out.den = checked_cast(i128(a.den) * b.den, "mul_q");
    return out;
}

int count_negative_embeddings(const TotallyRealField& F, const FElemQ& x) {
    int neg = 0;
    for (double v : F.embeddings(x))
        if (v < 0) ++neg;
    return neg;
}

}  // namespace

EisensteinContext::EisensteinContext(CMExtension ext) : E(std::move(ext)) {
    const auto& F = E.F();
    r = E.ramified_places();
    FElemQ cand = field_inverse(F, F.different_gen());
    for (int sign : {1, -1}) {
        FElemQ b = cand;
        if (sign < 0)
            for (auto& v : b.num) v = -v;
        if (count_negative_embeddings(F, b) == 1) {
            beta = b;
            auto emb = F.embeddings(b);
            for (size_t i = 0; i < emb.size(); ++i)
                if (emb[i] < 0) special_embedding = int(i);
            return;
        }
    }
    throw std::domain_error(
        "EisensteinContext: no sign of 1/f'(theta) has exactly one negative embedding");
}

FElemQ EisensteinContext::beta_times_norm(i64 a, i64 b) const {
    // N_{E/F}(a + b sqrt(-D)) = a^2 + D b^2 for rational a, b
    i64 nm = checked_cast(i128(a) * a + i128(E.k().D()) * b * b, "beta_times_norm");
    FElemQ out = beta;
    for (auto& v : out.num) v = checked_cast(i128(v) * nm, "beta_times_norm");
    return out;
}

std::vector<PrimeIdealF> diff_set_with_beta(const EisensteinContext& ctx, const FElemQ& alpha,
                                            const FElemQ& beta) {
    const auto& F = ctx.E.F();
    if (!F.is_totally_positive(alpha))
        throw std::domain_error("diff_set: alpha must be totally positive");
    FElemQ ab = mul_q(F, alpha, beta);
    auto fac = F.factor_principal(ab);
    std::set<std::pair<i64, PolyZ>> seen;
    std::vector<PrimeIdealF> candidates;
    for (auto& [P, e] : fac.factors) {
        (void)e;
        if (seen.insert({P.ell, P.gpoly}).second) candidates.push_back(P);
    }
    for (auto& [ell, e] : factorize(ctx.E.k().D())) {
        (void)e;
        for (auto& P : F.primes_above(ell))
            if (seen.insert({P.ell, P.gpoly}).second) candidates.push_back(P);
    }
    std::vector<PrimeIdealF> out;
    for (auto& P : candidates) {
        if (ctx.E.splitting(P) == Splitting::split) continue;
        if (ctx.E.local_symbol(ab, P) == -1) out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PrimeIdealF> diff_set(const EisensteinContext& ctx, const FElemQ& alpha) {
    return diff_set_with_beta(ctx, alpha, ctx.beta);
}

i64 rho_count(const CMExtension& E, const FactoredIdealF& b) {
    if (!b.is_integral()) return 0;
    i64 rho = 1;
    for (auto& [P, e] : b.factors) {
        if (e == 0) continue;
        switch (E.splitting(P)) {
            case Splitting::split:
                rho *= (e + 1);
                break;
            case Splitting::inert:
                if (e % 2) return 0;
                break;
            case Splitting::ramified:
                break;
        }
    }
    return rho;
}

i64 rho_count_bruteforce(const CMExtension& E, const FactoredIdealF& b) {
    if (!b.is_integral()) return 0;
    // divisors of b O_E as exponent tuples on the primes of E above each P,
    // with the conjugation action: split (Q, Qbar) swapped, inert/ramified fixed.
    struct Block {
        Splitting sp;
        int a;  // exponent of P in b
    };
    std::vector<Block> blocks;
    for (auto& [P, e] : b.factors) {
        if (e == 0) continue;
        blocks.push_back({E.splitting(P), e});
    }
    i64 total = 0;
    // enumerate exponents per block: split has two primes (b1, b2) bounded by a;
    // inert/ramified have one prime with exponent bounded by the exponent of
    // b O_E at it (a resp. 2a).
    std::function<void(size_t, bool)> rec = [&](size_t i, bool ok) {
        if (!ok) return;
        if (i == blocks.size()) {
            ++total;
            return;
        }
        const Block& B = blocks[i];
        if (B.sp == Splitting::split) {
            for (int b1 = 0; b1 <= B.a; ++b1)
                for (int b2 = 0; b2 <= B.a; ++b2) {
                    // B conj(B): exponent at Q is b1 + b2 (conjugation swaps)
                    rec(i + 1, b1 + b2 == B.a);
                }
        } else if (B.sp == Splitting::inert) {
            for (int b1 = 0; b1 <= B.a; ++b1) rec(i + 1, 2 * b1 == B.a);
        } else {
            for (int b1 = 0; b1 <= 2 * B.a; ++b1) rec(i + 1, 2 * b1 == 2 * B.a);
        }
    };
    rec(0, true);
    return total;
}

double a_F_alpha(const EisensteinContext& ctx, const FElemQ& alpha) {
    auto diff = diff_set(ctx, alpha);
    if (diff.size() != 1) return 0.0;
    const PrimeIdealF& p = diff.front();
    const auto& F = ctx.E.F();
    int eps = (ctx.E.splitting(p) == Splitting::inert) ? 1 : 0;

    // b = alpha d_F p^{-eps}
    auto fac_alpha = F.factor_principal(alpha);
    auto fac_diff = F.factor_principal({F.different_gen(), 1});
    std::map<PrimeIdealF, int> expo;
    for (auto& [P, e] : fac_alpha.factors) expo[P] += e;
    for (auto& [P, e] : fac_diff.factors) expo[P] += e;
    expo[p] -= eps;
    FactoredIdealF b;
    for (auto& [P, e] : expo)
        if (e != 0) b.factors.emplace_back(P, e);

    i64 rho = rho_count(ctx.E, b);
    if (rho == 0) return 0.0;

    i64 ordp = F.valuation(alpha, p) + 1 + F.valuation({F.different_gen(), 1}, p);
    double sign = -std::pow(2.0, double(ctx.r - 1));
    return sign * double(rho) * double(ordp) * std::log(double(p.norm()));
}

double a_F_zero(const EisensteinContext& ctx, const HeckeLResult& lr) {
    auto v = completed_L_at_zero(ctx.E, lr);
    return -2.0 * v.lambda_prime0;
}

std::vector<FElemQ> trace_candidates(const EisensteinContext& ctx, i64 m) {
    const auto& F = ctx.E.F();
    int n = F.degree();
    std::vector<FElemQ> out;
    if (m <= 0) return out;
    FElem fp = F.different_gen();
    auto fpemb = F.embeddings(fp);

    // alpha = y / f'(theta), y in Z[theta]; totally positive, Tr = m means
    // each embedding of y lies in (0, m |f'(theta)_i|) up to sign
    // coordinate box: y_j = sum_i Vinv[j][i] * val_i with |val_i| <= m |fp_i|
    const auto& roots = F.roots();
    std::vector<std::vector<Rational>> V(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    // Work with doubles for the box only; membership below is exact.
    std::vector<std::vector<double>> Vd(size_t(n), std::vector<double>(size_t(n), 0.0));
    for (int i = 0; i < n; ++i) {
        double pw = 1;
        for (int j = 0; j < n; ++j) {
            Vd[size_t(i)][size_t(j)] = pw;
            pw *= roots[size_t(i)];
        }
    }
    (void)V;
    // invert Vd numerically (Gauss)
    std::vector<std::vector<double>> A(size_t(n), std::vector<double>(size_t(2 * n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[size_t(i)][size_t(j)] = Vd[size_t(i)][size_t(j)];
        A[size_t(i)][size_t(n + i)] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r2 = c + 1; r2 < n; ++r2)
            if (std::fabs(A[size_t(r2)][size_t(c)]) > std::fabs(A[size_t(piv)][size_t(c)])) piv = r2;
        std::swap(A[size_t(c)], A[size_t(piv)]);
        double d = A[size_t(c)][size_t(c)];
        for (int j = 0; j < 2 * n; ++j) A[size_t(c)][size_t(j)] /= d;
        for (int r2 = 0; r2 < n; ++r2) {
            if (r2 == c) continue;
            double f = A[size_t(r2)][size_t(c)];
            for (int j = 0; j < 2 * n; ++j) A[size_t(r2)][size_t(j)] -= f * A[size_t(c)][size_t(j)];
        }
    }
    std::vector<i64> box(size_t(n), 0);
    for (int j = 0; j < n; ++j) {
        double bnd = 0;
        for (int i = 0; i < n; ++i)
            bnd += std::fabs(A[size_t(j)][size_t(n + i)]) * double(m) * std::fabs(fpemb[size_t(i)]);
        box[size_t(j)] = i64(std::floor(bnd + 1e-6)) + 1;
    }

    FElemQ invfp = field_inverse(F, fp);
    std::vector<i64> y(size_t(n), 0);
    for (int i = 0; i < n; ++i) y[size_t(i)] = -box[size_t(i)];
    while (true) {
        bool zero = std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; });
        if (!zero) {
            FElemQ alpha = mul_q(F, {y, 1}, invfp);
            if (F.trace_q(alpha) == Rational(m)) {
                bool pos = true;
                for (double v : F.embeddings(alpha))
                    if (v < 1e-9) pos = false;
                if (pos) out.push_back(alpha);
            }
        }
        int i = 0;
        while (i < n && y[size_t(i)] == box[size_t(i)]) {
            y[size_t(i)] = -box[size_t(i)];
            ++i;
        }
        if (i == n) break;
        ++y[size_t(i)];
    }
    return out;
}

double trace_sum(const EisensteinContext& ctx, i64 m) {
    if (m <= 0) return 0.0;
    double total = 0;
    for (auto& alpha : trace_candidates(ctx, m)) total += a_F_alpha(ctx, alpha);
    return total;
}

Rational deg_small(const ImagQuadField& k, i64 aut_lambda) {
    if (aut_lambda <= 0) throw std::domain_error("deg_small: |Aut| must be positive");
    Rational hw(k.class_number(), k.unit_count());
    int o = num_prime_divisors(k.D());
    Rational two_pow = (o >= 1) ? Rational(1) : Rational(2);
    for (int i = 1; i < o; ++i) two_pow /= Rational(2);
    return hw * hw * two_pow / Rational(aut_lambda);
}

BigDegree deg_big(const CMExtension& E, const HeckeLResult& lr) {
    BigDegree out;
    int n = E.n();
    int r = E.ramified_places();
    double hw = double(E.k().class_number()) / double(E.k().unit_count());
    out.value = double(n) * hw * lr.L0 / std::pow(2.0, double(r - 1));
    if (n == 2) {
        Rational lam = lambda0_exact_biquadratic(E);
        Rational hwq(E.k().class_number(), E.k().unit_count());
        Rational p2(1);
        for (int i = 0; i < r - 1; ++i) p2 *= Rational(2);
        out.exact = Rational(n) * hwq * lam / p2;
    }
    return out;
}

Rational BigDegree::deg_over_n_exact() const {
    if (!exact) throw std::domain_error("deg_over_n_exact: exact value only in biquadratic mode");
    return *exact / Rational(2);  // biquadratic: n = 2
}

GenusGroupCheck genus_group_check(const CMExtension& E) {
    if (E.n() != 2) throw std::domain_error("genus_group_check: biquadratic mode only");
    GenusGroupCheck out;
    i64 wE = (E.k().D() == 3) ? 6 : 2;
    out.b_tilde = Rational(wE) * lambda0_exact_biquadratic(E);
    out.integral = out.b_tilde.is_integer() && out.b_tilde.sign() > 0;
    if (out.integral) {
        i64 v = out.b_tilde.num();
        i64 p2 = 1;
        for (int i = 0; i < E.ramified_places() - 1; ++i) p2 *= 2;
        out.divisible = (v % p2) == 0;
    }
    return out;
}

}  // namespace cmarith
