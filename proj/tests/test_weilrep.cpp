#include <doctest.h>

#include <cmath>
#include <random>

#include "cmarith/newform.hpp"
#include "cmarith/weilrep.hpp"

using namespace cmarith;

TEST_CASE("weil representation relations") {
    SUBCASE("trivial module") {
        // unimodular even lattice stand-in: the hyperbolic plane has |A| = 1
        IMat U = {{0, 1}, {1, 0}};
        DiscModule A(U);
        CHECK(A.order() == 1);
        auto W = generator_matrices(A, {1, 1});
        auto R = weil_relation_residuals(W, A);
        CHECK(R.max() < 1e-12);
    }
    SUBCASE("rank-1 D=7 module and conjugate") {
        ImagQuadField k(7);
        auto L = HermLattice::rank1(k, 1);
        for (bool conj : {false, true}) {
            auto W = generator_matrices(L, conj);
            auto R = weil_relation_residuals(W, L.disc());
            CHECK(R.s4_identity < 1e-12);
            CHECK(R.braid < 1e-12);
            CHECK(R.unitarity < 1e-12);
            CHECK(R.s2_negation_phase < 1e-12);
        }
    }
    SUBCASE("indefinite L of order 343 (the criterion cap)") {
        ImagQuadField k(7);
        auto L = HermLattice::rank1(k, -1).direct_sum(HermLattice::standard_selfdual(k, 2));
        auto W = generator_matrices(L, true);
        auto R = weil_relation_residuals(W, L.disc());
        CHECK(R.max() < 1e-12);
    }
    SUBCASE("unitarity on random vectors") {
        ImagQuadField k(11);
        auto L = HermLattice::standard_selfdual(k, 2);
        auto W = generator_matrices(L);
        std::mt19937_64 rng(5);
        for (int t = 0; t < 10; ++t) {
            std::vector<cplx> v(size_t(W.order));
            double n0 = 0;
            for (auto& x : v) {
                x = cplx(double(rng() % 1000) / 500 - 1, double(rng() % 1000) / 500 - 1);
                n0 += std::norm(x);
            }
            std::vector<cplx> w(size_t(W.order), cplx(0, 0));
            for (i64 i = 0; i < W.order; ++i)
                for (i64 j = 0; j < W.order; ++j) w[size_t(j)] += v[size_t(i)] * W.rhoS[size_t(i)][size_t(j)];
            double n1 = 0;
            for (auto& x : w) n1 += std::norm(x);
            CHECK(std::abs(n1 - n0) < 1e-10 * n0);
        }
    }
}

TEST_CASE("gamma_p and q_mu") {
    ImagQuadField k(7);
    auto L = HermLattice::rank1(k, -1).direct_sum(HermLattice::standard_selfdual(k, 2));
    Rational det = L.det_hermitian();
    CHECK(det == Rational(-1));

    SUBCASE("fourth root of unity") {
        Root4 g = gamma_p(7, 3, det, 7);
        Root4 g4 = g * g * g * g;
        CHECK(g4 == Root4{1, 0});
        // odd n, p=7: purely imaginary
        CHECK(g.re == 0);
    }
    SUBCASE("even weight reduction") {
        // n even: gamma_p = (-1|p)^(n/2) inv_p
        for (i64 D : {7, 11, 15}) {
            for (auto& [p, e] : factorize(D)) {
                (void)e;
                for (int n : {4, 6}) {
                    Rational d((n / 2) % 2 ? -1 : 1);  // some self-dual-ish det
                    Root4 g = gamma_p(p, n, d, D);
                    CHECK(g.im == 0);
                    int expect = 1;
                    if ((n / 2) % 2 == 1 && p % 4 == 3) expect = -expect;
                    Rational s = d;
                    if ((i64(n) * (n - 1) / 2) % 2 == 1) s = -s;
                    expect *= hilbert_symbol(s, Rational(-D), Place::prime(p));
                    CHECK(g.re == expect);
                }
            }
        }
    }
    SUBCASE("empty product") {
        CHECK(gamma_Q(1, 3, det, 7) == Root4{1, 0});
    }
    SUBCASE("q_mu") {
        const auto& A = L.disc();
        CHECK(q_mu(A, 0, 7) == 1);
        int full = 0, partial = 0;
        for (i64 mu = 0; mu < A.order(); ++mu) {
            i64 Q = q_mu(A, mu, 7);
            CHECK(7 % Q == 0);
            if (Q == 7) ++full;
            if (Q == 1) ++partial;
        }
        CHECK(full == 342);  // D prime: every nonzero coset has Q_mu = D
        CHECK(partial == 1);

        // composite D: rank-1 module over D=15 is cyclic of order 15
        ImagQuadField k15(15);
        auto M = HermLattice::rank1(k15, 1);
        const auto& A15 = M.disc();
        std::map<i64, int> hist;
        for (i64 mu = 0; mu < 15; ++mu) hist[q_mu(A15, mu, 15)]++;
        CHECK(hist[1] == 1);
        CHECK(hist[3] == 2);
        CHECK(hist[5] == 4);
        CHECK(hist[15] == 8);
    }
}

TEST_CASE("CM newform") {
    ImagQuadField k(7);
    auto g = cm_newform(k, 3, 300);
    CHECK(g.c_int[1] == 1);
    CHECK(g.c_int[2] == -3);   // pi^2 + conj(pi)^2
    CHECK(g.c_int[7] == -7);   // (sqrt-7)^2
    CHECK(g.c_int[4] == 5);    // LMFDB 7.3.b.a
    CHECK(g.c_int[8] == -3);  // a(2)a(4) - chi(2) 4 a(2)
    CHECK(g.c_int[9] == 9);   // psi((3)) = 9 at the inert prime 3
    // c(p) = 0 for inert p
    for (i64 p : {3, 5, 13, 17, 19}) CHECK(g.c_int[size_t(p)] == 0);
    // |c(q)|^2 = q^(n-1) at the ramified prime
    CHECK(g.c_int[7] * g.c_int[7] == 49);
    // Hecke multiplicativity on coprime indices
    for (i64 a = 2; a <= 12; ++a)
        for (i64 b = a + 1; a * b <= 300; ++b)
            if (std::gcd(a, b) == 1) CHECK(g.c_int[size_t(a * b)] == g.c_int[size_t(a)] * g.c_int[size_t(b)]);

    // D=11, weight 3 also exists (h=1)
    ImagQuadField k11(11);
    auto g11 = cm_newform(k11, 3, 100);
    CHECK(g11.c_int[1] == 1);
    CHECK(g11.c_int[11] * g11.c_int[11] == 11 * 11);

    CHECK_THROWS(cm_newform(ImagQuadField(15), 3, 10));  // h = 2
    CHECK_THROWS(cm_newform(k, 4, 10));                  // even weight
    CHECK_THROWS(cm_newform(ImagQuadField(3), 3, 10));   // w=6 does not divide 2
}

TEST_CASE("atkin-lehner") {
    ImagQuadField k(7);
    auto g = cm_newform(k, 3, 400);

    SUBCASE("lambda and eps for D=7") {
        cplx lam = atkin_lehner_lambda(g, 7);
        // c(7) = -7: lambda = conj(-7) * i * 7^{-1} = -i
        CHECK(std::abs(lam - cplx(0, -1)) < 1e-12);
        CHECK(std::abs(std::abs(lam) - 1.0) < 1e-12);
        auto al = atkin_lehner(g, 7);
        CHECK(std::abs(al.eps - cplx(0, -1)) < 1e-12);
    }
    SUBCASE("Q = 1 is the identity") {
        auto al = atkin_lehner(g, 1);
        CHECK(std::abs(al.eps - cplx(1, 0)) < 1e-12);
        for (i64 m = 1; m <= 50; ++m) CHECK(std::abs(al.coeff(m) - g.coeff(m)) < 1e-12);
    }
    SUBCASE("multiplicativity of the glued table") {
        auto al = atkin_lehner(g, 7);
        for (i64 m1 = 1; m1 <= 200; ++m1)
            for (i64 m2 = m1 + 1; m1 * m2 <= 400; ++m2) {
                if (std::gcd(m1, m2) != 1) continue;
                cplx lhs = al.coeff(m1) * al.coeff(m2) / al.eps;
                CHECK(std::abs(lhs - al.coeff(m1 * m2)) < 1e-9);
            }
    }
    SUBCASE("fricke: c_D(m) = eps conj(c(m))") {
        auto al = atkin_lehner(g, 7);
        for (i64 m = 1; m <= 100; ++m)
            CHECK(std::abs(al.coeff(m) - al.eps * std::conj(g.coeff(m))) < 1e-10);
    }
}

TEST_CASE("induced form") {
    ImagQuadField k(7);
    auto g = cm_newform(k, 3, 7 * 35);
    auto Lam = HermLattice::standard_selfdual(k, 2);
    auto L = HermLattice::rank1(k, -1).direct_sum(Lam);
    InducedForm gt(g, L);
    const auto& A = L.disc();

    SUBCASE("support condition") {
        for (i64 mu = 0; mu < A.order(); ++mu) {
            Rational q = A.q_value(mu);
            for (i64 ml = 1; ml <= 70; ++ml) {
                Rational m(ml, 7);
                if (!(m - q).mod1().is_zero()) CHECK(std::abs(gt.coeff(m, mu)) == 0.0);
            }
        }
    }
    SUBCASE("symmetry in mu -> -mu") {
        for (i64 mu = 0; mu < A.order(); ++mu) {
            for (i64 ml = 1; ml <= 70; ++ml) {
                Rational m(ml, 7);
                CHECK(std::abs(gt.coeff(m, mu) - gt.coeff(m, A.neg(mu))) < 1e-12);
            }
        }
    }
    SUBCASE("prime-to-D Hecke agreement at mu = 0") {
        cplx kappa = gt.coeff(Rational(1), 0);
        CHECK(std::abs(kappa) > 0.5);
        // the ratio a~(m,0)/c(m) is the constant kappa for every m prime to D
        for (i64 m = 1; m <= 30; ++m) {
            if (m % 7 == 0) continue;
            CHECK(std::abs(gt.coeff(Rational(m), 0) - kappa * g.coeff(m)) < 1e-10);
        }
        // |kappa - 1| = D^((1-n)/2) exactly (the Fricke term)
        CHECK(std::abs(std::abs(kappa - cplx(1, 0)) - 1.0 / 7.0) < 1e-12);
    }
    SUBCASE("weight/signature mismatch rejected") {
        CHECK_THROWS(InducedForm(g, Lam));  // wrong rank/signature
    }
}

TEST_CASE("delta_p case formula") {
    CHECK(delta_p(5) == Root4{1, 0});
    CHECK(delta_p(7) == Root4{0, 1});
    CHECK(delta_p(13) == Root4{1, 0});
    for (i64 p : {3, 5, 7, 11, 13, 19, 23}) {
        Root4 d = delta_p(p);
        CHECK(d * d * d * d == Root4{1, 0});
    }
    CHECK_THROWS(delta_p(2));
}
