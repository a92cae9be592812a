// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "cmarith/report.hpp"

using namespace cmarith;

namespace {

int failures = 0;

void line(int idx, const char* what, bool pass, double residual, double seconds) {
    std::printf("%-4s criterion %2d: %-58s residual=%-11.3g %7.2fs\n", pass ? "PASS" : "FAIL",
                idx, what, residual, seconds);
    if (!pass) ++failures;
}

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    RunConfig cfg;

    // 1. coset-twist identity: exact, three lattices over disc -7 and -11,
    //    all m <= 60, all Q | D, under 60 s.
    {
        bool ok = true;
        double sec = timed([&] {
            ImagQuadField k7(7), k11(11);
            std::vector<HermLattice> lattices;
            lattices.push_back(HermLattice::standard_selfdual(k7, 2));
            lattices.push_back(HermLattice(k7, {{{1, 0}, {0, 1}}, {{1, -1}, {3, 0}}}));
            lattices.push_back(HermLattice::standard_selfdual(k11, 2));
            for (auto& Lam : lattices) {
                i64 D = Lam.field().D();
                const auto& A = Lam.disc();
                auto T = Lam.theta_coeffs(60);
                for (i64 Q = 1; Q <= D; ++Q) {
                    if (D % Q) continue;
                    auto Tw = Lam.ramified_twist(Q);
                    auto Tsc = Tw.theta_coeffs(60 * Q);
                    for (i64 ml = 1; ml <= 60 * T.level; ++ml) {
                        Rational m(ml, T.level);
                        i64 lhs = 0;
                        for (i64 mu = 0; mu < A.order(); ++mu)
                            if (Q % q_mu(A, mu, D) == 0) lhs += T.rep(m, mu);
                        if (lhs != Tsc.rep(m * Rational(Q), 0)) ok = false;
                    }
                }
            }
        });
        line(1, "coset-twist identity exact (3 lattices, m<=60, all Q|D)", ok && sec < 60, 0.0,
             sec);
    }

    // 2. Weil representation relations to 1e-12 on modules of order <= 343.
    {
        double worst = 0;
        double sec = timed([&] {
            std::vector<HermLattice> mods;
            ImagQuadField k7(7), k11(11), k15(15), k23(23);
            mods.push_back(HermLattice::rank1(k7, 1));
            mods.push_back(HermLattice::standard_selfdual(k7, 2));
            mods.push_back(HermLattice::rank1(k7, -1).direct_sum(HermLattice::standard_selfdual(k7, 2)));
            mods.push_back(HermLattice::rank1(k11, 1));
            mods.push_back(HermLattice::standard_selfdual(k11, 2));
            mods.push_back(HermLattice::rank1(k15, 1));
            mods.push_back(HermLattice::rank1(k23, 1));
            for (auto& L : mods) {
                if (L.disc().order() > 343) continue;
                for (bool conj : {false, true}) {
                    auto W = generator_matrices(L, conj);
                    worst = std::max(worst, weil_relation_residuals(W, L.disc()).max());
                }
            }
        });
        line(2, "Weil matrices: S^4, braid, unitarity, S^2 phase (<=343)", worst <= 1e-12, worst,
             sec);
    }

    // 3. Hasse reciprocity on 100 seeded random hermitian Gram matrices.
    {
        int bad = 0;
        double sec = timed([&] {
            std::mt19937_64 rng(cfg.seed ^ fnv1a("acceptance-hasse"));
            ImagQuadField k(7);
            int done = 0;
            while (done < 100) {
                int n = 1 + int(rng() % 3);
                std::vector<std::vector<QuadInt>> g(size_t(n),
                                                    std::vector<QuadInt>(size_t(n), QuadInt{0, 0}));
                for (int i = 0; i < n; ++i) {
                    g[size_t(i)][size_t(i)] = QuadInt{i64(rng() % 13) - 6, 0};
                    for (int j = i + 1; j < n; ++j) {
                        QuadInt v{i64(rng() % 7) - 3, i64(rng() % 7) - 3};
                        g[size_t(i)][size_t(j)] = v;
                        g[size_t(j)][size_t(i)] = k.conj(v);
                    }
                }
                Rational det;
                try {
                    det = HermLattice(k, g).det_hermitian();
                } catch (const std::exception&) {
                    continue;
                }
                if (det.is_zero()) continue;
                Rational s = det;
                if ((i64(n) * (n - 1) / 2) % 2 == 1) s = -s;
                int prod = hilbert_symbol(s, Rational(-7), Place::real());
                std::set<i64> ps = {2, 7};
                i64 nm = s.num() < 0 ? -s.num() : s.num();
                for (auto& [p, e] : factorize(nm)) ps.insert(p);
                for (auto& [p, e] : factorize(s.den())) ps.insert(p);
                for (i64 p : ps) prod *= hilbert_symbol(s, Rational(-7), Place::prime(p));
                if (prod != 1) ++bad;
                ++done;
            }
        });
        line(3, "Hasse reciprocity on 100 seeded hermitian Grams", bad == 0, double(bad), sec);
    }

    // 4. class number formula, exact rationals, all odd fundamental D < 500,
    //    under 30 s.
    {
        bool ok = true;
        double sec = timed([&] {
            for (i64 D = 3; D < 500; D += 4) {
                if (!is_squarefree(D)) continue;
                ImagQuadField k(D);
                i64 s = 0;
                for (i64 a = 1; a < D; ++a) s += k.chi(a) * a;
                if (!(Rational(-s, D) == Rational(2 * k.class_number(), k.unit_count()))) ok = false;
            }
        });
        line(4, "L(0,chi_-D) = 2h/w exactly for all odd fundamental D<500", ok && sec < 30, 0.0,
             sec);
    }

    // 5. biquadratic Lambda(0) cross-check at 1e-8 and frozen exact degrees.
    {
        double worst = 0;
        bool deg_ok = true;
        double sec = timed([&] {
            struct Row {
                i64 D;
                Rational deg_over_n;
            };
            const std::vector<Row> rows = {{7, Rational(1, 4)}, {11, Rational(1, 4)},
                                           {23, Rational(9, 4)}};
            for (auto& row : rows) {
                CMExtension E(ImagQuadField(row.D), TotallyRealField({-1, -1, 1}));
                auto lr = hecke_L_chiE_deriv0(E, HeckeMode::abelian_factor);
                worst = std::max(worst,
                                 std::fabs(lr.L0 - lambda0_exact_biquadratic(E).to_double()));
                if (!(deg_big(E, lr).deg_over_n_exact() == row.deg_over_n)) deg_ok = false;
            }
        });
        line(5, "Lambda(0,chi_E) matches (2h1/w1)(2h2/w2); deg/n frozen", worst <= 1e-8 && deg_ok,
             worst, sec);
    }

    // 6. rho multiplicative formula vs brute-force enumeration, norms <= 500.
    {
        bool ok = true;
        double sec = timed([&] {
            CMExtension E(ImagQuadField(7), TotallyRealField({-1, -1, 1}));
            auto primes = E.F().primes_upto_norm(500);
            std::function<void(size_t, i64, FactoredIdealF&)> rec =
                [&](size_t i, i64 norm, FactoredIdealF& b) {
                    if (rho_count(E, b) != rho_count_bruteforce(E, b)) ok = false;
                    if (i == primes.size() || !ok) return;
                    rec(i + 1, norm, b);
                    i64 q = primes[i].norm();
                    i64 cur = norm;
                    int e = 0;
                    while (cur * q <= 500) {
                        cur *= q;
                        ++e;
                        b.factors.emplace_back(primes[i], e);
                        rec(i + 1, cur, b);
                        b.factors.pop_back();
                    }
                };
            FactoredIdealF b;
            rec(0, 1, b);
        });
        line(6, "rho(b) formula = O_E ideal enumeration, norms <= 500", ok, 0.0, sec);
    }

    // 7. Diff parity and a_F vanishing on 1000 seeded samples.
    {
        bool ok = true;
        double sec = timed([&] {
            EisensteinContext ctx(CMExtension(ImagQuadField(7), TotallyRealField({-1, -1, 1})));
            const auto& F = ctx.E.F();
            std::mt19937_64 rng(cfg.seed ^ fnv1a("acceptance-diff"));
            int done = 0;
            while (done < 1000) {
                i64 a = i64(rng() % 41) - 20, b = i64(rng() % 41) - 20;
                i64 den = 1 + i64(rng() % 6);
                if (a == 0 && b == 0) continue;
                FElemQ alpha{{a, b}, den};
                bool pos = true;
                try {
                    for (double v : F.embeddings(alpha))
                        if (v < 1e-9) pos = false;
                } catch (...) {
                    continue;
                }
                if (!pos) continue;
                auto diff = diff_set(ctx, alpha);
                if (diff.size() % 2 != 1) ok = false;
                if (diff.size() > 1 && a_F_alpha(ctx, alpha) != 0.0) ok = false;
                ++done;
            }
        });
        line(7, "Diff odd on 1000 seeded alpha; a_F = 0 when |Diff| > 1", ok, 0.0, sec);
    }

    // 8. Chowla-Selberg two-path agreement at 1e-8 for D in {3, 7, 11, 19}.
    {
        double worst = 0;
        double sec = timed([&] {
            for (i64 D : {3, 7, 11, 19})
                worst = std::max(worst, std::fabs(hfalt_k(D) - hfalt_k_gamma_product(D)));
        });
        line(8, "Chowla-Selberg height vs gamma-product oracle (1e-8)", worst <= 1e-8, worst, sec);
    }

    // 9. height-theorem consistency web at 1e-10 and the n = 1 collapse.
    {
        double worst = 0;
        double sec = timed([&] {
            for (i64 D : {i64(7), i64(11), i64(23)}) {
                CMExtension E(ImagQuadField(D), TotallyRealField({-1, -1, 1}));
                auto lr = hecke_L_chiE_deriv0(E, HeckeMode::abelian_factor);
                worst = std::max(worst, height_report(E, lr).consistency_residual);
            }
            CMExtension E3(ImagQuadField(7), TotallyRealField({-1, -3, 0, 1}));
            auto lr3 = hecke_L_chiE_deriv0(E3, HeckeMode::abelian_factor);
            worst = std::max(worst, height_report(E3, lr3).consistency_residual);
            for (i64 D : {3, 7, 11, 19, 23}) {
                double ldk = logderiv_chik(D);
                worst = std::max(worst, std::fabs(hfalt_E_Phi(1, ldk, ldk) - hfalt_k(D)));
            }
        });
        line(9, "height-theorem equivalence <= 1e-10; n=1 collapse <= 1e-10", worst <= 1e-10,
             worst, sec);
    }

    // 10. end-to-end induction pipeline + full verify wall time < 5 min.
    {
        double worst = 0;
        bool support_ok = true, hecke_ok = true;
        double sec = timed([&] {
            ImagQuadField k(7);
            auto g = cm_newform(k, 3, 7 * 31);
            auto Lam = HermLattice::standard_selfdual(k, 2);
            auto L = HermLattice::rank1(k, -1).direct_sum(Lam);
            InducedForm gt(g, L);
            const auto& A = L.disc();
            // support condition
            for (i64 mu = 0; mu < A.order() && support_ok; ++mu)
                for (i64 ml = 1; ml <= 7 * 30; ++ml) {
                    Rational m(ml, 7);
                    if (!(m - A.q_value(mu)).mod1().is_zero() && std::abs(gt.coeff(m, mu)) != 0.0)
                        support_ok = false;
                }
            // prime-to-D Hecke agreement of the mu = 0 column: the ratio
            // a~(m,0)/c(m) is the m-independent constant a~(1,0)
            cplx kappa = gt.coeff(Rational(1), 0);
            for (i64 m = 1; m <= 30; ++m) {
                if (m % 7 == 0) continue;
                if (std::abs(gt.coeff(Rational(m), 0) - kappa * g.coeff(m)) > 1e-10)
                    hecke_ok = false;
            }
            // full coefficient-level identity for m <= 30
            auto rep = scalar_vector_identity(g, Lam, 30);
            worst = rep.max_residual;
        });
        bool ok = support_ok && hecke_ok && worst <= 1e-10;
        line(10, "pipeline: support, mu0 Hecke agreement, identity <= 1e-10", ok, worst, sec);

        double vsec = timed([&] {
            RunConfig vcfg;
            vcfg.jobs = 4;
            auto rep = run_suite(vcfg, {"all"});
            if (!rep.all_pass()) ++failures;
        });
        std::printf("     verify-all wall time: %.1fs (budget 300s)\n", vsec);
        if (vsec >= 300) ++failures;
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d failure(s)\n", failures);
    return 1;
}
