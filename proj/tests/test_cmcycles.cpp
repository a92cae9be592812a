#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "cmarith/cmcycles.hpp"
#include "cmarith/lattice.hpp"

using namespace cmarith;

namespace {
EisensteinContext ctx_75() {
    return EisensteinContext(CMExtension(ImagQuadField(7), TotallyRealField({-1, -1, 1})));
}
EisensteinContext ctx_cubic() {
    return EisensteinContext(CMExtension(ImagQuadField(7), TotallyRealField({-1, -3, 0, 1})));
}
}  // namespace

TEST_CASE("beta construction") {
    auto ctx = ctx_75();
    const auto& F = ctx.E.F();
    // exactly one negative embedding
    int neg = 0;
    for (double v : F.embeddings(ctx.beta))
        if (v < 0) ++neg;
    CHECK(neg == 1);
    // beta generates d_F^{-1}: valuation -1 at the ramified prime over 5
    auto p5 = F.primes_above(5);
    CHECK(F.valuation(ctx.beta, p5[0]) == -1);

    auto ctx3 = ctx_cubic();
    int neg3 = 0;
    for (double v : ctx3.E.F().embeddings(ctx3.beta))
        if (v < 0) ++neg3;
    CHECK(neg3 == 1);
}

TEST_CASE("diff sets") {
    auto ctx = ctx_75();
    const auto& F = ctx.E.F();

    SUBCASE("odd cardinality, nonsplit membership, 1000 seeded samples") {
        std::mt19937_64 rng(42);
        int checked = 0;
        while (checked < 1000) {
            i64 a = i64(rng() % 41) - 20;
            i64 b = i64(rng() % 41) - 20;
            i64 den = 1 + i64(rng() % 6);
            if (a == 0 && b == 0) continue;
            FElemQ alpha{{a, b}, den};
            bool pos = true;
            for (double v : F.embeddings(alpha))
                if (v < 1e-9) pos = false;
            if (!pos) continue;
            auto diff = diff_set(ctx, alpha);
            CHECK(diff.size() % 2 == 1);
            CHECK(!diff.empty());
            for (auto& P : diff) CHECK(ctx.E.splitting(P) != Splitting::split);
            ++checked;
        }
    }
    SUBCASE("diff is independent of the choice of beta (mod norms)") {
        std::mt19937_64 rng(43);
        for (int t = 0; t < 50; ++t) {
            i64 a = i64(rng() % 21) - 10, b = i64(rng() % 21) - 10;
            if (a == 0 && b == 0) continue;
            FElemQ alpha{{a, b}, 1};
            bool pos = true;
            for (double v : F.embeddings(alpha))
                if (v < 1e-9) pos = false;
            if (!pos) continue;
            auto d1 = diff_set(ctx, alpha);
            auto d2 = diff_set_with_beta(ctx, alpha, ctx.beta_times_norm(i64(rng() % 5) + 1, i64(rng() % 3)));
            CHECK(d1 == d2);
        }
    }
    SUBCASE("coherent value at the special place gives a predicted singleton") {
        // alpha = N(x) * beta-positive-part ... take alpha = 1: Diff from local solvability
        FElemQ one{F.one(), 1};
        auto diff = diff_set(ctx, one);
        CHECK(diff.size() == 1);
        // brute-force local solvability: the symbol must be -1 exactly at the
        // listed prime among all candidates
        for (auto& P : diff) CHECK(ctx.E.local_symbol({F.mul(one.num, ctx.beta.num), ctx.beta.den}, P) == -1);
    }
}

TEST_CASE("rho counts") {
    CMExtension E(ImagQuadField(7), TotallyRealField({-1, -1, 1}));
    const auto& F = E.F();

    SUBCASE("unit ideal") {
        FactoredIdealF b;
        CHECK(rho_count(E, b) == 1);
        CHECK(rho_count_bruteforce(E, b) == 1);
    }
    SUBCASE("inert odd exponent vanishes") {
        auto p19 = F.primes_above(19);  // split in F, chi(-7)(19) = -1: inert in E
        FactoredIdealF b;
        b.factors.emplace_back(p19[0], 1);
        CHECK(rho_count(E, b) == 0);
        CHECK(rho_count_bruteforce(E, b) == 0);
        b.factors[0].second = 2;
        CHECK(rho_count(E, b) == 1);
        CHECK(rho_count_bruteforce(E, b) == 1);
    }
    SUBCASE("non-integral vanishes") {
        auto p11 = F.primes_above(11);
        FactoredIdealF b;
        b.factors.emplace_back(p11[0], -1);
        CHECK(rho_count(E, b) == 0);
    }
    SUBCASE("formula equals brute force for all integral b of norm <= 500") {
        // enumerate all prime ideals of norm <= 500 and all exponent patterns
        // with total norm <= 500
        auto primes = F.primes_upto_norm(500);
        std::function<void(size_t, i64, FactoredIdealF&)> rec = [&](size_t i, i64 norm,
                                                                    FactoredIdealF& b) {
            CHECK(rho_count(E, b) == rho_count_bruteforce(E, b));
            if (i == primes.size()) return;
            // skip: without this prime
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
    }
}

TEST_CASE("a_F(alpha, 0)") {
    auto ctx = ctx_75();
    const auto& F = ctx.E.F();

    SUBCASE("vanishes when |Diff| > 1 and is never positive") {
        std::mt19937_64 rng(44);
        int checked = 0;
        while (checked < 300) {
            i64 a = i64(rng() % 31) - 15, b = i64(rng() % 31) - 15;
            i64 den = 1 + i64(rng() % 4);
            if (a == 0 && b == 0) continue;
            FElemQ alpha{{a, b}, den};
            bool pos = true;
            for (double v : F.embeddings(alpha))
                if (v < 1e-9) pos = false;
            if (!pos) continue;
            double val = a_F_alpha(ctx, alpha);
            auto diff = diff_set(ctx, alpha);
            if (diff.size() > 1) CHECK(val == 0.0);
            CHECK(val <= 0.0);
            ++checked;
        }
    }
    SUBCASE("singleton value assembles rho and ord") {
        // alpha = 1: Diff = {p} computed above; check the assembled formula sign
        FElemQ one{F.one(), 1};
        auto diff = diff_set(ctx, one);
        REQUIRE(diff.size() == 1);
        double val = a_F_alpha(ctx, one);
        // by the formula the value is -2^(r-1) * rho * ord * log N(p) <= 0
        CHECK(val <= 0.0);
    }
}

TEST_CASE("trace sums") {
    auto ctx = ctx_75();
    SUBCASE("m = 0 empty") {
        CHECK(trace_sum(ctx, 0) == 0.0);
        CHECK(trace_candidates(ctx, 0).empty());
    }
    SUBCASE("finiteness and the m=1 candidates for F = Q(sqrt5)") {
        auto cands = trace_candidates(ctx, 1);
        CHECK(cands.size() == 2);  // u in {-1, 0}: two totally positive elements
        for (auto& alpha : cands) CHECK(ctx.E.F().trace_q(alpha) == Rational(1));
    }
    SUBCASE("permutation invariance (recompute, reversed accumulation)") {
        double v1 = trace_sum(ctx, 3);
        auto cands = trace_candidates(ctx, 3);
        double v2 = 0;
        for (auto it = cands.rbegin(); it != cands.rend(); ++it) v2 += a_F_alpha(ctx, *it);
        CHECK(std::fabs(v1 - v2) < 1e-12);
    }
    SUBCASE("cubic context candidates are finite and consistent") {
        auto ctx3 = ctx_cubic();
        auto cands = trace_candidates(ctx3, 1);
        for (auto& alpha : cands) CHECK(ctx3.E.F().trace_q(alpha) == Rational(1));
        double v = trace_sum(ctx3, 1);
        CHECK(v <= 0.0);
    }
}

TEST_CASE("degrees") {
    SUBCASE("deg_small") {
        ImagQuadField k(7);
        auto Lam = HermLattice::standard_selfdual(k, 2);
        i64 aut = Lam.aut_count();
        Rational d = deg_small(k, aut);
        CHECK(d == Rational(1, 4) / Rational(aut));
        // doubling |Aut| halves the degree
        CHECK(deg_small(k, 2 * aut) == d / Rational(2));
        // o(D) cross-check by factorization
        ImagQuadField k15(15);
        CHECK(deg_small(k15, 2) == Rational(1, 4));  // (h/w)^2 = 1, 2^(1-o) = 1/2, |Aut| = 2
    }
    SUBCASE("deg_big for k=-7, F=Q(sqrt5): deg/n = 1/4") {
        CMExtension E(ImagQuadField(7), TotallyRealField({-1, -1, 1}));
        auto lr = hecke_L_chiE_deriv0(E, HeckeMode::abelian_factor);
        auto bd = deg_big(E, lr);
        CHECK(bd.exact.has_value());
        CHECK(bd.deg_over_n_exact() == Rational(1, 4));
        CHECK(std::fabs(bd.value - 0.5) < 1e-8);
        CHECK(bd.value > 0);
    }
    SUBCASE("genus-group integrality") {
        CMExtension E(ImagQuadField(7), TotallyRealField({-1, -1, 1}));
        auto g = genus_group_check(E);
        CHECK(g.integral);
        CHECK(g.divisible);
        CHECK(g.b_tilde == Rational(4));
    }
}
