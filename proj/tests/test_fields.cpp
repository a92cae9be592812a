#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "cmarith/cmfield.hpp"
#include "cmarith/intmath.hpp"
#include "cmarith/quadfield.hpp"
#include "cmarith/realfield.hpp"

using namespace cmarith;

namespace {

TotallyRealField field_sqrt5() { return TotallyRealField({-1, -1, 1}); }       // x^2 - x - 1
TotallyRealField field_cubic81() { return TotallyRealField({-1, -3, 0, 1}); }  // x^3 - 3x - 1

}  // namespace

TEST_CASE("kronecker character basics") {
    ImagQuadField k(7);
    CHECK(k.chi(7) == 0);
    CHECK(k.chi(14) == 0);
    // quadratic residues mod 7 by exhaustion: {1,2,4}
    std::set<i64> qr;
    for (i64 x = 1; x < 7; ++x) qr.insert(x * x % 7);
    for (i64 m = 1; m < 7; ++m) CHECK(k.chi(m) == (qr.count(m) ? 1 : -1));
    CHECK(k.chi(2) == 1);
    CHECK(k.chi(-1) == -1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        i64 m = i64(rng() % 100000) - 50000;
        CHECK(k.chi(m + 7) == k.chi(m));
    }
    for (i64 a = -20; a <= 20; ++a)
        for (i64 b = -20; b <= 20; ++b) CHECK(k.chi(a * b) == k.chi(a) * k.chi(b));
}

TEST_CASE("hilbert symbol") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        i64 b = i64(rng() % 200) + 1;
        CHECK(hilbert_symbol(Rational(1), Rational(b), Place::prime(5)) == 1);
        CHECK(hilbert_symbol(Rational(4), Rational(b), Place::real()) == 1);
        CHECK(hilbert_symbol(Rational(9), Rational(-b), Place::prime(2)) == 1);
    }
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), Place::real()) == -1);
    CHECK(hilbert_symbol(Rational(2), Rational(7), Place::prime(7)) == 1);  // 2 = 3^2 mod 7

    // Hilbert reciprocity on random pairs
    for (int i = 0; i < 500; ++i) {
        i64 a = i64(rng() % 400) - 200;
        i64 b = i64(rng() % 400) - 200;
        if (a == 0 || b == 0) continue;
        int prod = hilbert_symbol(Rational(a), Rational(b), Place::real());
        std::set<i64> ps = {2};
        for (auto& [p, e] : factorize(a < 0 ? -a : a)) ps.insert(p);
        for (auto& [p, e] : factorize(b < 0 ? -b : b)) ps.insert(p);
        for (i64 p : ps) prod *= hilbert_symbol(Rational(a), Rational(b), Place::prime(p));
        CHECK(prod == 1);
    }
}

TEST_CASE("class numbers by reduced forms") {
    CHECK(ImagQuadField::enumerate_reduced_forms(7).size() == 1);
    CHECK(ImagQuadField::enumerate_reduced_forms(35).size() == 2);
    CHECK(ImagQuadField::enumerate_reduced_forms(3).size() == 1);
    CHECK(ImagQuadField::enumerate_reduced_forms(23).size() == 3);
    CHECK(ImagQuadField::enumerate_reduced_forms(55).size() == 4);
    CHECK_THROWS(ImagQuadField::enumerate_reduced_forms(9));  // not squarefree
    CHECK_THROWS(ImagQuadField::enumerate_reduced_forms(5));  // -5 not 1 mod 4
}

TEST_CASE("class number formula L(0,chi) = 2h/w exactly, D < 500") {
    for (i64 D = 3; D < 500; D += 4) {  // -D = 1 mod 4 means D = 3 mod 4
        if (!is_squarefree(D)) continue;
        ImagQuadField k(D);
        i64 s = 0;
        for (i64 a = 1; a < D; ++a) s += k.chi(a) * a;
        Rational L0 = Rational(-s, D);
        Rational expect = Rational(2 * k.class_number(), k.unit_count());
        CHECK(L0 == expect);
    }
}

TEST_CASE("quadratic integer arithmetic and ideals") {
    ImagQuadField k(7);
    QuadInt pi{0, 1};
    CHECK(k.norm(pi) == 2);
    CHECK(k.trace(pi) == 1);
    QuadInt d = k.delta();
    CHECK(k.norm(d) == 7);
    CHECK(k.trace(d) == 0);
    CHECK(k.mul(pi, k.conj(pi)) == QuadInt{2, 0});

    QuadIdeal P = k.ramified_prime(7);
    CHECK(P.norm() == 7);
    QuadIdeal P2 = k.mul(P, P);
    CHECK(P2.norm() == 49);
    CHECK(P2 == k.principal_ideal({7, 0}));

    ImagQuadField k23(23);
    CHECK(k23.class_number() == 3);
    auto f = k23.reduced_forms()[1];
    auto f3 = k23.compose(k23.compose(f, f), f);
    CHECK(f3 == k23.principal_form());
}

TEST_CASE("prime factorization in totally real fields") {
    auto F = field_cubic81();
    CHECK(F.poly_disc() == 81);

    SUBCASE("split prime 17") {
        auto ps = F.primes_above(17);
        int sum = 0;
        for (auto& P : ps) sum += P.e * P.f;
        CHECK(sum == 3);
        CHECK(ps.size() == 3);  // x^3-3x-1 splits completely mod 17
    }
    SUBCASE("inert prime 2") {
        auto ps = F.primes_above(2);
        REQUIRE(ps.size() == 1);
        CHECK(ps[0].f == 3);
        CHECK(ps[0].e == 1);
    }
    SUBCASE("ramified prime 3") {
        auto ps = F.primes_above(3);
        REQUIRE(ps.size() == 1);
        CHECK(ps[0].e == 3);
        CHECK(ps[0].f == 1);
    }
    SUBCASE("norm and trace of theta") {
        CHECK(F.norm(F.theta()) == 1);  // -f(0)
        CHECK(F.trace(F.theta()) == 0);
    }
}

TEST_CASE("ideal counts are multiplicative and match the zeta expansion") {
    SUBCASE("F = Q") {
        TotallyRealField Q({0, 1});
        auto counts = Q.ideal_counts(50);
        for (i64 m = 1; m <= 50; ++m) CHECK(counts[size_t(m)] == 1);
    }
    SUBCASE("real quadratic disc 5") {
        auto F = field_sqrt5();
        CHECK(F.poly_disc() == 5);
        auto counts = F.ideal_counts(200);
        CHECK(counts[1] == 1);
        for (i64 p : primes_upto(200)) {
            int chi = kronecker(5, p);
            i64 expect = chi == 1 ? 2 : (chi == -1 ? 0 : 1);
            CHECK(counts[size_t(p)] == expect);
        }
        for (i64 m = 2; m <= 14; ++m)
            for (i64 n = m + 1; m * n <= 200; ++n)
                if (std::gcd(m, n) == 1)
                    CHECK(counts[size_t(m * n)] == counts[size_t(m)] * counts[size_t(n)]);
        CHECK(counts[4] == 1);  // 2 inert: only (2) has norm 4
        CHECK(counts[55] == counts[5] * counts[11]);
    }
    SUBCASE("X = 1") {
        auto F = field_sqrt5();
        auto counts = F.ideal_counts(1);
        CHECK(counts[1] == 1);
    }
}

TEST_CASE("unsupported index prime errors loudly") {
    // x^2 - 5: O_F = Z[(1+sqrt5)/2], index 2
    TotallyRealField F({-5, 0, 1});
    CHECK_THROWS_AS(F.primes_above(2), UnsupportedPrime);
    CHECK(F.primes_above(11).size() == 2);
}

TEST_CASE("valuations and principal factorization") {
    auto F = field_sqrt5();
    auto fac = F.factor_principal({F.theta(), 1});  // golden ratio is a unit
    CHECK(fac.factors.empty());

    auto p5 = F.primes_above(5);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].e == 2);
    CHECK(F.valuation(F.smul(5, F.one()), p5[0]) == 2);

    auto p11 = F.primes_above(11);
    REQUIRE(p11.size() == 2);
    CHECK(F.valuation(F.smul(11, F.one()), p11[0]) == 1);
    CHECK(F.valuation(F.smul(11, F.one()), p11[1]) == 1);

    CHECK(F.valuation(F.different_gen(), p5[0]) == 1);  // f'(theta) = sqrt 5
    CHECK(F.valuation(FElemQ{F.one(), 5}, p5[0]) == -2);

    // factor (11*sqrt5): exponents (1,1) at the primes over 11, 1 at p5
    auto y = F.mul(F.smul(11, F.one()), F.different_gen());
    auto fac2 = F.factor_principal({y, 1});
    CHECK(fac2.factors.size() == 3);
    Rational nrm = fac2.norm();
    CHECK(nrm == Rational(11 * 11 * 5));
}

TEST_CASE("CM extension invariants") {
    SUBCASE("k=-7, F=Q(sqrt5)") {
        CMExtension E(ImagQuadField(7), field_sqrt5());
        CHECK(E.n() == 2);
        CHECK(E.ramified_places() == 3);  // 2 archimedean + one inert prime above 7
        CHECK(E.abs_disc_E() == 49 * 25);
        CHECK(E.conductor_factor() == 49 * 5);
    }
    SUBCASE("k=-7, cubic of disc 81") {
        CMExtension E(ImagQuadField(7), field_cubic81());
        CHECK(E.n() == 3);
        CHECK(E.ramified_places() >= 3);
        CHECK(E.abs_disc_E() == i64(343) * 81 * 81);
    }
    SUBCASE("coprimality enforced") {
        CHECK_THROWS(CMExtension(ImagQuadField(35), field_sqrt5()));
    }
}

TEST_CASE("splitting in E") {
    CMExtension E(ImagQuadField(7), field_sqrt5());
    const auto& F = E.F();
    for (auto& P : F.primes_above(7)) CHECK(E.splitting(P) == Splitting::ramified);
    for (auto& P : F.primes_above(11))
        if (P.norm() == 11) CHECK(E.splitting(P) == Splitting::split);
    CHECK(kronecker(5, 19) == 1);
    CHECK(ImagQuadField(7).chi(19) == -1);
    for (auto& P : F.primes_above(19)) CHECK(E.splitting(P) == Splitting::inert);

    for (i64 ell : primes_upto(100)) {
        for (auto& P : F.primes_above(ell)) {
            int chi = ImagQuadField(7).chi(P.norm());
            if (chi == 1)
                CHECK(E.splitting(P) == Splitting::split);
            else if (chi == -1)
                CHECK(E.splitting(P) == Splitting::inert);
            else
                CHECK(E.splitting(P) == Splitting::ramified);
        }
    }
}

TEST_CASE("polynomial factorization mod ell") {
    auto f = factor_poly_mod({1, 0, 1}, 5);  // (x+2)(x+3)
    CHECK(f.size() == 2);
    auto g = factor_poly_mod({1, 0, 1}, 7);  // irreducible
    CHECK(g.size() == 1);
    CHECK(g[0].first.size() == 3);
    auto h = factor_poly_mod({1, 2, 1}, 3);  // (x+1)^2
    REQUIRE(h.size() == 1);
    CHECK(h[0].second == 2);
    CHECK(factor_poly_mod({1, 1, 0, 0, 1}, 2).size() == 1);  // x^4+x+1 irreducible
    auto k = factor_poly_mod({1, 0, 1, 0, 1}, 2);            // (x^2+x+1)^2
    REQUIRE(k.size() == 1);
    CHECK(k[0].second == 2);
    CHECK(k[0].first == PolyZ{1, 1, 1});
}
