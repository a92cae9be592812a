#include "cmarith/quadfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmarith {

namespace {

// g = gcd(a,b) with x*a + y*b = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return a < 0 ? -a : a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

ImagQuadField::ImagQuadField(i64 D, int pi_trace) : D_(D), t_(pi_trace) {
    if (D <= 0 || D % 2 == 0) throw std::domain_error("ImagQuadField: D must be positive and odd");
    if (((-D % 4) + 4) % 4 != 1) throw std::domain_error("ImagQuadField: -D must be 1 mod 4");
    if (!is_squarefree(D)) throw std::domain_error("ImagQuadField: -D must be a fundamental discriminant");
    if (t_ != 1 && t_ != -1) throw std::domain_error("ImagQuadField: pi trace must be +-1");
    w_ = (D == 3) ? 6 : 2;
    forms_ = enumerate_reduced_forms(D);
    h_ = i64(forms_.size());
}

QuadInt ImagQuadField::mul(const QuadInt& x, const QuadInt& y) const {
    // pi^2 = t*pi - N(pi)
    i128 npi = pi_norm();
    i128 a = i128(x.a) * y.a - i128(x.b) * y.b * npi;
    i128 b = i128(x.a) * y.b + i128(x.b) * y.a + i128(x.b) * y.b * t_;
    return {checked_cast(a, "QuadInt::mul"), checked_cast(b, "QuadInt::mul")};
}

i64 ImagQuadField::norm(const QuadInt& x) const {
    i128 n = i128(x.a) * x.a + i128(x.a) * x.b * t_ + i128(x.b) * x.b * pi_norm();
    return checked_cast(n, "QuadInt::norm");
}

QuadInt ImagQuadField::pow(QuadInt x, int e) const {
    QuadInt r{1, 0};
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

QuadRat ImagQuadField::mul(const QuadRat& x, const QuadRat& y) const {
    Rational npi(pi_norm()), t(t_);
    return {x.a * y.a - x.b * y.b * npi, x.a * y.b + x.b * y.a + x.b * y.b * t};
}

Rational ImagQuadField::norm(const QuadRat& x) const {
    return x.a * x.a + x.a * x.b * Rational(t_) + x.b * x.b * Rational(pi_norm());
}

QuadRat ImagQuadField::inv(const QuadRat& x) const {
    Rational n = norm(x);
    if (n.is_zero()) throw std::domain_error("QuadRat: division by zero");
    QuadRat xb = conj(x);
    return {xb.a / n, xb.b / n};
}

std::vector<ReducedForm> ImagQuadField::enumerate_reduced_forms(i64 D) {
    if (D <= 0 || D % 2 == 0 || ((-D % 4) + 4) % 4 != 1 || !is_squarefree(D))
        throw std::domain_error("enumerate_reduced_forms: -D must be an odd fundamental discriminant");
    std::vector<ReducedForm> forms;
    for (i64 a = 1; 3 * a * a <= D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b + D;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && c == a) continue;  // (a,-b,a) ~ (a,b,a)
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            forms.push_back({a, b, c});
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

ReducedForm ImagQuadField::reduce(i64 a, i64 b, i64 c) const {
    if (a <= 0 || i128(b) * b - 4 * i128(a) * c != -i128(D_))
        throw std::domain_error("reduce: not a positive form of discriminant -D");
    for (int guard = 0; guard < 100000; ++guard) {
        // normalize b into (-a, a]
        i64 m = 2 * a;
        i64 nb = ((b % m) + m) % m;
        if (nb > a) nb -= m;
        b = nb;
        c = checked_cast((i128(b) * b + D_) / (4 * i128(a)), "reduce");
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (a == c && b < 0) b = -b;
        return {a, b, c};
    }
    throw std::runtime_error("form reduction did not terminate");
}

QuadIdeal ImagQuadField::ideal_from_generators(const std::vector<QuadInt>& gens) const {
    // HNF of the Z-module spanned by gens and pi*gens with respect to basis (1, pi).
    std::vector<std::pair<i64, i64>> cols;  // (coef of 1, coef of pi)
    for (const auto& g : gens) {
        cols.push_back({g.a, g.b});
        QuadInt pg = mul({0, 1}, g);
        cols.push_back({pg.a, pg.b});
    }
    i64 c = 0, wu = 0;
    for (const auto& col : cols) {
        if (col.second == 0) continue;
        if (c == 0) {
            c = col.second;
            wu = col.first;
        } else {
            i64 x, y;
            i64 g = ext_gcd(c, col.second, x, y);
            wu = checked_cast(i128(x) * wu + i128(y) * col.first, "ideal hnf");
            c = g;
        }
    }
    if (c < 0) { c = -c; wu = -wu; }
    i64 a = 0;
    for (const auto& col : cols) {
        i64 u = col.first;
        if (c != 0) u = checked_cast(i128(col.first) - i128(col.second / c) * wu, "ideal hnf");
        a = std::gcd(a, u < 0 ? -u : u);
    }
    if (a == 0 || c == 0) throw std::domain_error("ideal_from_generators: zero ideal");
    i64 b = ((wu % a) + a) % a;
    return {a, b, c};
}

QuadIdeal ImagQuadField::mul(const QuadIdeal& I, const QuadIdeal& J) const {
    std::vector<QuadInt> gens;
    for (const auto& x : ideal_zbasis(I))
        for (const auto& y : ideal_zbasis(J)) gens.push_back(mul(x, y));
    return ideal_from_generators(gens);
}

QuadIdeal ImagQuadField::conj(const QuadIdeal& I) const {
    return ideal_from_generators({{I.a, 0}, conj(QuadInt{I.b, I.c})});
}

QuadIdeal ImagQuadField::ramified_prime(i64 q) const {
    if (q <= 1 || D_ % q != 0) throw std::domain_error("ramified_prime: q must divide D");
    return ideal_from_generators({{q, 0}, delta()});
}

QuadIdeal ImagQuadField::ramified_product(i64 Q) const {
    if (Q <= 0 || D_ % Q != 0) throw std::domain_error("ramified_product: Q must divide D");
    QuadIdeal I{1, 0, 1};
    for (auto& [q, e] : factorize(Q)) {
        (void)e;
        I = mul(I, ramified_prime(q));
    }
    return I;
}

ReducedForm ImagQuadField::form_of_ideal(const QuadIdeal& I) const {
    i64 a = I.a / I.c, b = I.b / I.c;
    QuadInt w{b, 1};
    i64 B = trace(w);
    i64 C = norm(w);
    if (C % a) throw std::logic_error("form_of_ideal: module is not an ideal");
    return reduce(a, B, C / a);
}

ReducedForm ImagQuadField::principal_form() const { return reduce(1, 1, (1 + D_) / 4); }

ReducedForm ImagQuadField::compose(const ReducedForm& f, const ReducedForm& g) const {
    return form_of_ideal(mul(ideal_of_form(f), ideal_of_form(g)));
}

QuadIdeal ImagQuadField::ideal_of_form(const ReducedForm& f) const {
    // Z a + Z w with Tr(w) = b and N(w) = a c, i.e. w = (b - t)/2 + pi;
    // chosen so that form_of_ideal(ideal_of_form(f)) == f.
    i64 b0 = (f.b - t_) / 2;
    return ideal_from_generators({{f.a, 0}, {b0, 1}});
}

int ImagQuadField::class_index(const QuadIdeal& I) const {
    ReducedForm f = form_of_ideal(I);
    for (size_t i = 0; i < forms_.size(); ++i)
        if (forms_[i] == f) return int(i);
    throw std::logic_error("class_index: form not in the reduced list");
}

}  // namespace cmarith
