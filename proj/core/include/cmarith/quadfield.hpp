#pragma once

#include <vector>

#include "cmarith/intmath.hpp"
#include "cmarith/rational.hpp"

namespace cmarith {

class ImagQuadField;

// Element a + b*pi of O_k, where O_k = Z + Z*pi and pi = (t + sqrt(-D))/2.
struct QuadInt {
    i64 a = 0;
    i64 b = 0;

    bool is_zero() const { return a == 0 && b == 0; }
    QuadInt operator-() const { return {-a, -b}; }
    QuadInt operator+(const QuadInt& o) const { return {a + o.a, b + o.b}; }
    QuadInt operator-(const QuadInt& o) const { return {a - o.a, b - o.b}; }
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
};

// a + b*pi with rational coordinates (elements of k).
struct QuadRat {
    Rational a;
    Rational b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_rational() const { return b.is_zero(); }
    QuadRat operator-() const { return {-a, -b}; }
    QuadRat operator+(const QuadRat& o) const { return {a + o.a, b + o.b}; }
    QuadRat operator-(const QuadRat& o) const { return {a - o.a, b - o.b}; }
    bool operator==(const QuadRat& o) const { return a == o.a && b == o.b; }
};

// Binary quadratic form a x^2 + b xy + c y^2 of discriminant -D.
struct ReducedForm {
    i64 a, b, c;
    bool operator==(const ReducedForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const ReducedForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

// Integral ideal of O_k in HNF: Z*a + Z*(b + c*pi), with c | a, c | b, 0 <= b < a.
struct QuadIdeal {
    i64 a = 1, b = 0, c = 1;
    i64 norm() const { return a * c; }
    bool operator==(const QuadIdeal& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Imaginary quadratic field of odd fundamental discriminant -D.
class ImagQuadField {
public:
    explicit ImagQuadField(i64 D, int pi_trace = 1);

    i64 D() const { return D_; }
    i64 pi_trace() const { return t_; }
    i64 pi_norm() const { return (t_ * t_ + D_) / 4; }
    i64 class_number() const { return h_; }
    i64 unit_count() const { return w_; }
    const std::vector<ReducedForm>& reduced_forms() const { return forms_; }

    // Kronecker character chi_k(m) = (-D | m).
    int chi(i64 m) const { return kronecker(-D_, m); }

    QuadInt conj(const QuadInt& x) const { return {x.a + t_ * x.b, -x.b}; }
    QuadInt mul(const QuadInt& x, const QuadInt& y) const;
    i64 norm(const QuadInt& x) const;
    i64 trace(const QuadInt& x) const { return 2 * x.a + t_ * x.b; }
    QuadInt pow(QuadInt x, int e) const;

    QuadRat conj(const QuadRat& x) const { return {x.a + Rational(t_) * x.b, -x.b}; }
    QuadRat mul(const QuadRat& x, const QuadRat& y) const;
    Rational norm(const QuadRat& x) const;
    Rational trace(const QuadRat& x) const { return Rational(2) * x.a + Rational(t_) * x.b; }
    QuadRat inv(const QuadRat& x) const;
    QuadRat to_rat(const QuadInt& x) const { return {Rational(x.a), Rational(x.b)}; }

    // sqrt(-D) as an element of O_k.
    QuadInt delta() const { return {-t_, 2}; }

    // Ideal arithmetic.
    QuadIdeal ideal_from_generators(const std::vector<QuadInt>& gens) const;
    QuadIdeal principal_ideal(const QuadInt& g) const { return ideal_from_generators({g}); }
    QuadIdeal mul(const QuadIdeal& I, const QuadIdeal& J) const;
    QuadIdeal conj(const QuadIdeal& I) const;
    // The ramified prime above q (requires q | D).
    QuadIdeal ramified_prime(i64 q) const;
    // Product of ramified primes over q | Q (Q a positive divisor of D).
    QuadIdeal ramified_product(i64 Q) const;
    std::vector<QuadInt> ideal_zbasis(const QuadIdeal& I) const {
        return {{I.a, 0}, {I.b, I.c}};
    }

    // Class-group structure via reduced forms.
    ReducedForm form_of_ideal(const QuadIdeal& I) const;
    ReducedForm principal_form() const;
    ReducedForm compose(const ReducedForm& f, const ReducedForm& g) const;
    QuadIdeal ideal_of_form(const ReducedForm& f) const;
    // Index of the class of I in reduced_forms().
    int class_index(const QuadIdeal& I) const;

    // All reduced forms of discriminant -D (the class-number oracle).
    static std::vector<ReducedForm> enumerate_reduced_forms(i64 D);

private:
    ReducedForm reduce(i64 a, i64 b, i64 c) const;

    i64 D_;
    i64 t_;
    i64 h_;
    i64 w_;
    std::vector<ReducedForm> forms_;
};

}  // namespace cmarith
