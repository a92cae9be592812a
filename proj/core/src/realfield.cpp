#include "cmarith/realfield.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cmarith {

// ---------------------------------------------------------------------------
// F_ell[x] helpers.  Polynomials are ascending-coefficient vectors with
// entries in [0, ell).
// ---------------------------------------------------------------------------
namespace {

PolyZ trim(PolyZ p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int pdeg(const PolyZ& p) { return int(p.size()) - 1; }

PolyZ pmod(const PolyZ& p, i64 ell) {
    PolyZ r = p;
    for (auto& c : r) {
        c %= ell;
        if (c < 0) c += ell;
    }
    return trim(r);
}

PolyZ pmul(const PolyZ& a, const PolyZ& b, i64 ell) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = i64((i128(r[i + j]) + i128(a[i]) * b[j]) % ell);
    return trim(r);
}

// division by monic divisor
std::pair<PolyZ, PolyZ> pdivmod(PolyZ a, const PolyZ& b, i64 ell) {
    a = pmod(a, ell);
    if (b.empty() || b.back() != 1)
        throw std::logic_error("pdivmod: divisor must be monic");
    PolyZ q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    while (pdeg(a) >= pdeg(b)) {
        i64 c = a.back();
        int shift = pdeg(a) - pdeg(b);
        q[size_t(shift)] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            size_t k = i + size_t(shift);
            a[k] = ((a[k] - i64(i128(c) * b[i] % ell)) % ell + ell) % ell;
        }
        a = trim(a);
    }
    return {trim(q), a};
}

PolyZ prem(const PolyZ& a, const PolyZ& b, i64 ell) { return pdivmod(a, b, ell).second; }

PolyZ pmonic(PolyZ p, i64 ell) {
    p = pmod(p, ell);
    if (p.empty()) return p;
    i64 inv = mod_inv(p.back(), ell);
    for (auto& c : p) c = i64(i128(c) * inv % ell);
    return p;
}

PolyZ pgcd(PolyZ a, PolyZ b, i64 ell) {
    a = pmod(a, ell);
    b = pmod(b, ell);
    while (!b.empty()) {
        PolyZ r = prem(a, pmonic(b, ell), ell);
        a = b;
        b = r;
    }
    return pmonic(a, ell);
}

PolyZ pderiv(const PolyZ& p, i64 ell) {
    PolyZ r;
    for (size_t i = 1; i < p.size(); ++i) r.push_back(i64(i128(p[i]) * i64(i % size_t(ell))) % ell);
    return pmod(r, ell);
}

PolyZ ppowmod(PolyZ base, i128 exp, const PolyZ& mod, i64 ell) {
    PolyZ r{1};
    base = prem(base, mod, ell);
    while (exp > 0) {
        if (exp & 1) r = prem(pmul(r, base, ell), mod, ell);
        base = prem(pmul(base, base, ell), mod, ell);
        exp >>= 1;
    }
    return r;
}

// x^(ell^k) mod (h, ell)
PolyZ frobenius_power(const PolyZ& h, i64 ell, int k) {
    PolyZ x{0, 1};
    PolyZ r = prem(x, h, ell);
    for (int i = 0; i < k; ++i) r = ppowmod(r, ell, h, ell);
    return r;
}

// equal-degree splitting of a squarefree product of irreducibles of degree d
void equal_degree_split(const PolyZ& h, int d, i64 ell, std::mt19937_64& rng,
                        std::vector<PolyZ>& out) {
    if (pdeg(h) == d) {
        out.push_back(pmonic(h, ell));
        return;
    }
    PolyZ g;
    while (g.empty() || pdeg(g) == 0 || pdeg(g) == pdeg(h)) {
        PolyZ a = PolyZ(size_t(pdeg(h)), 0);
        for (auto& c : a) c = i64(rng() % std::uint64_t(ell));
        a = trim(a);
        if (a.empty()) continue;
        if (ell == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2
            PolyZ t = prem(a, h, 2);
            PolyZ acc = t;
            for (int i = 1; i < d; ++i) {
                t = prem(pmul(t, t, 2), h, 2);
                acc = pmod([&] {
                    PolyZ s(std::max(acc.size(), t.size()), 0);
                    for (size_t j = 0; j < acc.size(); ++j) s[j] += acc[j];
                    for (size_t j = 0; j < t.size(); ++j) s[j] += t[j];
                    return s;
                }(), 2);
            }
            g = pgcd(acc, h, 2);
        } else {
            i128 e = 1;
            for (int i = 0; i < d; ++i) e *= ell;
            e = (e - 1) / 2;
            PolyZ b = ppowmod(a, e, h, ell);
            if (!b.empty()) b[0] = (b[0] + ell - 1) % ell;  // b - 1
            g = pgcd(trim(b), h, ell);
        }
    }
    equal_degree_split(g, d, ell, rng, out);
    equal_degree_split(pdivmod(h, pmonic(g, ell), ell).first, d, ell, rng, out);
}

}  // namespace

std::vector<std::pair<PolyZ, int>> factor_poly_mod(const PolyZ& poly, i64 ell, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ std::uint64_t(ell) * 0x9e3779b97f4a7c15ULL);
    PolyZ f = pmonic(poly, ell);
    if (pdeg(f) < 1) throw std::domain_error("factor_poly_mod: constant polynomial");
    std::vector<std::pair<PolyZ, int>> result;

    // peel off multiplicities by repeated gcd with the squarefree part
    std::vector<PolyZ> irreducibles;
    {
        // squarefree decomposition: handle possible p-th power content
        PolyZ rest = f;
        while (pdeg(rest) > 0) {
            PolyZ d = pderiv(rest, ell);
            if (d.empty()) {
                // rest = g(x^ell) = (reduced g)(x)^ell over F_ell
                PolyZ g;
                for (int i = 0; i <= pdeg(rest); i += int(ell)) g.push_back(rest[size_t(i)]);
                rest = g;
                continue;
            }
            PolyZ sf = pdivmod(rest, pgcd(rest, d, ell), ell).first;  // squarefree part
            // distinct-degree factorization of sf
            PolyZ w = sf;
            for (int d2 = 1; 2 * d2 <= pdeg(w) || pdeg(w) > 0; ++d2) {
                if (pdeg(w) <= 0) break;
                if (2 * d2 > pdeg(w)) {
                    irreducibles.push_back(pmonic(w, ell));
                    break;
                }
                PolyZ xq = frobenius_power(w, ell, d2);
                // xq - x
                PolyZ diff = xq;
                if (diff.size() < 2) diff.resize(2, 0);
                diff[1] = ((diff[1] - 1) % ell + ell) % ell;
                diff = trim(diff);
                PolyZ g = pgcd(diff, w, ell);
                if (pdeg(g) > 0) {
                    std::vector<PolyZ> parts;
                    equal_degree_split(g, d2, ell, rng, parts);
                    for (auto& p : parts) irreducibles.push_back(p);
                    w = pdivmod(w, g, ell).first;
                }
            }
            // remove one full multiplicity layer of sf from rest
            rest = pdivmod(rest, sf, ell).first;
        }
    }
    std::sort(irreducibles.begin(), irreducibles.end());
    irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()), irreducibles.end());
    for (auto& g : irreducibles) {
        int e = 0;
        PolyZ rest = f;
        while (true) {
            auto [q, r] = pdivmod(rest, g, ell);
            if (!r.empty()) break;
            rest = q;
            ++e;
        }
        result.emplace_back(g, e);
    }
    std::sort(result.begin(), result.end());
    return result;
}

i64 poly_disc(const PolyZ& f) {
    // disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f; computed via the
    // Sylvester matrix determinant with Bareiss elimination.
    int n = pdeg(f);
    PolyZ fp;
    for (int i = 1; i <= n; ++i) fp.push_back(f[size_t(i)] * i);
    int m = pdeg(fp);
    int N = n + m;
    std::vector<std::vector<i128>> M = std::vector<std::vector<i128>>(size_t(N), std::vector<i128>(size_t(N), 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[size_t(i)][size_t(i + j)] = f[size_t(n - j)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[size_t(m + i)][size_t(i + j)] = fp[size_t(m - j)];
    // Bareiss
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[size_t(k)][size_t(k)] == 0) {
            int s = -1;
            for (int i = k + 1; i < N; ++i)
                if (M[size_t(i)][size_t(k)] != 0) { s = i; break; }
            if (s < 0) return 0;
            std::swap(M[size_t(k)], M[size_t(s)]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j)
                M[size_t(i)][size_t(j)] =
                    (M[size_t(i)][size_t(j)] * M[size_t(k)][size_t(k)] -
                     M[size_t(i)][size_t(k)] * M[size_t(k)][size_t(j)]) /
                    prev;
        prev = M[size_t(k)][size_t(k)];
    }
    i128 res = sign * M[size_t(N - 1)][size_t(N - 1)];
    if ((i64(n) * (n - 1) / 2) % 2 == 1) res = -res;
    return checked_cast(res, "poly_disc");
}

// ---------------------------------------------------------------------------
// TotallyRealField
// ---------------------------------------------------------------------------

TotallyRealField::TotallyRealField(PolyZ min_poly) : f_(std::move(min_poly)) {
    f_ = trim(f_);
    n_ = pdeg(f_);
    if (n_ < 1) throw std::domain_error("TotallyRealField: degree must be >= 1");
    if (f_.back() != 1) throw std::domain_error("TotallyRealField: min_poly must be monic");
    disc_ = (n_ == 1) ? 1 : cmarith::poly_disc(f_);
    if (n_ > 1 && disc_ == 0) throw std::domain_error("TotallyRealField: min_poly not squarefree");

    // isolate the real roots; all n of them must exist
    if (n_ == 1) {
        roots_ = {double(-f_[0])};
    } else {
        double B = 1;
        for (int i = 0; i < n_; ++i) B = std::max(B, std::fabs(double(f_[size_t(i)])));
        B += 1;
        auto eval = [&](double x) {
            double v = 0;
            for (int i = n_; i >= 0; --i) v = v * x + double(f_[size_t(i)]);
            return v;
        };
        int grid = 4000 * n_;
        double prev_x = -B, prev_v = eval(-B);
        for (int i = 1; i <= grid; ++i) {
            double x = -B + 2 * B * double(i) / grid;
            double v = eval(x);
            if (prev_v == 0) roots_.push_back(prev_x);
            if (prev_v * v < 0) {
                double lo = prev_x, hi = x;
                for (int it = 0; it < 200; ++it) {
                    double mid = (lo + hi) / 2;
                    if (eval(lo) * eval(mid) <= 0)
                        hi = mid;
                    else
                        lo = mid;
                }
                roots_.push_back((lo + hi) / 2);
            }
            prev_x = x;
            prev_v = v;
        }
        if (int(roots_.size()) != n_)
            throw std::domain_error("TotallyRealField: polynomial is not totally real");
        std::sort(roots_.begin(), roots_.end());
    }
}

FElem TotallyRealField::one() const {
    FElem x = zero();
    x[0] = 1;
    return x;
}

FElem TotallyRealField::theta() const {
    FElem x = zero();
    if (n_ > 1)
        x[1] = 1;
    else
        x[0] = -f_[0];
    return x;
}

FElem TotallyRealField::add(const FElem& x, const FElem& y) const {
    FElem r = zero();
    for (int i = 0; i < n_; ++i) r[size_t(i)] = x[size_t(i)] + y[size_t(i)];
    return r;
}

FElem TotallyRealField::sub(const FElem& x, const FElem& y) const {
    FElem r = zero();
    for (int i = 0; i < n_; ++i) r[size_t(i)] = x[size_t(i)] - y[size_t(i)];
    return r;
}

FElem TotallyRealField::smul(i64 c, const FElem& x) const {
    FElem r = zero();
    for (int i = 0; i < n_; ++i) r[size_t(i)] = checked_cast(i128(c) * x[size_t(i)], "smul");
    return r;
}

FElem TotallyRealField::mul(const FElem& x, const FElem& y) const {
    std::vector<i128> prod = std::vector<i128>(size_t(2 * n_ - 1), 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) prod[size_t(i + j)] += i128(x[size_t(i)]) * y[size_t(j)];
    // reduce by monic f
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        i128 c = prod[size_t(k)];
        if (c == 0) continue;
        prod[size_t(k)] = 0;
        for (int i = 0; i < n_; ++i) prod[size_t(k - n_ + i)] -= c * f_[size_t(i)];
    }
    FElem r = zero();
    for (int i = 0; i < n_; ++i) r[size_t(i)] = checked_cast(prod[size_t(i)], "FElem::mul");
    return r;
}

std::vector<std::vector<i64>> TotallyRealField::mult_matrix(const FElem& x) const {
    std::vector<std::vector<i64>> M = std::vector<std::vector<i64>>(size_t(n_), std::vector<i64>(size_t(n_), 0));
    FElem col = x;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) M[size_t(i)][size_t(j)] = col[size_t(i)];
        if (j + 1 < n_) col = mul(col, theta());
    }
    return M;
}

i64 TotallyRealField::trace(const FElem& x) const {
    auto M = mult_matrix(x);
    i64 t = 0;
    for (int i = 0; i < n_; ++i) t += M[size_t(i)][size_t(i)];
    return t;
}

i64 TotallyRealField::norm(const FElem& x) const {
    auto M0 = mult_matrix(x);
    std::vector<std::vector<i128>> M = std::vector<std::vector<i128>>(size_t(n_), std::vector<i128>(size_t(n_), i128(0)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) M[size_t(i)][size_t(j)] = M0[size_t(i)][size_t(j)];
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n_ - 1; ++k) {
        if (M[size_t(k)][size_t(k)] == 0) {
            int s = -1;
            for (int i = k + 1; i < n_; ++i)
                if (M[size_t(i)][size_t(k)] != 0) { s = i; break; }
            if (s < 0) return 0;
            std::swap(M[size_t(k)], M[size_t(s)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n_; ++i)
            for (int j = k + 1; j < n_; ++j)
                M[size_t(i)][size_t(j)] =
                    (M[size_t(i)][size_t(j)] * M[size_t(k)][size_t(k)] -
                     M[size_t(i)][size_t(k)] * M[size_t(k)][size_t(j)]) /
                    prev;
        prev = M[size_t(k)][size_t(k)];
    }
    return checked_cast(sign * M[size_t(n_ - 1)][size_t(n_ - 1)], "FElem::norm");
}

std::vector<double> TotallyRealField::embeddings(const FElem& x) const {
    std::vector<double> vals;
    for (double r : roots_) {
        double v = 0;
        for (int i = n_ - 1; i >= 0; --i) v = v * r + double(x[size_t(i)]);
        vals.push_back(v);
    }
    return vals;
}

std::vector<double> TotallyRealField::embeddings(const FElemQ& x) const {
    auto vals = embeddings(x.num);
    for (auto& v : vals) v /= double(x.den);
    return vals;
}

bool TotallyRealField::is_totally_positive(const FElemQ& x) const {
    double scale = 0;
    for (int i = 0; i < n_; ++i) scale = std::max(scale, std::fabs(double(x.num[size_t(i)])));
    scale = std::max(scale, 1.0);
    for (double v : embeddings(x)) {
        if (std::fabs(v) < 1e-9 * scale / double(std::abs(x.den)))
            throw std::runtime_error("is_totally_positive: embedding too close to zero");
        if (v < 0) return false;
    }
    return true;
}

Rational TotallyRealField::trace_q(const FElemQ& x) const {
    return Rational(trace(x.num), x.den);
}

Rational TotallyRealField::norm_q(const FElemQ& x) const {
    Rational d(1);
    for (int i = 0; i < n_; ++i) d = d * Rational(x.den);
    return Rational(norm(x.num)) / d;
}

FElem TotallyRealField::different_gen() const {
    FElem d = zero();
    if (n_ == 1) {
        d[0] = 1;
        return d;
    }
    // f'(theta)
    PolyZ fp;
    for (int i = 1; i <= n_; ++i) fp.push_back(f_[size_t(i)] * i);
    FElem r = zero();
    FElem power = one();
    for (size_t i = 0; i < fp.size(); ++i) {
        r = add(r, smul(fp[i], power));
        if (i + 1 < fp.size()) power = mul(power, theta());
    }
    return r;
}

std::vector<PrimeIdealF> TotallyRealField::primes_above(i64 ell) const {
    if (!is_prime(ell)) throw std::domain_error("primes_above: ell must be prime");
    if (n_ == 1) return {PrimeIdealF{ell, 1, 1, {0, 1}}};
    auto factors = factor_poly_mod(f_, ell);

    // Dedekind's criterion: reject primes dividing the index.
    bool squarefree = true;
    for (auto& [g, e] : factors)
        if (e > 1) squarefree = false;
    if (!squarefree) {
        PolyZ gstar{1};
        PolyZ hstar{1};
        for (auto& [g, e] : factors) {
            gstar = pmul(gstar, g, ell);
            PolyZ ge{1};
            for (int i = 1; i < e; ++i) ge = pmul(ge, g, ell);
            hstar = pmul(hstar, ge, ell);
        }
        // F = (gstar * hstar - f)/ell over Z, then mod ell
        PolyZ prodZ = PolyZ(size_t(n_ + 1), 0);
        {
            std::vector<i128> acc = std::vector<i128>(size_t(n_ + 1), 0);
            std::vector<i128> tmp(gstar.size() + hstar.size(), 0);
            for (size_t i = 0; i < gstar.size(); ++i)
                for (size_t j = 0; j < hstar.size(); ++j) tmp[i + j] += i128(gstar[i]) * hstar[j];
            for (size_t i = 0; i <= size_t(n_); ++i)
                acc[i] = tmp[i] - f_[i];
            for (size_t i = 0; i <= size_t(n_); ++i) {
                if (acc[i] % ell != 0) throw std::logic_error("Dedekind: lift mismatch");
                prodZ[i] = checked_cast(acc[i] / ell, "dedekind");
            }
        }
        PolyZ Fbar = pmod(prodZ, ell);
        PolyZ g1 = pgcd(Fbar, gstar, ell);
        PolyZ g2 = pgcd(g1, hstar, ell);
        if (pdeg(g2) > 0)
            throw UnsupportedPrime("prime " + std::to_string(ell) +
                                   " divides the index of the power basis");
    }

    std::vector<PrimeIdealF> out;
    for (auto& [g, e] : factors) out.push_back(PrimeIdealF{ell, pdeg(g), e, g});
    std::sort(out.begin(), out.end());
    int sum = 0;
    for (auto& P : out) sum += P.e * P.f;
    if (sum != n_) throw std::logic_error("primes_above: sum e*f != n");
    return out;
}

std::vector<PrimeIdealF> TotallyRealField::primes_upto_norm(i64 X) const {
    std::vector<PrimeIdealF> out;
    for (i64 ell : primes_upto(X)) {
        for (auto& P : primes_above(ell))
            if (P.norm() <= X) out.push_back(P);
    }
    return out;
}

std::vector<i64> TotallyRealField::ideal_counts(i64 X) const {
    // coefficients of prod_P (1 - N(P)^-s)^-1 truncated at X
    std::vector<i64> counts = std::vector<i64>(size_t(X + 1), 0);
    if (X >= 1) counts[1] = 1;
    for (auto& P : primes_upto_norm(X)) {
        i64 q = P.norm();
        for (i64 m = q; m <= X; ++m)
            if (m % q == 0) counts[size_t(m)] += counts[size_t(m / q)];
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Ideal lattices for valuations
// ---------------------------------------------------------------------------

struct TotallyRealField::IdealLat {
    // columns of an upper-triangular HNF basis of a full-rank sublattice of Z^n
    std::vector<std::vector<i64>> H;  // H[i][j], row i, column j; H[i][j]=0 for i>j
};

namespace {

// Upper-triangular HNF basis of the full-rank Z-lattice spanned by the given
// columns.  Returns basis[j] = column j with basis[j][i] = 0 for i > j and
// basis[j][j] > 0.  (Entries above the diagonal are left unreduced; that is
// enough for membership tests by back substitution.)
std::vector<std::vector<i64>> hnf_columns(int n, std::vector<std::vector<i64>> cols) {
    std::vector<std::vector<i64>> basis{size_t(n)};
    for (int row = n - 1; row >= 0; --row) {
        // all active columns have zero entries below `row` at this point
        int pivot = -1;
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j][size_t(row)] == 0) continue;
            if (pivot < 0) {
                pivot = int(j);
                continue;
            }
            while (cols[j][size_t(row)] != 0) {
                i64 q = cols[size_t(pivot)][size_t(row)] / cols[j][size_t(row)];
                for (int r = 0; r <= row; ++r)
                    cols[size_t(pivot)][size_t(r)] = checked_cast(
                        i128(cols[size_t(pivot)][size_t(r)]) - i128(q) * cols[j][size_t(r)],
                        "hnf");
                std::swap(cols[size_t(pivot)], cols[j]);
            }
        }
        if (pivot < 0) throw std::logic_error("hnf_columns: not full rank");
        if (cols[size_t(pivot)][size_t(row)] < 0)
            for (auto& v : cols[size_t(pivot)]) v = -v;
        basis[size_t(row)] = cols[size_t(pivot)];
        cols.erase(cols.begin() + pivot);
    }
    return basis;
}

}  // namespace

int TotallyRealField::valuation(const FElem& x, const PrimeIdealF& P) const {
    // val_P(x) via the exact p-adic method: v = max k such that x in P^k.
    // P^k membership is tested with an HNF lattice built from generator
    // products; k is bounded by ord_ell(N(x)) / f.
    i64 nx = norm(x);
    if (nx == 0) throw std::domain_error("valuation: zero element");
    i64 a = nx < 0 ? -nx : nx;
    int bound = 0;
    while (a % P.ell == 0) {
        a /= P.ell;
        ++bound;
    }
    bound = bound / P.f + 1;

    // generators of P: ell and g(theta)
    FElem gtheta = zero();
    {
        FElem power = one();
        for (size_t i = 0; i < P.gpoly.size(); ++i) {
            gtheta = add(gtheta, smul(P.gpoly[i], power));
            if (i + 1 < P.gpoly.size()) power = mul(power, theta());
        }
    }
    std::vector<FElem> pgens = {smul(P.ell, one()), gtheta};

    std::vector<FElem> current = {one()};
    int v = 0;
    while (v < bound + 1) {
        // current holds generators of P^v as an O-module; build P^(v+1)
        std::vector<FElem> next;
        for (auto& u : current)
            for (auto& w : pgens) next.push_back(mul(u, w));
        // membership of x in the Z-lattice spanned by {next * theta^j}
        std::vector<std::vector<i64>> cols;
        for (auto& u : next) {
            FElem pw = u;
            for (int j = 0; j < n_; ++j) {
                cols.push_back(pw);
                if (j + 1 < n_) pw = mul(pw, theta());
            }
        }
        auto H = hnf_columns(n_, cols);
        // solve H y = x by back substitution
        std::vector<i64> rhs = x;
        bool member = true;
        for (int i = n_ - 1; i >= 0; --i) {
            i64 d = H[size_t(i)][size_t(i)];
            if (rhs[size_t(i)] % d != 0) {
                member = false;
                break;
            }
            i64 y = rhs[size_t(i)] / d;
            for (int r = 0; r <= i; ++r)
                rhs[size_t(r)] = checked_cast(i128(rhs[size_t(r)]) - i128(y) * H[size_t(i)][size_t(r)],
                                              "valuation");
        }
        if (!member) return v;
        ++v;
        current = std::move(next);
        if (int(current.size()) > 64) {
            // re-HNF the generator list to keep it small: keep module structure by
            // taking the HNF columns as new generators
            std::vector<std::vector<i64>> cc;
            for (auto& u : current) cc.push_back(u);
            auto H2 = hnf_columns(n_, cc);
            current.clear();
            for (int j = 0; j < n_; ++j) {
                FElem col = zero();
                for (int i = 0; i < n_; ++i) col[size_t(i)] = H2[size_t(i)][size_t(j)];
                current.push_back(col);
            }
        }
    }
    throw std::logic_error("valuation: exceeded norm bound");
}

int TotallyRealField::valuation(const FElemQ& x, const PrimeIdealF& P) const {
    int vd = 0;
    i64 d = x.den;
    while (d % P.ell == 0) {
        d /= P.ell;
        ++vd;
    }
    return valuation(x.num, P) - vd * P.e;
}

FactoredIdealF TotallyRealField::factor_principal(const FElemQ& x) const {
    i64 nn = norm(x.num);
    if (nn == 0) throw std::domain_error("factor_principal: zero element");
    i128 scaled = nn;
    i128 dpow = 1;
    for (int i = 0; i < n_; ++i) dpow *= x.den;
    // support primes: those dividing N(num) or den
    std::map<i64, bool> ells;
    for (auto& [p, e] : factorize(nn < 0 ? -nn : nn)) ells[p] = true;
    for (auto& [p, e] : factorize(x.den < 0 ? -x.den : x.den)) ells[p] = true;
    (void)scaled;
    (void)dpow;
    FactoredIdealF out;
    for (auto& [ell, dummy] : ells) {
        (void)dummy;
        for (auto& P : primes_above(ell)) {
            int v = valuation(x, P);
            if (v != 0) out.factors.emplace_back(P, v);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

namespace {

// polynomial arithmetic with coefficients mod M (M = ell^k), divisor monic
PolyZ pmulM(const PolyZ& a, const PolyZ& b, i64 M) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = i64((i128(r[i + j]) + i128(a[i]) * b[j]) % M);
    return trim(r);
}

PolyZ premM(PolyZ a, const PolyZ& b, i64 M) {
    a = pmod(a, M);
    if (b.empty() || b.back() != 1) throw std::logic_error("premM: divisor must be monic");
    while (pdeg(a) >= pdeg(b)) {
        i64 c = a.back();
        int shift = pdeg(a) - pdeg(b);
        for (size_t i = 0; i < b.size(); ++i) {
            size_t k = i + size_t(shift);
            a[k] = i64(((i128(a[k]) - i128(c) * b[i]) % M + M) % M);
        }
        a = trim(a);
    }
    return a;
}

// Bezout u*g + w*h = 1 in F_ell[x] for coprime g, h.
std::pair<PolyZ, PolyZ> poly_bezout(const PolyZ& g, const PolyZ& h, i64 ell) {
    PolyZ r0 = pmonic(g, ell), r1 = pmonic(h, ell);
    PolyZ s0{1}, s1{}, t0{}, t1{1};
    // track leading-coefficient normalizations of the monic inputs
    // (g, h are used monic here; the caller compensates)
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(r0, pmonic(r1, ell), ell);
        // normalize: r1 may not be monic; scale q accordingly
        i64 lead = r1.back();
        i64 inv = mod_inv(lead, ell);
        PolyZ qq;
        for (i64 c : q) qq.push_back(i64(i128(c) * inv % ell));
        PolyZ ns = s0, nt = t0;
        PolyZ qs = pmul(qq, s1, ell), qt = pmul(qq, t1, ell);
        ns.resize(std::max(ns.size(), qs.size()), 0);
        nt.resize(std::max(nt.size(), qt.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) ns[i] = ((ns[i] - qs[i]) % ell + ell) % ell;
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = ((nt[i] - qt[i]) % ell + ell) % ell;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = trim(ns);
        t0 = t1;
        t1 = trim(nt);
    }
    // r0 = gcd (a unit); scale
    if (pdeg(r0) != 0) throw std::logic_error("poly_bezout: inputs not coprime");
    i64 inv = mod_inv(r0[0], ell);
    PolyZ u, w;
    for (i64 c : s0) u.push_back(i64(i128(c) * inv % ell));
    for (i64 c : t0) w.push_back(i64(i128(c) * inv % ell));
    return {trim(u), trim(w)};
}

}  // namespace

i64 TotallyRealField::residue_norm_of_unit_part(const FElem& y, const PrimeIdealF& P, int v) const {
    if (P.e != 1) throw std::domain_error("residue_norm: P must be unramified over ell");
    if (v < 0) throw std::domain_error("residue_norm: negative shift");
    i64 ell = P.ell;

    PolyZ g;  // local factor lifted to modulus ell^(v+1)
    if (n_ == 1) {
        g = {0, 1};
    } else if (v == 0) {
        g = P.gpoly;
    } else {
        // Hensel: lift the coprime factorization f = g * h from mod ell to ell^(v+1)
        PolyZ gk = P.gpoly;
        PolyZ hk = pdivmod(pmod(f_, ell), gk, ell).first;
        auto [u, w] = poly_bezout(gk, hk, ell);  // u g + w h = 1 mod ell
        i64 M = ell;
        for (int step = 0; step < v; ++step) {
            i64 M2 = checked_cast(i128(M) * ell, "hensel");
            // e = (f - g h)/M mod ell
            PolyZ gh = pmulM(gk, hk, checked_cast(i128(M2) * ell, "hensel"));
            PolyZ e(f_.size(), 0);
            for (size_t i = 0; i < f_.size(); ++i) {
                i64 d = f_[i] - (i < gh.size() ? gh[i] : 0);
                i128 dd = d;
                if (dd % M != 0) {
                    // reduce mod M2*ell first
                    dd %= i128(M2) * ell;
                    if (dd % M != 0) throw std::logic_error("hensel: lift mismatch");
                }
                e[i] = i64((i128(dd / M) % ell + ell) % ell);
            }
            e = trim(e);
            // g += M * (w e mod g), h += M * (u e mod h)
            PolyZ dg = prem(pmul(w, e, ell), pmonic(pmod(gk, ell), ell), ell);
            PolyZ dh = prem(pmul(u, e, ell), pmonic(pmod(hk, ell), ell), ell);
            gk.resize(std::max(gk.size(), dg.size()), 0);
            for (size_t i = 0; i < dg.size(); ++i)
                gk[i] = i64(((i128(gk[i]) + i128(M) * dg[i]) % M2 + M2) % M2);
            hk.resize(std::max(hk.size(), dh.size()), 0);
            for (size_t i = 0; i < dh.size(); ++i)
                hk[i] = i64(((i128(hk[i]) + i128(M) * dh[i]) % M2 + M2) % M2);
            gk = trim(gk);
            hk = trim(hk);
            M = M2;
        }
        g = gk;
    }

    // reduce y mod (ell^(v+1), g); every coefficient must be divisible by ell^v
    i64 M = 1;
    for (int i = 0; i <= v; ++i) M = checked_cast(i128(M) * ell, "residue_norm modulus");
    PolyZ yy(y.begin(), y.end());
    yy = premM(pmod(yy, M), g, M);
    i64 lv = M / ell;  // ell^v
    PolyZ ubar;
    for (i64 c : yy) {
        if (c % lv != 0) throw std::logic_error("residue_norm: element not divisible by ell^v at P");
        ubar.push_back((c / lv) % ell);
    }
    ubar = trim(ubar);
    if (ubar.empty()) throw std::logic_error("residue_norm: unit part vanishes mod P");

    // norm to F_ell: ubar^(1 + ell + ... + ell^(f-1)) mod (ell, gpoly)
    i128 e = 0;
    i128 p = 1;
    for (int i = 0; i < P.f; ++i) {
        e += p;
        p *= ell;
    }
    PolyZ r = ppowmod(ubar, e, P.gpoly, ell);
    if (pdeg(r) > 0) throw std::logic_error("residue_norm: norm not in the prime field");
    return r.empty() ? 0 : r[0];
}

}  // namespace cmarith
