#include "cmarith/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <cmath>
#include <stdexcept>

namespace cmarith {

HermLattice::HermLattice(ImagQuadField k, std::vector<std::vector<QuadInt>> gram, Rational scale)
    : k_(std::move(k)), m_(int(gram.size())), gram_(std::move(gram)), scale_(scale) {
    if (m_ == 0) throw std::domain_error("HermLattice: empty Gram");
    for (int i = 0; i < m_; ++i) {
        if (int(gram_[size_t(i)].size()) != m_)
            throw std::domain_error("HermLattice: square Gram required");
        if (gram_[size_t(i)][size_t(i)].b != 0)
            throw std::domain_error("HermLattice: diagonal entries must be rational integers");
        for (int j = 0; j < m_; ++j)
            if (!(k_.conj(gram_[size_t(i)][size_t(j)]) == gram_[size_t(j)][size_t(i)]))
                throw std::domain_error("HermLattice: Gram must be conjugate-symmetric");
    }
    // standard Z-basis e_1..e_m, pi e_1..pi e_m
    for (int part = 0; part < 2; ++part)
        for (int j = 0; j < m_; ++j) {
            std::vector<QuadInt> v = std::vector<QuadInt>(size_t(m_), QuadInt{0, 0});
            v[size_t(j)] = part == 0 ? QuadInt{1, 0} : QuadInt{0, 1};
            zbasis_.push_back(v);
        }
    build_trace_gram();
}

HermLattice HermLattice::standard_selfdual(const ImagQuadField& k, int rank) {
    std::vector<std::vector<QuadInt>> g = std::vector<std::vector<QuadInt>>(size_t(rank), std::vector<QuadInt>(size_t(rank), {0, 0}));
    for (int i = 0; i < rank; ++i) g[size_t(i)][size_t(i)] = {1, 0};
    return HermLattice(k, g);
}

HermLattice HermLattice::rank1(const ImagQuadField& k, i64 c) {
    return HermLattice(k, {{{c, 0}}});
}

QuadRat HermLattice::herm(const std::vector<i64>& x, const std::vector<i64>& y) const {
    // expand to module coordinates
    std::vector<QuadInt> u = std::vector<QuadInt>(size_t(m_), QuadInt{0, 0}), v(size_t(m_), QuadInt{0, 0});
    for (int i = 0; i < 2 * m_; ++i) {
        if (x[size_t(i)] != 0)
            for (int j = 0; j < m_; ++j) {
                const QuadInt& b = zbasis_[size_t(i)][size_t(j)];
                u[size_t(j)].a = checked_cast(i128(u[size_t(j)].a) + i128(x[size_t(i)]) * b.a, "herm");
                u[size_t(j)].b = checked_cast(i128(u[size_t(j)].b) + i128(x[size_t(i)]) * b.b, "herm");
            }
        if (y[size_t(i)] != 0)
            for (int j = 0; j < m_; ++j) {
                const QuadInt& b = zbasis_[size_t(i)][size_t(j)];
                v[size_t(j)].a = checked_cast(i128(v[size_t(j)].a) + i128(y[size_t(i)]) * b.a, "herm");
                v[size_t(j)].b = checked_cast(i128(v[size_t(j)].b) + i128(y[size_t(i)]) * b.b, "herm");
            }
    }
    QuadInt acc{0, 0};
    for (int j = 0; j < m_; ++j) {
        if (u[size_t(j)].is_zero()) continue;
        for (int l = 0; l < m_; ++l) {
            if (v[size_t(l)].is_zero()) continue;
            QuadInt t = k_.mul(k_.mul(u[size_t(j)], k_.conj(v[size_t(l)])), gram_[size_t(j)][size_t(l)]);
            acc = acc + t;
        }
    }
    return {Rational(acc.a) * scale_, Rational(acc.b) * scale_};
}

Rational HermLattice::qvalue(const std::vector<i64>& x) const {
    QuadRat h = herm(x, x);
    if (!h.b.is_zero()) throw std::logic_error("qvalue: norm not rational");
    return h.a;
}

void HermLattice::build_trace_gram() {
    int n = 2 * m_;
    tgram_.assign(size_t(n), std::vector<i64>(size_t(n), 0));
    for (int i = 0; i < n; ++i) {
        std::vector<i64> ei = std::vector<i64>(size_t(n), 0), ej(size_t(n), 0);
        ei[size_t(i)] = 1;
        for (int j = 0; j < n; ++j) {
            ej.assign(size_t(n), 0);
            ej[size_t(j)] = 1;
            QuadRat h = herm(ei, ej);
            Rational t = k_.trace(h);
            if (!t.is_integer())
                throw std::domain_error("HermLattice: trace form is not integral");
            tgram_[size_t(i)][size_t(j)] = t.num();
        }
        if (tgram_[size_t(i)][size_t(i)] % 2 != 0)
            throw std::domain_error("HermLattice: trace form diagonal not even");
    }
}

std::pair<int, int> HermLattice::signature() const {
    auto [p, q] = symmetric_inertia(tgram_);
    if (p % 2 || q % 2) throw std::logic_error("signature: odd trace-form inertia");
    return {p / 2, q / 2};
}

bool HermLattice::is_positive_definite() const {
    auto [p, q] = signature();
    return q == 0;
}

Rational HermLattice::det_hermitian() const {
    // Gaussian elimination over k
    std::vector<std::vector<QuadRat>> A = std::vector<std::vector<QuadRat>>(size_t(m_), std::vector<QuadRat>(size_t(m_)));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j)
            A[size_t(i)][size_t(j)] = k_.to_rat(gram_[size_t(i)][size_t(j)]);
    QuadRat det{Rational(1), Rational(0)};
    for (int c = 0; c < m_; ++c) {
        int p = -1;
        for (int r = c; r < m_; ++r)
            if (!A[size_t(r)][size_t(c)].is_zero()) { p = r; break; }
        if (p < 0) return Rational(0);
        if (p != c) {
            std::swap(A[size_t(c)], A[size_t(p)]);
            det = {-det.a, -det.b};
        }
        det = k_.mul(det, A[size_t(c)][size_t(c)]);
        QuadRat inv = k_.inv(A[size_t(c)][size_t(c)]);
        for (int r = c + 1; r < m_; ++r) {
            if (A[size_t(r)][size_t(c)].is_zero()) continue;
            QuadRat f = k_.mul(A[size_t(r)][size_t(c)], inv);
            for (int j = c; j < m_; ++j)
                A[size_t(r)][size_t(j)] =
                    A[size_t(r)][size_t(j)] - k_.mul(f, A[size_t(c)][size_t(j)]);
        }
    }
    if (!det.b.is_zero()) throw std::logic_error("det_hermitian: determinant not rational");
    Rational s(1);
    for (int i = 0; i < m_; ++i) s *= scale_;
    return det.a * s;
}

const DiscModule& HermLattice::disc() const {
    if (!disc_) disc_.emplace(tgram_);
    return *disc_;
}

bool HermLattice::is_selfdual() const {
    i128 dm = 1;
    for (int i = 0; i < m_; ++i) dm *= k_.D();
    return i128(disc().order()) == dm;
}

HermLattice HermLattice::direct_sum(const HermLattice& other) const {
    if (k_.D() != other.k_.D()) throw std::domain_error("direct_sum: field mismatch");
    if (!(scale_ == other.scale_)) throw std::domain_error("direct_sum: scale mismatch");
    int m = m_ + other.m_;
    std::vector<std::vector<QuadInt>> g = std::vector<std::vector<QuadInt>>(size_t(m), std::vector<QuadInt>(size_t(m), {0, 0}));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) g[size_t(i)][size_t(j)] = gram_[size_t(i)][size_t(j)];
    for (int i = 0; i < other.m_; ++i)
        for (int j = 0; j < other.m_; ++j)
            g[size_t(m_ + i)][size_t(m_ + j)] = other.gram_[size_t(i)][size_t(j)];
    return HermLattice(k_, g, scale_);
}

HermLattice HermLattice::ideal_twist(const QuadIdeal& I) const {
    // generators alpha * b for alpha in the Z-basis of I and b in zbasis_
    auto igens = k_.ideal_zbasis(I);
    std::vector<std::vector<i64>> cols;
    for (const auto& alpha : igens) {
        for (const auto& b : zbasis_) {
            // alpha*b in ambient Z-coordinates (e_j, pi e_j)
            std::vector<i64> col = std::vector<i64>(size_t(2 * m_), 0);
            for (int j = 0; j < m_; ++j) {
                QuadInt c = k_.mul(alpha, b[size_t(j)]);
                col[size_t(j)] = c.a;
                col[size_t(m_ + j)] = c.b;
            }
            cols.push_back(col);
        }
    }
    auto basis = hnf_basis(2 * m_, cols);
    HermLattice out = *this;
    out.zbasis_.clear();
    for (int i = 0; i < 2 * m_; ++i) {
        std::vector<QuadInt> v = std::vector<QuadInt>(size_t(m_));
        for (int j = 0; j < m_; ++j)
            v[size_t(j)] = QuadInt{basis[size_t(i)][size_t(j)], basis[size_t(i)][size_t(m_ + j)]};
        out.zbasis_.push_back(v);
    }
    out.scale_ = scale_ / Rational(I.norm());
    out.disc_.reset();
    out.build_trace_gram();
    return out;
}

HermLattice HermLattice::ramified_twist(i64 Q) const {
    if (Q <= 0 || k_.D() % Q != 0) throw std::domain_error("ramified_twist: Q must divide D");
    if (!is_selfdual()) throw std::domain_error("ramified_twist: lattice must be self-dual");
    if (Q == 1) return *this;
    return ideal_twist(k_.ramified_product(Q));
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

namespace {

// Shared enumeration core: all nonzero integer x with 0 < (1/2) x^T A x <= bound,
// A a positive symmetric rational matrix.  The visitor receives x and the
// integer value x^T (M A) x, where M clears all denominators of A.
void enumerate_core(const std::vector<std::vector<Rational>>& A, const Rational& bound,
                    i64& M_out,
                    const std::function<void(const std::vector<i64>&, i64)>& visit) {
    int n = int(A.size());
    if (bound.sign() < 0) {
        M_out = 1;
        return;
    }
    i64 M = 1;
    for (auto& row : A)
        for (auto& v : row) M = std::lcm(M, v.den());
    M_out = M;
    std::vector<std::vector<i64>> Gi(size_t(n), std::vector<i64>(size_t(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = A[size_t(i)][size_t(j)] * Rational(M);
            Gi[size_t(i)][size_t(j)] = v.num();
        }
    // acceptance: x^T Gi x * bound.den <= 2 M bound.num
    i128 lim = i128(2) * M * bound.num();
    i64 bden = bound.den();

    // LDL^T in doubles for the tree bounds
    std::vector<std::vector<double>> a(size_t(n), std::vector<double>(size_t(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[size_t(i)][size_t(j)] = A[size_t(i)][size_t(j)].to_double();
    std::vector<std::vector<double>> u(size_t(n), std::vector<double>(size_t(n), 0.0));
    std::vector<double> d(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j)
            a[size_t(i)][size_t(i)] -= d[size_t(j)] * u[size_t(j)][size_t(i)] * u[size_t(j)][size_t(i)];
        d[size_t(i)] = a[size_t(i)][size_t(i)];
        if (d[size_t(i)] <= 0) throw std::domain_error("enumerate: form not positive definite");
        for (int k = i + 1; k < n; ++k) {
            double v = a[size_t(i)][size_t(k)];
            for (int j = 0; j < i; ++j)
                v -= d[size_t(j)] * u[size_t(j)][size_t(i)] * u[size_t(j)][size_t(k)];
            u[size_t(i)][size_t(k)] = v / d[size_t(i)];
        }
        u[size_t(i)][size_t(i)] = 1;
    }

    double C = 2.0 * bound.to_double() * (1.0 + 1e-9) + 1e-9;
    std::vector<i64> x(size_t(n), 0);
    std::function<void(int, double)> rec = [&](int i, double used) {
        if (i < 0) {
            i128 q2 = 0;
            for (int r = 0; r < n; ++r) {
                if (x[size_t(r)] == 0) continue;
                i128 row = 0;
                for (int c = 0; c < n; ++c) row += i128(Gi[size_t(r)][size_t(c)]) * x[size_t(c)];
                q2 += i128(x[size_t(r)]) * row;
            }
            if (q2 > 0 && q2 * bden <= lim) visit(x, checked_cast(q2, "enumerate"));
            return;
        }
        double c = 0;
        for (int j = i + 1; j < n; ++j) c += u[size_t(i)][size_t(j)] * double(x[size_t(j)]);
        double rad = std::sqrt(std::max(0.0, (C - used) / d[size_t(i)]));
        i64 lo = i64(std::ceil(-c - rad - 1e-9));
        i64 hi = i64(std::floor(-c + rad + 1e-9));
        for (i64 v = lo; v <= hi; ++v) {
            x[size_t(i)] = v;
            double vc = double(v) + c;
            rec(i - 1, used + d[size_t(i)] * vc * vc);
        }
        x[size_t(i)] = 0;
    };
    rec(n - 1, 0.0);
}

std::vector<std::vector<Rational>> to_rational_matrix(const IMat& G) {
    int n = int(G.size());
    std::vector<std::vector<Rational>> A(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[size_t(i)][size_t(j)] = Rational(G[size_t(i)][size_t(j)]);
    return A;
}

}  // namespace

std::vector<std::pair<std::vector<i64>, Rational>> HermLattice::enumerate_gram(
    const std::vector<std::vector<Rational>>& A, const Rational& bound) const {
    std::vector<std::pair<std::vector<i64>, Rational>> out;
    i64 M = 1;
    enumerate_core(A, bound, M,
                   [&](const std::vector<i64>& x, i64 q2) { out.emplace_back(x, Rational(q2, 2 * M)); });
    return out;
}

std::vector<std::pair<std::vector<i64>, Rational>> HermLattice::short_vectors(
    const Rational& bound) const {
    if (!is_positive_definite())
        throw std::domain_error("short_vectors: lattice must be positive definite");
    return enumerate_gram(to_rational_matrix(tgram_), bound);
}

std::vector<std::pair<std::vector<i64>, Rational>> HermLattice::short_vectors_naive(
    const Rational& bound) const {
    if (!is_positive_definite())
        throw std::domain_error("short_vectors_naive: lattice must be positive definite");
    int n = 2 * m_;
    auto A = to_rational_matrix(tgram_);
    auto Ainv = rational_matrix_inverse(A);
    // |x_i| <= sqrt(2B * (A^{-1})_{ii})
    std::vector<i64> box = std::vector<i64>(size_t(n));
    for (int i = 0; i < n; ++i) {
        double b = 2.0 * bound.to_double() * Ainv[size_t(i)][size_t(i)].to_double();
        box[size_t(i)] = i64(std::floor(std::sqrt(std::max(0.0, b)) + 1e-6)) + 1;
    }
    std::vector<std::pair<std::vector<i64>, Rational>> out;
    std::vector<i64> x = std::vector<i64>(size_t(n));
    for (int i = 0; i < n; ++i) x[size_t(i)] = -box[size_t(i)];
    while (true) {
        bool zero = true;
        for (auto v : x)
            if (v) zero = false;
        if (!zero) {
            Rational s(0);
            for (int i = 0; i < n; ++i) {
                if (x[size_t(i)] == 0) continue;
                for (int j = 0; j < n; ++j) {
                    if (x[size_t(j)] == 0) continue;
                    s += Rational(x[size_t(i)]) * A[size_t(i)][size_t(j)] * Rational(x[size_t(j)]);
                }
            }
            s /= Rational(2);
            if (s.sign() > 0 && s <= bound) out.emplace_back(x, s);
        }
        int i = 0;
        while (i < n && x[size_t(i)] == box[size_t(i)]) {
            x[size_t(i)] = -box[size_t(i)];
            ++i;
        }
        if (i == n) break;
        ++x[size_t(i)];
    }
    return out;
}

i64 HermLattice::ThetaTable::rep(const Rational& m, i64 coset) const {
    Rational key = m * Rational(level);
    if (!key.is_integer()) return 0;
    i64 ml = key.num();
    if (ml < 0 || ml > prec * level || coset < 0 || coset >= order) return 0;
    return flat[size_t(ml * order + coset)];
}

std::vector<std::pair<std::pair<i64, i64>, i64>> HermLattice::ThetaTable::nonzero() const {
    std::vector<std::pair<std::pair<i64, i64>, i64>> out;
    for (i64 ml = 0; ml <= prec * level; ++ml)
        for (i64 c = 0; c < order; ++c) {
            i64 v = flat[size_t(ml * order + c)];
            if (v) out.push_back({{ml, c}, v});
        }
    return out;
}

HermLattice::ThetaTable HermLattice::theta_coeffs(i64 prec) const {
    if (!is_positive_definite())
        throw std::domain_error("theta_coeffs: lattice must be positive definite");
    const DiscModule& A = disc();
    ThetaTable T;
    T.level = A.level();
    T.prec = prec;
    T.order = A.order();
    T.flat.assign(size_t((prec * T.level + 1) * T.order), 0);
    T.flat[0] = 1;  // the zero vector
    int n = 2 * m_;
    // dual vectors x = G^{-1} y, Q(x) = (1/2) y^T G^{-1} y
    auto Ginv = rational_matrix_inverse(to_rational_matrix(tgram_));
    i64 M = 1;
    enumerate_core(Ginv, Rational(prec), M, [&](const std::vector<i64>& y, i64 q2) {
        // q = q2 / (2M); the table key is q * level
        i128 num = i128(q2) * T.level;
        if (num % (2 * M)) throw std::logic_error("theta_coeffs: level mismatch");
        i64 ml = checked_cast(num / (2 * M), "theta");
        i64 coset = A.coset_of_pairing_vector(y);
        T.flat[size_t(ml * T.order + coset)]++;
    });
    (void)n;
    return T;
}

i64 HermLattice::rep_number(const Rational& m, i64 coset) const {
    if (m.sign() < 0) return 0;
    if (m.is_zero()) return coset == 0 ? 1 : 0;
    i64 prec = m.floor() + 1;
    return theta_coeffs(prec).rep(m, coset);
}

std::vector<i64> HermLattice::scalar_theta(i64 prec) const {
    if (!is_positive_definite())
        throw std::domain_error("scalar_theta: lattice must be positive definite");
    std::vector<i64> out = std::vector<i64>(size_t(prec + 1), 0);
    out[0] = 1;
    i64 M = 1;
    enumerate_core(to_rational_matrix(tgram_), Rational(prec), M,
                   [&](const std::vector<i64>&, i64 q2) {
                       if (q2 % (2 * M) == 0) out[size_t(q2 / (2 * M))]++;
                   });
    return out;
}

// ---------------------------------------------------------------------------
// isometries
// ---------------------------------------------------------------------------

namespace {

struct IsoSearch {
    const HermLattice* src;
    const HermLattice* dst;
    int n;
    std::vector<std::vector<i64>> targets;  // chosen images
    // candidate pools per basis index: vectors of matching norm in dst
    std::vector<std::vector<std::vector<i64>>> pools;
    std::vector<std::vector<QuadRat>> need;  // required hermitian products src_i . src_j
    i64 count = 0;
    bool stop_at_first = false;
    bool found = false;

    bool place(int i) {
        if (i == n) {
            ++count;
            found = true;
            return stop_at_first;
        }
        for (const auto& w : pools[size_t(i)]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                QuadRat h = dst->herm(w, targets[size_t(j)]);
                if (!(h == need[size_t(i)][size_t(j)])) ok = false;
            }
            if (!ok) continue;
            targets[size_t(i)] = w;
            if (place(i + 1)) return true;
        }
        return false;
    }
};

i64 isometry_count(const HermLattice& src, const HermLattice& dst, bool stop_at_first) {
    if (src.field().D() != dst.field().D() || src.rank() != dst.rank()) return 0;
    int n = src.zrank();
    IsoSearch S;
    S.src = &src;
    S.dst = &dst;
    S.n = n;
    S.targets.assign(size_t(n), {});
    S.stop_at_first = stop_at_first;
    S.need.assign(size_t(n), std::vector<QuadRat>(size_t(n)));
    std::vector<std::vector<i64>> basis;
    for (int i = 0; i < n; ++i) {
        std::vector<i64> e = std::vector<i64>(size_t(n), 0);
        e[size_t(i)] = 1;
        basis.push_back(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S.need[size_t(i)][size_t(j)] = src.herm(basis[size_t(i)], basis[size_t(j)]);
    // pools: vectors in dst with the right norm
    for (int i = 0; i < n; ++i) {
        Rational norm = src.qvalue(basis[size_t(i)]);
        std::vector<std::vector<i64>> pool;
        for (auto& [w, q] : dst.short_vectors(norm))
            if (q == norm) pool.push_back(w);
        if (pool.empty()) return 0;
        S.pools.push_back(std::move(pool));
    }
    S.place(0);
    return stop_at_first ? (S.found ? 1 : 0) : S.count;
}

}  // namespace

i64 HermLattice::aut_count() const { return isometry_count(*this, *this, false); }

bool HermLattice::is_isometric_to(const HermLattice& other) const {
    // basis-independent prechecks: discriminant-module order and signature
    if (disc().order() != other.disc().order()) return false;
    if (signature() != other.signature()) return false;
    return isometry_count(*this, other, true) > 0;
}

}  // namespace cmarith
