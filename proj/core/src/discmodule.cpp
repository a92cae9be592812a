#include "cmarith/discmodule.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmarith {

IMat identity_matrix(int n) {
    IMat I = IMat(size_t(n), std::vector<i64>(size_t(n), 0));
    for (int i = 0; i < n; ++i) I[size_t(i)][size_t(i)] = 1;
    return I;
}

IMat mat_mul(const IMat& A, const IMat& B) {
    size_t n = A.size(), k = B.size(), m = B[0].size();
    IMat C(n, std::vector<i64>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                C[i][j] = checked_cast(i128(C[i][j]) + i128(A[i][l]) * B[l][j], "mat_mul");
        }
    return C;
}

SmithNF smith_normal_form(const IMat& M) {
    int n = int(M.size()), m = int(M[0].size());
    IMat S = M;
    IMat U = identity_matrix(n), V = identity_matrix(m);

    auto row_op = [&](int i, int j, i64 q) {  // row_i -= q*row_j
        for (int c = 0; c < m; ++c)
            S[size_t(i)][size_t(c)] =
                checked_cast(i128(S[size_t(i)][size_t(c)]) - i128(q) * S[size_t(j)][size_t(c)], "snf");
        for (int c = 0; c < n; ++c)
            U[size_t(i)][size_t(c)] =
                checked_cast(i128(U[size_t(i)][size_t(c)]) - i128(q) * U[size_t(j)][size_t(c)], "snf");
    };
    auto col_op = [&](int i, int j, i64 q) {  // col_i -= q*col_j
        for (int r = 0; r < n; ++r)
            S[size_t(r)][size_t(i)] =
                checked_cast(i128(S[size_t(r)][size_t(i)]) - i128(q) * S[size_t(r)][size_t(j)], "snf");
        for (int r = 0; r < m; ++r)
            V[size_t(r)][size_t(i)] =
                checked_cast(i128(V[size_t(r)][size_t(i)]) - i128(q) * V[size_t(r)][size_t(j)], "snf");
    };
    auto row_swap = [&](int i, int j) {
        std::swap(S[size_t(i)], S[size_t(j)]);
        std::swap(U[size_t(i)], U[size_t(j)]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(S[size_t(r)][size_t(i)], S[size_t(r)][size_t(j)]);
        for (int r = 0; r < m; ++r) std::swap(V[size_t(r)][size_t(i)], V[size_t(r)][size_t(j)]);
    };
    auto row_negate = [&](int i) {
        for (int c = 0; c < m; ++c) S[size_t(i)][size_t(c)] = -S[size_t(i)][size_t(c)];
        for (int c = 0; c < n; ++c) U[size_t(i)][size_t(c)] = -U[size_t(i)][size_t(c)];
    };

    int t = std::min(n, m);
    for (int k = 0; k < t; ++k) {
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = k; i < n; ++i)
            for (int j = k; j < m; ++j) {
                i64 v = S[size_t(i)][size_t(j)];
                if (v != 0 && (best == 0 || std::abs(v) < best)) {
                    best = std::abs(v);
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != k) row_swap(k, pi);
        if (pj != k) col_swap(k, pj);
        bool again = true;
        while (again) {
            again = false;
            for (int i = k + 1; i < n; ++i) {
                if (S[size_t(i)][size_t(k)] == 0) continue;
                i64 q = S[size_t(i)][size_t(k)] / S[size_t(k)][size_t(k)];
                row_op(i, k, q);
                if (S[size_t(i)][size_t(k)] != 0) {
                    row_swap(k, i);
                    again = true;
                }
            }
            if (again) continue;
            for (int j = k + 1; j < m; ++j) {
                if (S[size_t(k)][size_t(j)] == 0) continue;
                i64 q = S[size_t(k)][size_t(j)] / S[size_t(k)][size_t(k)];
                col_op(j, k, q);
                if (S[size_t(k)][size_t(j)] != 0) {
                    col_swap(k, j);
                    again = true;
                }
            }
        }
        if (S[size_t(k)][size_t(k)] < 0) row_negate(k);
    }
    // divisibility pass: ensure d_k | d_{k+1}
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k + 1 < t; ++k) {
            i64 a = S[size_t(k)][size_t(k)], b = S[size_t(k + 1)][size_t(k + 1)];
            if (a == 0 || b == 0 || b % a == 0) continue;
            changed = true;
            // move b into the k-th column, then clear the 2x2 block by gcd steps
            col_op(k, k + 1, -1);
            bool again = true;
            while (again) {
                again = false;
                i64 skk = S[size_t(k)][size_t(k)];
                i64 s1k = S[size_t(k + 1)][size_t(k)];
                if (s1k != 0) {
                    i64 q = s1k / skk;
                    row_op(k + 1, k, q);
                    if (S[size_t(k + 1)][size_t(k)] != 0) {
                        row_swap(k, k + 1);
                        again = true;
                        continue;
                    }
                }
                i64 sk1 = S[size_t(k)][size_t(k + 1)];
                if (sk1 != 0) {
                    i64 q = sk1 / S[size_t(k)][size_t(k)];
                    col_op(k + 1, k, q);
                    if (S[size_t(k)][size_t(k + 1)] != 0) {
                        col_swap(k, k + 1);
                        again = true;
                    }
                }
            }
            if (S[size_t(k)][size_t(k)] < 0) row_negate(k);
            if (S[size_t(k + 1)][size_t(k + 1)] < 0) row_negate(k + 1);
        }
    }
    return {U, V, S};
}

// Gauss-Jordan inverse over the rationals.
std::vector<std::vector<Rational>> rational_matrix_inverse(const std::vector<std::vector<Rational>>& M) {
    int n = int(M.size());
    std::vector<std::vector<Rational>> A = std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(2 * n), Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[size_t(i)][size_t(j)] = M[size_t(i)][size_t(j)];
        A[size_t(i)][size_t(n + i)] = Rational(1);
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!A[size_t(r)][size_t(c)].is_zero()) { p = r; break; }
        if (p < 0) throw std::domain_error("rational_inverse: singular matrix");
        std::swap(A[size_t(c)], A[size_t(p)]);
        Rational d = A[size_t(c)][size_t(c)];
        for (int j = 0; j < 2 * n; ++j) A[size_t(c)][size_t(j)] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == c || A[size_t(r)][size_t(c)].is_zero()) continue;
            Rational f = A[size_t(r)][size_t(c)];
            for (int j = 0; j < 2 * n; ++j) A[size_t(r)][size_t(j)] -= f * A[size_t(c)][size_t(j)];
        }
    }
    std::vector<std::vector<Rational>> R = std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R[size_t(i)][size_t(j)] = A[size_t(i)][size_t(n + j)];
    return R;
}

IMat unimodular_inverse(const IMat& U) {
    int n = int(U.size());
    std::vector<std::vector<Rational>> M = std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[size_t(i)][size_t(j)] = Rational(U[size_t(i)][size_t(j)]);
    auto R = rational_matrix_inverse(M);
    IMat out = IMat(size_t(n), std::vector<i64>(size_t(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!R[size_t(i)][size_t(j)].is_integer())
                throw std::domain_error("unimodular_inverse: matrix not unimodular");
            out[size_t(i)][size_t(j)] = R[size_t(i)][size_t(j)].num();
        }
    return out;
}

std::pair<int, int> symmetric_inertia(const IMat& G) {
    int n = int(G.size());
    std::vector<std::vector<Rational>> A = std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[size_t(i)][size_t(j)] = Rational(G[size_t(i)][size_t(j)]);
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (A[size_t(k)][size_t(k)].is_zero()) {
            int s = -1;
            for (int r = k + 1; r < n; ++r)
                if (!A[size_t(r)][size_t(k)].is_zero()) { s = r; break; }
            if (s >= 0) {
                // congruence transformation: row_k += row_s, col_k += col_s
                for (int c = 0; c < n; ++c) A[size_t(k)][size_t(c)] += A[size_t(s)][size_t(c)];
                for (int r = 0; r < n; ++r) A[size_t(r)][size_t(k)] += A[size_t(r)][size_t(s)];
            }
        }
        Rational d = A[size_t(k)][size_t(k)];
        if (d.is_zero()) {
            // row k is zero within the remaining block: degenerate
            bool all_zero = true;
            for (int c = k; c < n; ++c)
                if (!A[size_t(k)][size_t(c)].is_zero()) all_zero = false;
            if (all_zero) throw std::domain_error("symmetric_inertia: degenerate form");
            throw std::logic_error("symmetric_inertia: pivot not found");
        }
        if (d.sign() > 0)
            ++pos;
        else
            ++neg;
        for (int r = k + 1; r < n; ++r) {
            if (A[size_t(r)][size_t(k)].is_zero()) continue;
            Rational f = A[size_t(r)][size_t(k)] / d;
            for (int c = k; c < n; ++c) A[size_t(r)][size_t(c)] -= f * A[size_t(k)][size_t(c)];
        }
        for (int c = k + 1; c < n; ++c) A[size_t(k)][size_t(c)] = Rational(0);
    }
    return {pos, neg};
}

DiscModule::DiscModule(const IMat& gram) : G_(gram) {
    n_ = int(gram.size());
    for (int i = 0; i < n_; ++i) {
        if (int(gram[size_t(i)].size()) != n_)
            throw std::domain_error("DiscModule: square matrix required");
        if (gram[size_t(i)][size_t(i)] % 2 != 0)
            throw std::domain_error("DiscModule: even lattice required");
        for (int j = 0; j < n_; ++j)
            if (gram[size_t(i)][size_t(j)] != gram[size_t(j)][size_t(i)])
                throw std::domain_error("DiscModule: symmetric matrix required");
    }

    auto snf = smith_normal_form(G_);
    U_ = snf.U;
    Uinv_ = unimodular_inverse(U_);
    order_ = 1;
    for (int i = 0; i < n_; ++i) {
        i64 d = snf.S[size_t(i)][size_t(i)];
        if (d == 0) throw std::domain_error("DiscModule: degenerate Gram matrix");
        if (d < 0) d = -d;
        ords_.push_back(d);
        order_ = checked_cast(i128(order_) * d, "DiscModule order");
        if (order_ > 2000000) throw std::domain_error("DiscModule: order too large");
    }

    {
        std::vector<std::vector<Rational>> M = std::vector<std::vector<Rational>>(size_t(n_), std::vector<Rational>(size_t(n_), Rational(0)));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) M[size_t(i)][size_t(j)] = Rational(G_[size_t(i)][size_t(j)]);
        Ginv_ = rational_matrix_inverse(M);
    }

    reps_.resize(size_t(order_));
    qvals_.resize(size_t(order_));
    level_ = 1;
    for (i64 idx = 0; idx < order_; ++idx) {
        auto c = idx_to_coords(idx);
        std::vector<i64> y = std::vector<i64>(size_t(n_), 0);
        for (int i = 0; i < n_; ++i) {
            if (c[size_t(i)] == 0) continue;
            for (int r = 0; r < n_; ++r)
                y[size_t(r)] = checked_cast(
                    i128(y[size_t(r)]) + i128(Uinv_[size_t(r)][size_t(i)]) * c[size_t(i)],
                    "DiscModule rep");
        }
        reps_[size_t(idx)] = y;
        Rational q(0);
        for (int i = 0; i < n_; ++i) {
            if (y[size_t(i)] == 0) continue;
            for (int j = 0; j < n_; ++j) {
                if (y[size_t(j)] == 0) continue;
                q += Rational(y[size_t(i)]) * Ginv_[size_t(i)][size_t(j)] * Rational(y[size_t(j)]);
            }
        }
        q = (q / Rational(2)).mod1();
        qvals_[size_t(idx)] = q;
        level_ = std::lcm(level_, q.den());
    }
    if (coset_of_pairing_vector(std::vector<i64>(size_t(n_), 0)) != 0)
        throw std::logic_error("DiscModule: zero coset index mismatch");
}

std::vector<i64> DiscModule::idx_to_coords(i64 idx) const {
    std::vector<i64> c = std::vector<i64>(size_t(n_));
    for (int i = 0; i < n_; ++i) {
        c[size_t(i)] = idx % ords_[size_t(i)];
        idx /= ords_[size_t(i)];
    }
    return c;
}

i64 DiscModule::coords_to_idx(const std::vector<i64>& c) const {
    i64 idx = 0;
    for (int i = n_ - 1; i >= 0; --i) {
        i64 d = ords_[size_t(i)];
        i64 v = ((c[size_t(i)] % d) + d) % d;
        idx = idx * d + v;
    }
    return idx;
}

Rational DiscModule::pairing(i64 idx, i64 jdx) const {
    const auto& y = reps_[size_t(idx)];
    const auto& z = reps_[size_t(jdx)];
    Rational p(0);
    for (int i = 0; i < n_; ++i) {
        if (y[size_t(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (z[size_t(j)] == 0) continue;
            p += Rational(y[size_t(i)]) * Ginv_[size_t(i)][size_t(j)] * Rational(z[size_t(j)]);
        }
    }
    return p.mod1();
}

i64 DiscModule::add(i64 idx, i64 jdx) const {
    auto a = idx_to_coords(idx);
    auto b = idx_to_coords(jdx);
    for (int i = 0; i < n_; ++i) a[size_t(i)] += b[size_t(i)];
    return coords_to_idx(a);
}

i64 DiscModule::neg(i64 idx) const {
    auto a = idx_to_coords(idx);
    for (auto& v : a) v = -v;
    return coords_to_idx(a);
}

i64 DiscModule::smul(i64 c, i64 idx) const {
    auto a = idx_to_coords(idx);
    for (auto& v : a) v = checked_cast(i128(v) * c, "DiscModule smul");
    return coords_to_idx(a);
}

i64 DiscModule::element_order(i64 idx) const {
    auto c = idx_to_coords(idx);
    i64 o = 1;
    for (int i = 0; i < n_; ++i) {
        if (c[size_t(i)] == 0) continue;
        i64 d = ords_[size_t(i)];
        o = std::lcm(o, d / std::gcd(d, c[size_t(i)]));
    }
    return o;
}

i64 DiscModule::coset_of_pairing_vector(const std::vector<i64>& y) const {
    std::vector<i64> c = std::vector<i64>(size_t(n_), 0);
    for (int i = 0; i < n_; ++i)
        for (int r = 0; r < n_; ++r)
            c[size_t(i)] = checked_cast(
                i128(c[size_t(i)]) + i128(U_[size_t(i)][size_t(r)]) * y[size_t(r)], "coset_of");
    return coords_to_idx(c);
}

std::vector<i64> DiscModule::pairing_vector(i64 idx) const { return reps_[size_t(idx)]; }

std::pair<double, double> DiscModule::gauss_sum() const {
    double re = 0, im = 0;
    for (i64 i = 0; i < order_; ++i) {
        double a = 2 * M_PI * qvals_[size_t(i)].to_double();
        re += std::cos(a);
        im += std::sin(a);
    }
    return {re, im};
}

std::vector<std::vector<i64>> hnf_basis(int n, std::vector<std::vector<i64>> cols) {
    std::vector<std::vector<i64>> basis(static_cast<size_t>(n));
    for (int row = n - 1; row >= 0; --row) {
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
                        "hnf_basis");
                std::swap(cols[size_t(pivot)], cols[j]);
            }
        }
        if (pivot < 0) throw std::logic_error("hnf_basis: not full rank");
        if (cols[size_t(pivot)][size_t(row)] < 0)
            for (auto& v : cols[size_t(pivot)]) v = -v;
        basis[size_t(row)] = cols[size_t(pivot)];
        cols.erase(cols.begin() + pivot);
    }
    return basis;
}

}  // namespace cmarith
