#include "nd/matrix.hpp"

#include <algorithm>

namespace nd {

Rat dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw CheckError("dot: size mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const VecI& a, const VecI& b) {
    if (a.size() != b.size()) throw CheckError("dot: size mismatch");
    Int s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const VecI& a, const VecQ& b) {
    if (a.size() != b.size()) throw CheckError("dot: size mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

namespace {

// Bareiss over __int128 with overflow detection; returns false on overflow
// or when an entry does not fit, in which case the caller retries with mpz.
bool det_i128(const MatI& m, Int& out) {
    const size_t n = m.size();
    using I = __int128;
    std::vector<std::vector<I>> a(n, std::vector<I>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!m[i][j].fits_slong_p()) return false;
            a[i][j] = m[i][j].get_si();
        }
    I prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) {
                out = 0;
                return true;
            }
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                I t1, t2;
                if (__builtin_mul_overflow(a[i][j], a[k][k], &t1)) return false;
                if (__builtin_mul_overflow(a[i][k], a[k][j], &t2)) return false;
                I diff;
                if (__builtin_sub_overflow(t1, t2, &diff)) return false;
                a[i][j] = diff / prev;  // exact by the Bareiss invariant
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    I d = sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
    bool neg = d < 0;
    I mag = neg ? -d : d;
    unsigned long hi = static_cast<unsigned long>(mag >> 64);
    unsigned long lo = static_cast<unsigned long>(mag & static_cast<I>(~0ULL));
    out = Int(hi);
    out <<= 64;
    out += Int(lo);
    if (neg) out = -out;
    return true;
}

}  // namespace

Int det_int(MatI m) {
    const size_t n = m.size();
    if (n == 0) return Int(1);
    for (const auto& row : m)
        if (row.size() != n) throw CheckError("det_int: non-square matrix");
    if (n <= 8) {
        Int fast;
        if (det_i128(m, fast)) return fast;
    }

    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

Rat det_rat(const MatQ& m) {
    const size_t n = m.size();
    if (n == 0) return Rat(1);
    MatI mi(n, VecI(n));
    Rat scale(1);
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw CheckError("det_rat: non-square matrix");
        Int l(1);
        for (const auto& q : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (size_t j = 0; j < n; ++j) mi[i][j] = to_int(m[i][j] * Rat(l));
        scale *= Rat(l);
    }
    return Rat(det_int(std::move(mi))) / scale;
}

int rank_rat(MatQ m) {
    const size_t rows = m.size();
    if (rows == 0) return 0;
    const size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

std::optional<VecQ> solve_rat(MatQ a, VecQ b) {
    const size_t n = a.size();
    if (n == 0) return VecQ{};
    if (b.size() != n) throw CheckError("solve_rat: size mismatch");
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    VecQ x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::vector<VecQ> nullspace_rat(MatQ a) {
    if (a.empty()) return {};
    const size_t rows = a.size();
    const size_t cols = a[0].size();
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        Rat p = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        VecQ v(cols, Rat(0));
        v[free_c] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

VecI primitivize(VecI v) {
    Int g(0);
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

VecI primitive_integer_direction(const VecQ& v) {
    Int l(1);
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    VecI w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = to_int(v[i] * Rat(l));
    return primitivize(std::move(w));
}

HnfResult hnf(const MatI& a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    HnfResult res;
    res.h = a;
    res.u.assign(rows, VecI(rows, Int(0)));
    for (size_t i = 0; i < rows; ++i) res.u[i][i] = 1;

    auto row_op = [&](size_t dst, size_t src, const Int& f) {
        for (size_t j = 0; j < cols; ++j) res.h[dst][j] -= f * res.h[src][j];
        for (size_t j = 0; j < rows; ++j) res.u[dst][j] -= f * res.u[src][j];
    };

    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Euclidean reduction in column c until a single nonzero entry remains
        // among rows >= r.
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i) {
                if (res.h[i][c] == 0) continue;
                if (best == rows || cmp(abs(res.h[i][c]), abs(res.h[best][c])) < 0) best = i;
            }
            if (best == rows) break;
            std::swap(res.h[r], res.h[best]);
            std::swap(res.u[r], res.u[best]);
            bool others = false;
            for (size_t i = r + 1; i < rows; ++i) {
                if (res.h[i][c] == 0) continue;
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), res.h[i][c].get_mpz_t(), res.h[r][c].get_mpz_t());
                row_op(i, r, f);
                if (res.h[i][c] != 0) others = true;
            }
            if (!others) break;
        }
        if (r < rows && res.h[r][c] != 0) {
            if (res.h[r][c] < 0) {
                for (size_t j = 0; j < cols; ++j) res.h[r][j] = -res.h[r][j];
                for (size_t j = 0; j < rows; ++j) res.u[r][j] = -res.u[r][j];
            }
            for (size_t i = 0; i < r; ++i) {
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), res.h[i][c].get_mpz_t(), res.h[r][c].get_mpz_t());
                if (f != 0) row_op(i, r, f);
            }
            ++r;
        }
    }
    res.rank = static_cast<int>(r);
    return res;
}

MatI kernel_basis_int(const MatI& a) {
    if (a.empty()) return {};
    const size_t rows = a.size();
    const size_t cols = a[0].size();
    // Kernel of a = left kernel of a^T; the U-rows matching zero rows of
    // hnf(a^T) form a basis because U is unimodular.
    MatI at(cols, VecI(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) at[j][i] = a[i][j];
    HnfResult h = hnf(at);
    MatI basis;
    for (size_t i = h.rank; i < cols; ++i) basis.push_back(h.u[i]);
    return basis;
}

std::optional<VecI> solve_int(const MatI& a, const VecI& b) {
    if (a.empty()) return VecI{};
    const size_t rows = a.size();
    const size_t cols = a[0].size();
    if (b.size() != rows) throw CheckError("solve_int: size mismatch");
    // x^T * a^T = b^T; with U*a^T = H solve y*H = b^T and set x = U^T*y.
    MatI at(cols, VecI(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) at[j][i] = a[i][j];
    HnfResult h = hnf(at);

    VecI y(cols, Int(0));
    VecI residual = b;
    size_t row = 0;
    for (size_t c = 0; c < rows && row < static_cast<size_t>(h.rank); ++c) {
        if (h.h[row][c] == 0) continue;
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), residual[c].get_mpz_t(),
                    h.h[row][c].get_mpz_t());
        if (r != 0) return std::nullopt;
        y[row] = q;
        for (size_t j = c; j < rows; ++j) residual[j] -= q * h.h[row][j];
        ++row;
    }
    for (size_t j = 0; j < rows; ++j)
        if (residual[j] != 0) return std::nullopt;

    VecI x(cols, Int(0));
    for (size_t i = 0; i < cols; ++i)
        for (size_t k = 0; k < cols; ++k) x[i] += h.u[k][i] * y[k];
    return x;
}

}  // namespace nd
