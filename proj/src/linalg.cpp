#include "shapo/linalg.hpp"

#include "shapo/util.hpp"

namespace shapo {

DenseMat dense_identity(int n) {
    DenseMat m(n, DenseVec(n));
    for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

DenseMat dense_mul(const DenseMat& a, const DenseMat& b) {
    const int n = (int)a.size(), k = (int)b.size(), c = k ? (int)b[0].size() : 0;
    DenseMat r(n, DenseVec(c));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < c; ++j) {
                if (b[l][j].is_zero()) continue;
                r[i][j] += a[i][l] * b[l][j];
            }
        }
    return r;
}

std::vector<int> rref(DenseMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int nr = (int)m.size(), nc = (int)m[0].size();
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int sel = row;
        while (sel < nr && m[sel][col].is_zero()) ++sel;
        if (sel == nr) continue;
        std::swap(m[sel], m[row]);
        Scalar inv = m[row][col].inverse();
        for (int j = col; j < nc; ++j)
            if (!m[row][j].is_zero()) m[row][j] *= inv;
        for (int r = 0; r < nr; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (int j = col; j < nc; ++j) {
                if (m[row][j].is_zero()) continue;
                m[r][j] -= f * m[row][j];
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(DenseMat m) { return (int)rref(m).size(); }

NullspaceResult nullspace(DenseMat m) {
    NullspaceResult res;
    if (m.empty()) return res;
    const int nc = (int)m[0].size();
    res.pivot_cols = rref(m);
    std::vector<int> pivot_row(nc, -1);
    for (std::size_t r = 0; r < res.pivot_cols.size(); ++r) pivot_row[res.pivot_cols[r]] = (int)r;
    for (int c = 0; c < nc; ++c) {
        if (pivot_row[c] >= 0) continue;
        DenseVec v(nc);
        v[c] = Scalar(1);
        for (int p = 0; p < nc; ++p)
            if (pivot_row[p] >= 0) v[p] = -m[pivot_row[p]][c];
        res.kernel.push_back(std::move(v));
    }
    return res;
}

DenseVec solve_unique(DenseMat a, DenseVec b, const char* what) {
    const int nr = (int)a.size();
    const int nc = nr ? (int)a[0].size() : 0;
    for (int i = 0; i < nr; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    DenseVec x(nc);
    int solved = 0;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == nc)
            throw math_error(std::string(what) + ": inconsistent linear system");
        x[pivots[r]] = a[r][nc];
        ++solved;
    }
    if (solved != nc)
        throw math_error(std::string(what) + ": underdetermined linear system");
    return x;
}

namespace {

// Clear denominators row by row; returns the polynomial matrix together with
// the scale of each row (aug rows get the same scale).
MultiPoly row_denominator_lcm(const DenseVec& row) {
    MultiPoly l = MultiPoly::constant(1);
    for (const Scalar& s : row) {
        if (s.is_zero() || s.den().is_one()) continue;
        MultiPoly g = poly_gcd(l, s.den());
        l = g.is_one() ? l * s.den() : l * exact_divide(s.den(), g);
    }
    return l;
}

} // namespace

InverseResult bareiss_inverse(const DenseMat& p) {
    const int n = (int)p.size();
    InverseResult out;
    if (n == 0) {
        out.det = Scalar(1);
        return out;
    }
    // Scale rows to polynomials: p = D^{-1} p', so p^{-1} = (p')^{-1} D.
    // Work on the augmented system [p' | D] in fraction-free form.
    std::vector<std::vector<MultiPoly>> a(n, std::vector<MultiPoly>(2 * n));
    Scalar row_scale_product(1);
    for (int i = 0; i < n; ++i) {
        MultiPoly di = row_denominator_lcm(p[i]);
        Scalar scale = Scalar::from_poly(di);
        row_scale_product *= scale;
        for (int j = 0; j < n; ++j) {
            Scalar v = p[i][j] * scale;
            if (!v.den().is_one())
                throw math_error("bareiss: row clearing failed");
            a[i][j] = v.num();
        }
        a[i][n + i] = di;
    }

    int sign = 1;
    MultiPoly prev = MultiPoly::constant(1);
    for (int k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a[i][k].is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) throw math_error("bareiss: singular matrix");
            std::swap(a[k], a[sel]);
            sign = -sign;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                MultiPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = prev.is_one() ? t : exact_divide(t, prev);
            }
            a[i][k] = MultiPoly();
        }
        prev = a[k][k];
    }
    // The left block is now diagonal, so row i reads a[i][i] * X_i = B_i.
    Scalar det_scaled = Scalar::from_poly(a[n - 1][n - 1]);
    if (sign < 0) det_scaled = -det_scaled;
    out.det = det_scaled / row_scale_product;
    out.inverse.assign(n, DenseVec(n));
    for (int i = 0; i < n; ++i) {
        Scalar diag = Scalar::from_poly(a[i][i]);
        for (int j = 0; j < n; ++j) {
            Scalar v = Scalar::from_poly(a[i][n + j]);
            if (!v.is_zero()) out.inverse[i][j] = v / diag;
        }
    }
    return out;
}

Scalar bareiss_det(const DenseMat& p) {
    const int n = (int)p.size();
    if (n == 0) return Scalar(1);
    std::vector<std::vector<MultiPoly>> a(n, std::vector<MultiPoly>(n));
    Scalar row_scale_product(1);
    for (int i = 0; i < n; ++i) {
        MultiPoly di = row_denominator_lcm(p[i]);
        Scalar scale = Scalar::from_poly(di);
        row_scale_product *= scale;
        for (int j = 0; j < n; ++j) {
            Scalar v = p[i][j] * scale;
            if (!v.den().is_one()) throw math_error("bareiss: row clearing failed");
            a[i][j] = v.num();
        }
    }
    int sign = 1;
    MultiPoly prev = MultiPoly::constant(1);
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k].is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a[i][k].is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) return Scalar();
            std::swap(a[k], a[sel]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = prev.is_one() ? t : exact_divide(t, prev);
            }
            a[i][k] = MultiPoly();
        }
        prev = a[k][k];
    }
    Scalar det = Scalar::from_poly(a[n - 1][n - 1]);
    if (sign < 0) det = -det;
    return det / row_scale_product;
}

} // namespace shapo
