#include "linalg.h"

namespace alg {

Mat mat_zero(const FieldDesc& fd, int rows, int cols) {
    return Mat(rows, Row(cols, FE::zero(fd)));
}

Mat mat_identity(const FieldDesc& fd, int n) {
    Mat m = mat_zero(fd, n, n);
    for (int i = 0; i < n; ++i) m[i][i] = FE::one(fd);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    const int r = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int c = k ? static_cast<int>(b[0].size()) : 0;
    if (r == 0) return {};
    const FieldDesc fd = a[0][0].field();
    Mat out = mat_zero(fd, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (int l = 0; l < c; ++l) out[i][l] = out[i][l] + a[i][j] * b[j][l];
        }
    return out;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    const int r = static_cast<int>(a.size());
    const int c = static_cast<int>(a[0].size());
    Mat out(c, Row(r, a[0][0]));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        FE inv = m[r][c].inv();
        for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            FE f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

Mat nullspace(const Mat& m, const FieldDesc& fd) {
    if (m.empty()) return {};
    Mat a = m;
    std::vector<int> piv = rref(a);
    const int cols = static_cast<int>(m[0].size());
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    Mat basis;
    for (int c = 0; c < cols; ++c) {
        if (is_piv[c]) continue;
        Row v(cols, FE::zero(fd));
        v[c] = FE::one(fd);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][c];
        basis.push_back(std::move(v));
    }
    rref(basis);
    return basis;
}

std::optional<Mat> mat_inverse(const Mat& m, const FieldDesc& fd) {
    const int n = static_cast<int>(m.size());
    Mat aug = mat_zero(fd, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = FE::one(fd);
    }
    std::vector<int> piv = rref(aug);
    if (static_cast<int>(piv.size()) != n || piv.back() != n - 1) return std::nullopt;
    Mat out = mat_zero(fd, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

FE mat_det(Mat m, const FieldDesc& fd) {
    const int n = static_cast<int>(m.size());
    FE det = FE::one(fd);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) { piv = r; break; }
        if (piv < 0) return FE::zero(fd);
        if (piv != c) { std::swap(m[c], m[piv]); det = -det; }
        det = det * m[c][c];
        FE inv = m[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            FE f = m[r][c] * inv;
            for (int j = c; j < n; ++j) m[r][j] = m[r][j] - f * m[c][j];
        }
    }
    return det;
}

// Polynomials over FE as coefficient vectors, low degree first.
using PolyV = std::vector<FE>;

static PolyV pv_mul(const PolyV& a, const PolyV& b, const FieldDesc& fd) {
    PolyV r(a.size() + b.size() - 1, FE::zero(fd));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

static PolyV pv_add(PolyV a, const PolyV& b, const FieldDesc& fd) {
    if (a.size() < b.size()) a.resize(b.size(), FE::zero(fd));
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
    return a;
}

// det of a matrix with polynomial entries by cofactor expansion (tiny n only).
static PolyV poly_det(const std::vector<std::vector<PolyV>>& m, const FieldDesc& fd) {
    const int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0];
    PolyV acc{FE::zero(fd)};
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<PolyV>> minor;
        for (int r = 1; r < n; ++r) {
            std::vector<PolyV> row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        PolyV term = pv_mul(m[0][j], poly_det(minor, fd), fd);
        if (j % 2 == 1)
            for (auto& t : term) t = -t;
        acc = pv_add(acc, term, fd);
    }
    return acc;
}

std::vector<FE> char_poly(const Mat& m, const FieldDesc& fd) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<PolyV>> e(n, std::vector<PolyV>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyV p{-m[i][j]};
            if (i == j) p.push_back(FE::one(fd));
            else p.push_back(FE::zero(fd));
            e[i][j] = p;
        }
    PolyV d = poly_det(e, fd);
    d.resize(n + 1, FE::zero(fd));
    return d;
}

bool same_row_space(Mat a, Mat b) {
    rref(a);
    rref(b);
    while (!a.empty()) {
        bool zero = true;
        for (const auto& x : a.back())
            if (!x.is_zero()) { zero = false; break; }
        if (zero) a.pop_back(); else break;
    }
    while (!b.empty()) {
        bool zero = true;
        for (const auto& x : b.back())
            if (!x.is_zero()) { zero = false; break; }
        if (zero) b.pop_back(); else break;
    }
    return a == b;
}

}  // namespace alg
