// Small dense reference computations, independent of the library's sparse
// elimination and of its form-based complexes.
#pragma once

#include "hcx/presentations.hpp"

#include <vector>

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;  // row-major

inline int dense_rank(Dense m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Q f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Dense c(n, std::vector<Q>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

// Hochschild chains A^{(x)(n+1)} of an ungraded algebra, basis index in base dim.
struct Hoch {
    const hcx::Algebra& a;
    int d;
    explicit Hoch(const hcx::Algebra& alg) : a(alg), d(alg.dim()) {}

    int size(int n) const {
        int s = 1;
        for (int i = 0; i <= n; ++i) s *= d;
        return s;
    }
    std::vector<int> digits(int idx, int n) const {
        std::vector<int> w(n + 1);
        for (int i = n; i >= 0; --i) w[i] = idx % d, idx /= d;
        return w;
    }
    int index(const std::vector<int>& w) const {
        int idx = 0;
        for (int x : w) idx = idx * d + x;
        return idx;
    }
    // b : C_n -> C_{n-1}
    Dense b(int n) const {
        Dense m(size(n - 1), std::vector<Q>(size(n), 0));
        for (int j = 0; j < size(n); ++j) {
            auto w = digits(j, n);
            for (int i = 0; i < n; ++i)
                for (const auto& e : a.m(w[i], w[i + 1])) {
                    std::vector<int> u(w.begin(), w.begin() + i);
                    u.push_back(e.idx);
                    u.insert(u.end(), w.begin() + i + 2, w.end());
                    m[index(u)][j] += (i % 2 ? -1 : 1) * e.val;
                }
            for (const auto& e : a.m(w[n], w[0])) {
                std::vector<int> u{e.idx};
                u.insert(u.end(), w.begin() + 1, w.begin() + n);
                m[index(u)][j] += (n % 2 ? -1 : 1) * e.val;
            }
        }
        return m;
    }
    // 1 - t, t(a0..an) = (-1)^n (an, a0, ..., a_{n-1})
    Dense one_minus_t(int n) const {
        Dense m(size(n), std::vector<Q>(size(n), 0));
        for (int j = 0; j < size(n); ++j) {
            auto w = digits(j, n);
            m[j][j] += 1;
            std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
            m[index(w)][j] -= n % 2 ? -1 : 1;
        }
        return m;
    }
};

inline int hh_dim(const hcx::Algebra& a, int n) {
    Hoch h(a);
    int rb = n > 0 ? dense_rank(h.b(n)) : 0;
    return h.size(n) - rb - dense_rank(h.b(n + 1));
}

inline Dense hcat(const Dense& a, const Dense& b) {
    Dense c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i].insert(c[i].end(), b[i].begin(), b[i].end());
    return c;
}

// Connes' complex C^lambda = C / (1 - t). Since b(1 - t) = (1 - t) b', the
// rank of b on the quotient is rank [b | 1 - t] - rank(1 - t) in degree n - 1.
inline int hc_dim(const hcx::Algebra& a, int n) {
    Hoch h(a);
    auto bar_rank = [&](int m) {
        if (m == 0) return 0;
        Dense t = h.one_minus_t(m - 1);
        return dense_rank(hcat(h.b(m), t)) - dense_rank(t);
    };
    return h.size(n) - dense_rank(h.one_minus_t(n)) - bar_rank(n) - bar_rank(n + 1);
}

}  // namespace oracle
