#include "hcx/graded.hpp"

#include <sstream>

namespace hcx {

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size()) throw std::invalid_argument("koszul_sign: length mismatch");
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) s *= koszul_pair_sign(degrees[perm[i]], degrees[perm[j]]);
    return s;
}

int GradedSpace::dim(int n) const {
    auto it = comps.find(n);
    return it == comps.end() ? 0 : static_cast<int>(it->second.size());
}

SparseMatrix Complex::d(int n) const {
    auto it = diff.blocks.find(n);
    if (it != diff.blocks.end()) return it->second;
    return SparseMatrix(dim(n - 1), dim(n));
}

int Complex::homology_dim(int n) const { return hcx::homology_dim(d(n + 1), d(n)); }

int Complex::first_square_failure() const {
    for (const auto& [n, m] : diff.blocks) {
        if (!(d(n - 1) * m).is_zero()) return n;
    }
    return -1;
}

Complex tensor(const Complex& x, const Complex& y) {
    Complex z;
    z.diff.shift = -1;
    std::map<int, std::vector<std::pair<int, int>>> parts;  // degree -> (p, q) blocks
    for (const auto& [p, lx] : x.space.comps)
        for (const auto& [q, ly] : y.space.comps) {
            parts[p + q].emplace_back(p, q);
            auto& labels = z.space.comps[p + q];
            for (const auto& a : lx)
                for (const auto& b : ly) labels.push_back(a + "|" + b);
        }
    auto offset = [&](int n, int p) {
        int o = 0;
        for (auto [pp, qq] : parts[n]) {
            if (pp == p) return o;
            o += x.dim(pp) * y.dim(qq);
        }
        return -1;
    };
    for (const auto& [n, blocks] : parts) {
        if (!parts.count(n - 1)) continue;
        MatrixBuilder mb(z.dim(n - 1), z.dim(n));
        for (auto [p, q] : blocks) {
            int so = offset(n, p), dy = y.dim(q);
            if (x.dim(p - 1) > 0) {
                int to = offset(n - 1, p - 1);
                SparseMatrix dx = x.d(p);
                for (int j1 = 0; j1 < dx.cols(); ++j1)
                    for (const auto& e : dx.col(j1))
                        for (int i2 = 0; i2 < dy; ++i2) mb.add(to + e.idx * dy + i2, so + j1 * dy + i2, e.val);
            }
            if (y.dim(q - 1) > 0) {
                int to = offset(n - 1, p);
                int dy1 = y.dim(q - 1);
                SparseMatrix dyq = y.d(q);
                int sg = (p & 1) ? -1 : 1;
                for (int i1 = 0; i1 < x.dim(p); ++i1)
                    for (int j2 = 0; j2 < dyq.cols(); ++j2)
                        for (const auto& e : dyq.col(j2)) mb.add(to + i1 * dy1 + e.idx, so + i1 * dy + j2, sg * e.val);
            }
        }
        z.diff.blocks[n] = mb.build();
    }
    z.trusted_lo = x.trusted_lo + y.trusted_lo;
    z.trusted_hi = std::min(x.trusted_hi + y.trusted_lo, x.trusted_lo + y.trusted_hi);
    return z;
}

// ---------------------------------------------------------------- SuperComplex

void SuperComplex::resize(int cap_) {
    cap = cap_;
    for (int t = 0; t < 2; ++t) {
        dims[t].assign(cap + 1, 0);
        V[t].assign(cap + 1, SparseMatrix());
        H[t].assign(cap + 1, SparseMatrix());
    }
}

int SuperComplex::dim(int t, int n) const {
    if (n < 0 || n > cap) return 0;
    return dims[t][n];
}

std::string SuperComplex::check() const {
    auto shape_ok = [](const SparseMatrix& m, int r, int c) { return m.rows() == r && m.cols() == c; };
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) {
            if (n >= 1 && !shape_ok(V[t][n], dim(t, n - 1), dim(t, n))) return "V shape at " + std::to_string(n);
            if (n + s <= cap && !shape_ok(H[t][n], dim(1 - t, n + s), dim(t, n)))
                return "H shape at " + std::to_string(n);
        }
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) {
            std::ostringstream w;
            w << "(t=" << t << ",n=" << n << ")";
            if (n + 2 * s <= cap && !(H[1 - t][n + s] * H[t][n]).is_zero()) return "HH " + w.str();
            if (n >= 2 && !(V[t][n - 1] * V[t][n]).is_zero()) return "VV " + w.str();
            if (n >= 1 && n + s <= cap) {
                SparseMatrix a = H[t][n - 1] * V[t][n];
                SparseMatrix b = V[1 - t][n + s] * H[t][n];
                if (!(a + b).is_zero()) return "VH " + w.str();
            }
        }
    return "";
}

bool SuperMap::is_chain_map(const SuperComplex& src, const SuperComplex& tgt, std::string* why) const {
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= src.cap; ++n) {
            if (n >= 1) {
                SparseMatrix a = F[t][n - 1] * src.V[t][n];
                SparseMatrix b = tgt.V[t][n] * F[t][n];
                if (a != b) {
                    if (why) *why = "V at t=" + std::to_string(t) + " n=" + std::to_string(n);
                    return false;
                }
            }
            if (n + src.s <= src.cap) {
                SparseMatrix a = F[1 - t][n + src.s] * src.H[t][n];
                SparseMatrix b = tgt.H[t][n] * F[t][n];
                if (a != b) {
                    if (why) *why = "H at t=" + std::to_string(t) + " n=" + std::to_string(n);
                    return false;
                }
            }
        }
    return true;
}

SuperMap compose(const SuperMap& g, const SuperMap& f) {
    SuperMap h;
    for (int t = 0; t < 2; ++t) {
        h.F[t].resize(f.F[t].size());
        for (std::size_t n = 0; n < f.F[t].size(); ++n) h.F[t][n] = g.F[t][n] * f.F[t][n];
    }
    return h;
}

// ---------------------------------------------------------------- tensor

std::vector<TensorBlock> tensor_blocks(const SuperComplex& x, const SuperComplex& y, int t, int n) {
    std::vector<TensorBlock> out;
    int o = 0;
    for (int t1 = 0; t1 < 2; ++t1)
        for (int n1 = 0; n1 <= n; ++n1) {
            int t2 = (t + t1) % 2, n2 = n - n1;
            int sz = x.dim(t1, n1) * y.dim(t2, n2);
            out.push_back({t1, t2, n1, n2, o, sz});
            o += sz;
        }
    return out;
}

namespace {

// Places A (x) B at (ro, co), element index i1*rowsB + i2 / j1*colsB + j2.
void kron_into(MatrixBuilder& mb, const SparseMatrix& a, const SparseMatrix& b, int ro, int co, int sign) {
    int rb = b.rows(), cb = b.cols();
    for (int j1 = 0; j1 < a.cols(); ++j1)
        for (const auto& e1 : a.col(j1))
            for (int j2 = 0; j2 < cb; ++j2)
                for (const auto& e2 : b.col(j2))
                    mb.add(ro + e1.idx * rb + e2.idx, co + j1 * cb + j2, sign * e1.val * e2.val);
}

const TensorBlock* find_block(const std::vector<TensorBlock>& bl, int t1, int n1) {
    for (const auto& b : bl)
        if (b.t1 == t1 && b.n1 == n1) return &b;
    return nullptr;
}

}  // namespace

SuperComplex completed_tensor(const SuperComplex& x, const SuperComplex& y, int cap) {
    if (x.s != 0 || y.s != 0 || x.off != y.off || x.b0 != y.b0)
        throw std::invalid_argument("completed_tensor: factors need matching conventions with s = 0");
    SuperComplex z;
    z.kind = "tensor";
    z.s = 0;
    z.b0 = x.b0;
    z.off = x.off;
    z.resize(cap);
    std::array<std::vector<std::vector<TensorBlock>>, 2> blocks;
    for (int t = 0; t < 2; ++t) {
        blocks[t].resize(cap + 1);
        for (int n = 0; n <= cap; ++n) {
            blocks[t][n] = tensor_blocks(x, y, t, n);
            int d = 0;
            for (const auto& b : blocks[t][n]) d += b.size;
            z.dims[t][n] = d;
        }
    }
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) {
            if (n >= 1) {
                MatrixBuilder mb(z.dims[t][n - 1], z.dims[t][n]);
                for (const auto& b : blocks[t][n]) {
                    if (b.size == 0) continue;
                    int sg = ((b.t1 + b.n1) & 1) ? -1 : 1;
                    if (b.n1 >= 1) {
                        const auto* tb = find_block(blocks[t][n - 1], b.t1, b.n1 - 1);
                        if (tb->size) kron_into(mb, x.V[b.t1][b.n1], SparseMatrix::identity(y.dim(b.t2, b.n2)), tb->offset, b.offset, 1);
                    }
                    if (b.n2 >= 1) {
                        const auto* tb = find_block(blocks[t][n - 1], b.t1, b.n1);
                        if (tb->size) kron_into(mb, SparseMatrix::identity(x.dim(b.t1, b.n1)), y.V[b.t2][b.n2], tb->offset, b.offset, sg);
                    }
                }
                z.V[t][n] = mb.build();
            }
            MatrixBuilder mb(z.dims[1 - t][n], z.dims[t][n]);
            for (const auto& b : blocks[t][n]) {
                if (b.size == 0) continue;
                int sg = ((b.t1 + b.n1) & 1) ? -1 : 1;
                const auto* tb = find_block(blocks[1 - t][n], 1 - b.t1, b.n1);
                if (tb->size) kron_into(mb, x.H[b.t1][b.n1], SparseMatrix::identity(y.dim(b.t2, b.n2)), tb->offset, b.offset, 1);
                tb = find_block(blocks[1 - t][n], b.t1, b.n1);
                if (tb->size) kron_into(mb, SparseMatrix::identity(x.dim(b.t1, b.n1)), y.H[b.t2][b.n2], tb->offset, b.offset, sg);
            }
            z.H[t][n] = mb.build();
        }
    return z;
}

// ---------------------------------------------------------------- tower

std::vector<TowerColumn> tower_layout(const SuperComplex& p, int T, int* total) {
    std::vector<TowerColumn> out;
    int o = 0;
    for (int c = 0;; ++c) {
        int n = T - c * (1 + p.s) - p.off;
        if (n < 0) break;
        int t = (p.b0 + c) % 2;
        out.push_back({c, t, n, o});
        o += p.dim(t, n);
    }
    if (total) *total = o;
    return out;
}

int tower_dim(const SuperComplex& p, int T) {
    int total = 0;
    tower_layout(p, T, &total);
    return total;
}

SparseMatrix tower_D(const SuperComplex& p, int T) {
    int sd = 0, td = 0;
    auto src = tower_layout(p, T, &sd);
    auto tgt = tower_layout(p, T - 1, &td);
    MatrixBuilder mb(td, sd);
    for (const auto& col : src) {
        if (p.dim(col.t, col.n) == 0) continue;
        if (col.n >= 1 && col.c < static_cast<int>(tgt.size())) mb.place(p.V[col.t][col.n], tgt[col.c].offset, col.offset);
        if (col.c >= 1) mb.place(p.H[col.t][col.n], tgt[col.c - 1].offset, col.offset);
    }
    return mb.build();
}

SparseMatrix tower_S(const SuperComplex& p, int T) {
    int sd = 0, td = 0;
    auto src = tower_layout(p, T, &sd);
    auto tgt = tower_layout(p, T - 2, &td);
    int shift = 2 / (1 + p.s);
    MatrixBuilder mb(td, sd);
    for (const auto& col : src) {
        if (col.c < shift) continue;
        int d = p.dim(col.t, col.n);
        for (int i = 0; i < d; ++i) mb.add(tgt[col.c - shift].offset + i, col.offset + i, 1L);
    }
    return mb.build();
}

SparseMatrix tower_map(const SuperMap& f, const SuperComplex& src, const SuperComplex& tgt, int T) {
    int sd = 0, td = 0;
    auto s = tower_layout(src, T, &sd);
    auto t = tower_layout(tgt, T, &td);
    MatrixBuilder mb(td, sd);
    for (const auto& col : s) {
        if (src.dim(col.t, col.n) == 0 || col.c >= static_cast<int>(t.size())) continue;
        if (tgt.dim(col.t, col.n) == 0) continue;
        mb.place(f.F[col.t][col.n], t[col.c].offset, col.offset);
    }
    return mb.build();
}

int tower_top(const SuperComplex& p, int eps) {
    int T = p.cap + p.off;
    if (((T % 2) + 2) % 2 != eps) --T;
    return T >= 2 ? T : -1;
}

int tower_trusted(const SuperComplex& p) { return p.cap + p.off - 1; }

int tower_homology_dim(const SuperComplex& p, int T) {
    SparseMatrix dout = tower_D(p, T);
    SparseMatrix din = tower_D(p, T + 1);
    return dout.cols() - rank(dout) - rank(din);
}

namespace {

// rank([[A, B],[C, 0]]) - rank(B) - rank(C) where A: X -> Y, B: Z -> Y, C: X -> W.
int relative_rank(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& c) {
    MatrixBuilder mb(a.rows() + c.rows(), a.cols() + b.cols());
    mb.place(a, 0, 0);
    mb.place(b, 0, a.cols());
    mb.place(c, a.rows(), 0);
    return rank(mb.build()) - rank(b) - rank(c);
}

}  // namespace

int stable_rank(const SuperComplex& p, int T) {
    return relative_rank(tower_S(p, T), tower_D(p, T - 1), tower_D(p, T));
}

int stable_map_rank(const SuperMap& f, const SuperComplex& src, const SuperComplex& tgt, int T) {
    SparseMatrix m = tower_S(tgt, T) * tower_map(f, src, tgt, T);
    return relative_rank(m, tower_D(tgt, T - 1), tower_D(src, T));
}

StableHomology stable_homology(const SuperComplex& p, int T) {
    StableHomology sh;
    sh.T = T;
    sh.h = homology(tower_D(p, T - 1), tower_D(p, T - 2));
    SubspaceBasis z = kernel_basis(tower_D(p, T));
    SparseMatrix s = tower_S(p, T);
    std::vector<SparseVec> imgs;
    imgs.reserve(z.vecs.size());
    for (const auto& v : z.vecs) imgs.push_back(sh.h.project(s.apply(v)));
    // Pick cycles whose classes form a basis of the image.
    SparseMatrix im(sh.h.dim, static_cast<int>(imgs.size()), imgs);
    sh.image = image_basis(im);
    std::vector<SparseVec> lifts;
    if (sh.image.dim() > 0) {
        auto pre = solve_many(im, sh.image.inclusion());
        if (!pre) throw std::logic_error("stable_homology: image basis not reachable");
        SparseMatrix zi = z.inclusion();
        SparseMatrix l = zi * *pre;
        lifts = l.columns();
    }
    sh.lift = SparseMatrix(tower_dim(p, T), static_cast<int>(lifts.size()), lifts);
    return sh;
}

SparseMatrix stable_map(const SuperMap& f, const SuperComplex& src, const StableHomology& hs, const SuperComplex& tgt,
                        const StableHomology& ht) {
    SparseMatrix img = tower_S(tgt, hs.T) * tower_map(f, src, tgt, hs.T) * hs.lift;
    std::vector<SparseVec> cols;
    for (const auto& v : img.columns()) cols.push_back(ht.image.coords(ht.h.project(v)));
    return SparseMatrix(ht.dim(), static_cast<int>(cols.size()), cols);
}

PeriodicReading periodic_reading(const SuperComplex& p) {
    PeriodicReading r;
    r.T_even = tower_top(p, 0);
    r.T_odd = tower_top(p, 1);
    if (r.T_even >= 2) r.even = stable_rank(p, r.T_even);
    if (r.T_odd >= 2) r.odd = stable_rank(p, r.T_odd);
    return r;
}

}  // namespace hcx
