#include "hcx/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace hcx {

SparseVec vec_axpy(const SparseVec& y, const Scalar& a, const SparseVec& x) {
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].idx < x[j].idx)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].idx < y[i].idx) {
            Scalar v = a * x[j].val;
            if (sgn(v) != 0) out.push_back({x[j].idx, std::move(v)});
            ++j;
        } else {
            Scalar v = y[i].val + a * x[j].val;
            if (sgn(v) != 0) out.push_back({y[i].idx, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec vec_scale(const SparseVec& x, const Scalar& a) {
    SparseVec out;
    if (sgn(a) == 0) return out;
    out.reserve(x.size());
    for (const auto& e : x) out.push_back({e.idx, e.val * a});
    return out;
}

Scalar vec_get(const SparseVec& x, int idx) {
    auto it = std::lower_bound(x.begin(), x.end(), idx, [](const Entry& e, int k) { return e.idx < k; });
    if (it != x.end() && it->idx == idx) return it->val;
    return 0;
}

SparseVec vec_from_pairs(std::vector<std::pair<int, Scalar>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [k, v] : terms) {
        if (!out.empty() && out.back().idx == k) {
            out.back().val += v;
            if (sgn(out.back().val) == 0) out.pop_back();
        } else if (sgn(v) != 0) {
            out.push_back({k, v});
        }
    }
    return out;
}

// ---------------------------------------------------------------- matrices

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), cols_data_(cols) {}

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<SparseVec> columns)
    : rows_(rows), cols_(cols), cols_data_(std::move(columns)) {
    if (static_cast<int>(cols_data_.size()) != cols) throw std::invalid_argument("SparseMatrix: column count mismatch");
    for (const auto& c : cols_data_)
        for (const auto& e : c)
            if (e.idx < 0 || e.idx >= rows) throw std::out_of_range("SparseMatrix: row index out of range");
}

SparseMatrix SparseMatrix::identity(int n) {
    std::vector<SparseVec> cs(n);
    for (int i = 0; i < n; ++i) cs[i].push_back({i, 1});
    return SparseMatrix(n, n, std::move(cs));
}

std::size_t SparseMatrix::nnz() const {
    std::size_t s = 0;
    for (const auto& c : cols_data_) s += c.size();
    return s;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : cols_data_)
        if (!c.empty()) return false;
    return true;
}

Scalar SparseMatrix::at(int i, int j) const { return vec_get(cols_data_[j], i); }

SparseMatrix SparseMatrix::transpose() const {
    std::vector<SparseVec> cs(rows_);
    std::vector<std::size_t> cnt(rows_, 0);
    for (const auto& c : cols_data_)
        for (const auto& e : c) ++cnt[e.idx];
    for (int i = 0; i < rows_; ++i) cs[i].reserve(cnt[i]);
    for (int j = 0; j < cols_; ++j)
        for (const auto& e : cols_data_[j]) cs[e.idx].push_back({j, e.val});
    return SparseMatrix(cols_, rows_, std::move(cs));
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    std::vector<std::pair<int, Scalar>> terms;
    for (const auto& x : v) {
        if (x.idx >= cols_) throw std::out_of_range("apply: index out of range");
        for (const auto& e : cols_data_[x.idx]) terms.emplace_back(e.idx, e.val * x.val);
    }
    return vec_from_pairs(std::move(terms));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    std::vector<SparseVec> cs(o.cols_);
    for (int j = 0; j < o.cols_; ++j) cs[j] = apply(o.cols_data_[j]);
    return SparseMatrix(rows_, o.cols_, std::move(cs));
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    std::vector<SparseVec> cs(cols_);
    for (int j = 0; j < cols_; ++j) cs[j] = vec_axpy(cols_data_[j], 1, o.cols_data_[j]);
    return SparseMatrix(rows_, cols_, std::move(cs));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    std::vector<SparseVec> cs(cols_);
    for (int j = 0; j < cols_; ++j) cs[j] = vec_axpy(cols_data_[j], -1, o.cols_data_[j]);
    return SparseMatrix(rows_, cols_, std::move(cs));
}

SparseMatrix SparseMatrix::scaled(const Scalar& a) const {
    std::vector<SparseVec> cs(cols_);
    for (int j = 0; j < cols_; ++j) cs[j] = vec_scale(cols_data_[j], a);
    return SparseMatrix(rows_, cols_, std::move(cs));
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int j = 0; j < cols_; ++j) {
        const auto& a = cols_data_[j];
        const auto& b = o.cols_data_[j];
        if (a.size() != b.size()) return false;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k].idx != b[k].idx || a[k].val != b[k].val) return false;
    }
    return true;
}

SparseMatrix SparseMatrix::block(int r0, int nr, int c0, int nc) const {
    std::vector<SparseVec> cs(nc);
    for (int j = 0; j < nc; ++j)
        for (const auto& e : cols_data_[c0 + j])
            if (e.idx >= r0 && e.idx < r0 + nr) cs[j].push_back({e.idx - r0, e.val});
    return SparseMatrix(nr, nc, std::move(cs));
}

SparseMatrix SparseMatrix::select_cols(const std::vector<int>& js) const {
    std::vector<SparseVec> cs;
    cs.reserve(js.size());
    for (int j : js) cs.push_back(cols_data_[j]);
    return SparseMatrix(rows_, static_cast<int>(js.size()), std::move(cs));
}

SparseMatrix vstack(const std::vector<SparseMatrix>& ms) {
    if (ms.empty()) return {};
    int nc = ms[0].cols(), nr = 0;
    for (const auto& m : ms) {
        if (m.cols() != nc) throw std::invalid_argument("vstack: column mismatch");
        nr += m.rows();
    }
    std::vector<SparseVec> cs(nc);
    int off = 0;
    for (const auto& m : ms) {
        for (int j = 0; j < nc; ++j)
            for (const auto& e : m.col(j)) cs[j].push_back({e.idx + off, e.val});
        off += m.rows();
    }
    return SparseMatrix(nr, nc, std::move(cs));
}

SparseMatrix hstack(const std::vector<SparseMatrix>& ms) {
    if (ms.empty()) return {};
    int nr = ms[0].rows();
    std::vector<SparseVec> cs;
    for (const auto& m : ms) {
        if (m.rows() != nr) throw std::invalid_argument("hstack: row mismatch");
        for (const auto& c : m.columns()) cs.push_back(c);
    }
    int nc = static_cast<int>(cs.size());
    return SparseMatrix(nr, nc, std::move(cs));
}

MatrixBuilder::MatrixBuilder(int rows, int cols) : rows_(rows), cols_(cols), acc_(cols) {}

void MatrixBuilder::add(int i, int j, const Scalar& v) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("MatrixBuilder::add");
    if (sgn(v) != 0) acc_[j].emplace_back(i, v);
}

void MatrixBuilder::add(int i, int j, long v) {
    if (v != 0) add(i, j, Scalar(v));
}

void MatrixBuilder::place(const SparseMatrix& blk, int r0, int c0, const Scalar& factor) {
    if (sgn(factor) == 0) return;
    for (int j = 0; j < blk.cols(); ++j)
        for (const auto& e : blk.col(j)) add(r0 + e.idx, c0 + j, e.val * factor);
}

SparseMatrix MatrixBuilder::build() {
    std::vector<SparseVec> cs(cols_);
    for (int j = 0; j < cols_; ++j) cs[j] = vec_from_pairs(std::move(acc_[j]));
    acc_.assign(cols_, {});
    return SparseMatrix(rows_, cols_, std::move(cs));
}

// ---------------------------------------------------------------- echelon core

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) {
            p[x] = p[p[x]];
            x = p[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// Dense scratch accumulator with a min-heap of touched indices.
class Scratch {
public:
    explicit Scratch(int n) : val_(n), mark_(n, 0) {}

    void load(const SparseVec& v) {
        for (const auto& e : v) {
            val_[e.idx] = e.val;
            push(e.idx);
        }
    }
    void axpy(const Scalar& a, const SparseVec& v, int skip) {
        for (const auto& e : v) {
            if (e.idx == skip) continue;
            val_[e.idx] -= a * e.val;
            push(e.idx);
        }
    }
    bool empty() const { return heap_.empty(); }
    int pop() {
        int c = heap_.top();
        heap_.pop();
        mark_[c] = 0;
        return c;
    }
    Scalar& at(int c) { return val_[c]; }
    void push(int c) {
        if (!mark_[c]) {
            mark_[c] = 1;
            heap_.push(c);
        }
    }
    // Drains everything remaining into a sparse vector (ascending).
    SparseVec drain() {
        SparseVec out;
        while (!heap_.empty()) {
            int c = pop();
            if (sgn(val_[c]) != 0) {
                out.push_back({c, val_[c]});
                val_[c] = 0;
            }
        }
        return out;
    }
    void clear_index(int c) { val_[c] = 0; }

private:
    std::vector<Scalar> val_;
    std::vector<char> mark_;
    std::priority_queue<int, std::vector<int>, std::greater<int>> heap_;
};

struct LocalEchelon {
    int n = 0;
    std::vector<int> lead_slot;  // local index -> pivot slot or -1
    std::vector<SparseVec> piv;  // normalized leading 1
    std::vector<int> lead;

    explicit LocalEchelon(int n_) : n(n_), lead_slot(n_, -1) {}

    // Forward reduction; inserts a pivot if v is independent. Returns true if inserted.
    bool insert(Scratch& s, const SparseVec& v) {
        s.load(v);
        while (!s.empty()) {
            int c = s.pop();
            if (sgn(s.at(c)) == 0) continue;
            int slot = lead_slot[c];
            if (slot >= 0) {
                Scalar a = s.at(c);
                s.clear_index(c);
                s.axpy(a, piv[slot], c);
                continue;
            }
            // new leading index c
            Scalar inv = 1 / s.at(c);
            s.clear_index(c);
            SparseVec rest = s.drain();
            SparseVec p;
            p.reserve(rest.size() + 1);
            p.push_back({c, 1});
            for (auto& e : rest) p.push_back({e.idx, e.val * inv});
            lead_slot[c] = static_cast<int>(piv.size());
            lead.push_back(c);
            piv.push_back(std::move(p));
            return true;
        }
        return false;
    }

    // Full back-substitution so that no pivot vector has entries at other leads.
    void rref(Scratch& s) {
        std::vector<int> order(piv.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return lead[a] > lead[b]; });
        for (int slot : order) {
            int l = lead[slot];
            bool touched = false;
            for (const auto& e : piv[slot])
                if (e.idx != l && lead_slot[e.idx] >= 0) {
                    touched = true;
                    break;
                }
            if (!touched) continue;
            s.load(piv[slot]);
            SparseVec out;
            while (!s.empty()) {
                int c = s.pop();
                if (sgn(s.at(c)) == 0) continue;
                int sl = lead_slot[c];
                if (c != l && sl >= 0) {
                    Scalar a = s.at(c);
                    s.clear_index(c);
                    s.axpy(a, piv[sl], c);
                    continue;
                }
                out.push_back({c, s.at(c)});
                s.clear_index(c);
            }
            piv[slot] = std::move(out);
        }
    }
};

struct Components {
    std::vector<std::vector<int>> vec_groups;  // vector ids per component
    std::vector<std::vector<int>> idx_groups;  // ambient indices per component (sorted)
};

// Groups vectors and ambient indices into connected blocks; indices touched by
// no vector are dropped.
Components components(int n, const std::vector<const SparseVec*>& vs) {
    UnionFind uf(n);
    std::vector<char> used(n, 0);
    for (const auto* v : vs) {
        if (v->empty()) continue;
        int a = (*v)[0].idx;
        for (const auto& e : *v) {
            used[e.idx] = 1;
            uf.unite(a, e.idx);
        }
    }
    std::vector<int> comp_of(n, -1);
    Components out;
    for (int i = 0; i < n; ++i) {
        if (!used[i]) continue;
        int r = uf.find(i);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(out.idx_groups.size());
            out.idx_groups.emplace_back();
            out.vec_groups.emplace_back();
        }
        out.idx_groups[comp_of[r]].push_back(i);
    }
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (vs[k]->empty()) continue;
        out.vec_groups[comp_of[uf.find((*vs[k])[0].idx)]].push_back(static_cast<int>(k));
    }
    return out;
}

struct GlobalEchelon {
    std::vector<SparseVec> piv;  // global indices
    std::vector<int> lead;
};

// Echelon (optionally reduced) basis of span(vs) in Q^n, computed blockwise.
GlobalEchelon echelon(int n, const std::vector<const SparseVec*>& vs, bool reduced) {
    Components comp = components(n, vs);
    GlobalEchelon out;
    std::vector<int> local(n, -1);
    for (std::size_t g = 0; g < comp.idx_groups.size(); ++g) {
        const auto& idx = comp.idx_groups[g];
        int m = static_cast<int>(idx.size());
        for (int k = 0; k < m; ++k) local[idx[k]] = k;
        LocalEchelon le(m);
        Scratch s(m);
        int maxrank = m;
        for (int vid : comp.vec_groups[g]) {
            SparseVec lv;
            lv.reserve(vs[vid]->size());
            for (const auto& e : *vs[vid]) lv.push_back({local[e.idx], e.val});
            le.insert(s, lv);
            if (static_cast<int>(le.piv.size()) == maxrank) break;
        }
        if (reduced) le.rref(s);
        for (std::size_t p = 0; p < le.piv.size(); ++p) {
            SparseVec gv;
            gv.reserve(le.piv[p].size());
            for (const auto& e : le.piv[p]) gv.push_back({idx[e.idx], e.val});
            out.lead.push_back(idx[le.lead[p]]);
            out.piv.push_back(std::move(gv));
        }
        for (int k = 0; k < m; ++k) local[idx[k]] = -1;
    }
    return out;
}

std::vector<const SparseVec*> ptrs(const std::vector<SparseVec>& v) {
    std::vector<const SparseVec*> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(&x);
    return out;
}

SubspaceBasis from_echelon(int n, GlobalEchelon e) {
    std::vector<int> order(e.piv.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return e.lead[a] < e.lead[b]; });
    SubspaceBasis sb;
    sb.ambient = n;
    for (int k : order) {
        sb.keys.push_back(e.lead[k]);
        sb.vecs.push_back(std::move(e.piv[k]));
    }
    return sb;
}

}  // namespace

// ---------------------------------------------------------------- subspaces

SparseMatrix SubspaceBasis::inclusion() const { return SparseMatrix(ambient, dim(), vecs); }

std::optional<SparseVec> SubspaceBasis::try_coords(const SparseVec& v) const {
    // keys are sorted ascending by construction in from_echelon / coordinate / kernel
    SparseVec c;
    std::size_t k = 0;
    for (const auto& e : v) {
        while (k < keys.size() && keys[k] < e.idx) ++k;
        if (k < keys.size() && keys[k] == e.idx) c.push_back({static_cast<int>(k), e.val});
    }
    // verify
    std::vector<std::pair<int, Scalar>> terms;
    for (const auto& x : c)
        for (const auto& e : vecs[x.idx]) terms.emplace_back(e.idx, e.val * x.val);
    SparseVec rec = vec_from_pairs(std::move(terms));
    if (rec.size() != v.size()) return std::nullopt;
    for (std::size_t i = 0; i < rec.size(); ++i)
        if (rec[i].idx != v[i].idx || rec[i].val != v[i].val) return std::nullopt;
    return c;
}

SparseVec SubspaceBasis::coords(const SparseVec& v) const {
    auto c = try_coords(v);
    if (!c) throw NotInSubspace("vector is not in the subspace");
    return *c;
}

std::optional<SparseMatrix> SubspaceBasis::try_coords_matrix(const SparseMatrix& m) const {
    if (m.rows() != ambient) throw std::invalid_argument("coords_matrix: ambient mismatch");
    std::vector<SparseVec> cs(m.cols());
    for (int j = 0; j < m.cols(); ++j) {
        auto c = try_coords(m.col(j));
        if (!c) return std::nullopt;
        cs[j] = std::move(*c);
    }
    return SparseMatrix(dim(), m.cols(), std::move(cs));
}

SparseMatrix SubspaceBasis::coords_matrix(const SparseMatrix& m) const {
    auto r = try_coords_matrix(m);
    if (!r) throw NotInSubspace("map does not land in the subspace");
    return *r;
}

SubspaceBasis SubspaceBasis::full(int n) {
    SubspaceBasis s;
    s.ambient = n;
    for (int i = 0; i < n; ++i) {
        s.vecs.push_back({{i, 1}});
        s.keys.push_back(i);
    }
    return s;
}

SubspaceBasis SubspaceBasis::coordinate(int n, const std::vector<int>& idx) {
    SubspaceBasis s;
    s.ambient = n;
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    for (int i : sorted) {
        s.vecs.push_back({{i, 1}});
        s.keys.push_back(i);
    }
    return s;
}

// ---------------------------------------------------------------- rank / kernel / image

int rank(const SparseMatrix& m) {
    // eliminate along the shorter side
    if (m.rows() < m.cols()) {
        SparseMatrix t = m.transpose();
        return static_cast<int>(echelon(t.rows(), ptrs(t.columns()), false).piv.size());
    }
    return static_cast<int>(echelon(m.rows(), ptrs(m.columns()), false).piv.size());
}

SubspaceBasis kernel_basis(const SparseMatrix& m) {
    SparseMatrix t = m.transpose();  // columns of t = rows of m, vectors in Q^{cols}
    GlobalEchelon e = echelon(m.cols(), ptrs(t.columns()), true);
    int n = m.cols();
    std::vector<int> slot(n, -1);
    for (std::size_t p = 0; p < e.lead.size(); ++p) slot[e.lead[p]] = static_cast<int>(p);
    // For each free column f: x_f = 1, x_lead = -R[lead][f].
    std::vector<std::vector<std::pair<int, Scalar>>> kv(n);
    for (std::size_t p = 0; p < e.piv.size(); ++p)
        for (const auto& x : e.piv[p])
            if (x.idx != e.lead[p]) kv[x.idx].emplace_back(e.lead[p], -x.val);
    SubspaceBasis sb;
    sb.ambient = n;
    for (int f = 0; f < n; ++f) {
        if (slot[f] >= 0) continue;
        auto terms = std::move(kv[f]);
        terms.emplace_back(f, 1);
        sb.vecs.push_back(vec_from_pairs(std::move(terms)));
        sb.keys.push_back(f);
    }
    return sb;
}

SubspaceBasis image_basis(const SparseMatrix& m) { return from_echelon(m.rows(), echelon(m.rows(), ptrs(m.columns()), true)); }

SubspaceBasis span_basis(int ambient, const std::vector<SparseVec>& vs) {
    return from_echelon(ambient, echelon(ambient, ptrs(vs), true));
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
    // x in A∩B  <=>  [A | -B] (u; w) = 0, x = A u
    SparseMatrix ia = a.inclusion();
    SparseMatrix ib = b.inclusion().scaled(-1);
    SubspaceBasis k = kernel_basis(hstack({ia, ib}));
    std::vector<SparseVec> vs;
    for (const auto& v : k.vecs) {
        SparseVec u;
        for (const auto& e : v)
            if (e.idx < a.dim()) u.push_back(e);
        vs.push_back(ia.apply(u));
    }
    return span_basis(a.ambient, vs);
}

// ---------------------------------------------------------------- solving

std::optional<SparseMatrix> solve_many(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    int n = a.cols(), k = b.cols();
    // Row vectors of [a | b] in Q^{n+k}. Rows sharing an a-column are coupled;
    // the b part only rides along, so components are taken on a's pattern
    // with b-columns attached per row.
    SparseMatrix at = a.transpose();
    SparseMatrix bt = b.transpose();
    std::vector<SparseVec> rows(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        rows[i] = at.col(i);
        for (const auto& e : bt.col(i)) rows[i].push_back({n + e.idx, e.val});
    }
    // components on the a-part only
    std::vector<SparseVec> apart(a.rows());
    for (int i = 0; i < a.rows(); ++i) apart[i] = at.col(i);
    Components comp = components(n, ptrs(apart));
    std::vector<std::vector<std::pair<int, Scalar>>> xcols(k);
    // rows with empty a-part must have zero rhs
    for (int i = 0; i < a.rows(); ++i)
        if (apart[i].empty() && !bt.col(i).empty()) return std::nullopt;
    std::vector<int> local(n, -1);
    for (std::size_t g = 0; g < comp.idx_groups.size(); ++g) {
        const auto& idx = comp.idx_groups[g];
        int m = static_cast<int>(idx.size());
        for (int q = 0; q < m; ++q) local[idx[q]] = q;
        LocalEchelon le(m + k);
        Scratch s(m + k);
        for (int rid : comp.vec_groups[g]) {
            SparseVec lv;
            for (const auto& e : rows[rid]) lv.push_back({e.idx < n ? local[e.idx] : m + (e.idx - n), e.val});
            le.insert(s, lv);
        }
        for (int l : le.lead)
            if (l >= m) return std::nullopt;
        le.rref(s);
        for (std::size_t p = 0; p < le.piv.size(); ++p)
            for (const auto& e : le.piv[p])
                if (e.idx >= m) xcols[e.idx - m].emplace_back(idx[le.lead[p]], e.val);
        for (int q = 0; q < m; ++q) local[idx[q]] = -1;
    }
    std::vector<SparseVec> cs(k);
    for (int j = 0; j < k; ++j) cs[j] = vec_from_pairs(std::move(xcols[j]));
    return SparseMatrix(n, k, std::move(cs));
}

std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b) {
    auto r = solve_many(a, SparseMatrix(a.rows(), 1, {b}));
    if (!r) return std::nullopt;
    return r->col(0);
}

// ---------------------------------------------------------------- homology

namespace {

// Reduces v against tracked pivots; returns the remainder and accumulates
// tag coefficients.
SparseVec tracked_reduce(const Homology& h, Scratch& s, const SparseVec& v, SparseVec& tag) {
    s.load(v);
    SparseVec rem;
    while (!s.empty()) {
        int c = s.pop();
        if (sgn(s.at(c)) == 0) continue;
        int slot = h.lead_index[c];
        if (slot >= 0) {
            Scalar a = s.at(c);
            s.clear_index(c);
            s.axpy(a, h.pivots[slot].vec, c);
            tag = vec_axpy(tag, a, h.pivots[slot].tag);
            continue;
        }
        rem.push_back({c, s.at(c)});
        s.clear_index(c);
    }
    return rem;
}

}  // namespace

SparseVec Homology::project(const SparseVec& z) const {
    if (d_out.cols() > 0 && !d_out.apply(z).empty()) throw NotACycleImage("vector is not a cycle");
    Scratch s(ambient);
    SparseVec tag;
    SparseVec rem = tracked_reduce(*this, s, z, tag);
    if (!rem.empty()) throw NotACycleImage("cycle is not in the span of boundaries and representatives");
    return tag;
}

SparseMatrix Homology::projection_matrix(const SparseMatrix& cyc) const {
    std::vector<SparseVec> cs(cyc.cols());
    for (int j = 0; j < cyc.cols(); ++j) cs[j] = project(cyc.col(j));
    return SparseMatrix(dim, cyc.cols(), std::move(cs));
}

Homology homology_from(const SubspaceBasis& cycles, const SparseMatrix& d_in) {
    Homology h;
    h.ambient = cycles.ambient;
    h.cycles = cycles;
    h.lead_index.assign(h.ambient, -1);
    Scratch s(h.ambient);
    // rem = v - sum a_i piv_i, so tag(rem) = tag(v) - sum a_i tag(piv_i);
    // tracked_reduce accumulates the sum.
    for (const auto& b : d_in.columns()) {
        SparseVec tag;
        SparseVec rem = tracked_reduce(h, s, b, tag);
        if (rem.empty()) continue;
        Scalar inv = 1 / rem[0].val;
        h.lead_index[rem[0].idx] = static_cast<int>(h.pivots.size());
        h.pivots.push_back({vec_scale(rem, inv), vec_scale(tag, -inv)});
    }
    for (const auto& z : cycles.vecs) {
        SparseVec tag;
        SparseVec rem = tracked_reduce(h, s, z, tag);
        if (rem.empty()) continue;
        int id = static_cast<int>(h.reps.size());
        h.reps.push_back(z);
        SparseVec t = vec_axpy(vec_scale(tag, -1), 1, SparseVec{{id, 1}});
        Scalar inv = 1 / rem[0].val;
        h.lead_index[rem[0].idx] = static_cast<int>(h.pivots.size());
        h.pivots.push_back({vec_scale(rem, inv), vec_scale(t, inv)});
    }
    h.dim = static_cast<int>(h.reps.size());
    return h;
}

Homology homology(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    if (d_in.rows() != d_out.cols()) throw std::invalid_argument("homology: shape mismatch");
    if (!(d_out * d_in).is_zero()) throw CompositionNotZero("d_out * d_in != 0");
    Homology h = homology_from(kernel_basis(d_out), d_in);
    h.d_out = d_out;
    return h;
}

int homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    return d_out.cols() - rank(d_out) - rank(d_in);
}

SparseMatrix induced_on_homology(const SparseMatrix& f, const Homology& src, const Homology& tgt) {
    std::vector<SparseVec> cs(src.dim);
    for (int j = 0; j < src.dim; ++j) cs[j] = tgt.project(f.apply(src.reps[j]));
    return SparseMatrix(tgt.dim, src.dim, std::move(cs));
}

std::string to_string(const Scalar& s) { return s.get_str(); }

}  // namespace hcx
