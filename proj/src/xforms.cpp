#include "hcx/xforms.hpp"

#include <algorithm>
#include <functional>

namespace hcx {

std::size_t FormHash::operator()(const Form& f) const noexcept {
    std::size_t h = f.size();
    for (int x : f) h = h * 1000003u + static_cast<std::size_t>(x) + 0x9e3779b9u;
    return h;
}

// ---------------------------------------------------------------- Forms

Forms::Forms(Algebra r, int max_degree, int max_k) : r_(std::move(r)), w_(max_degree), k_(max_k) {
    for (int i = 0; i < r_.dim() && diff_shift_ == -1; ++i)
        for (const auto& e : r_.d(i)) {
            diff_shift_ = r_.deg[e.idx] - r_.deg[i];
            break;
        }
    std::vector<std::vector<int>> by_deg(w_ + 1);
    std::vector<int> all;
    for (int i = 0; i < r_.dim(); ++i) {
        if (r_.deg[i] < 0) throw InvalidPresentation("forms: negative degree");
        if (r_.deg[i] <= w_) {
            all.push_back(i);
            if (i != r_.unit) by_deg[r_.deg[i]].push_back(i);
        }
    }
    basis_.assign(k_ + 1, std::vector<std::vector<Form>>(w_ + 1));
    Form cur;
    std::function<void(int, int)> rec = [&](int slot, int used) {
        int k = static_cast<int>(cur.size()) - 1;
        if (slot > 0) basis_[k][used].push_back(cur);
        if (slot > k_) return;
        if (slot == 0) {
            for (int x : all) {
                cur.push_back(x);
                rec(1, r_.deg[x]);
                cur.pop_back();
            }
            return;
        }
        for (int dg = 0; dg + used <= w_; ++dg)
            for (int x : by_deg[dg]) {
                cur.push_back(x);
                rec(slot + 1, used + dg);
                cur.pop_back();
            }
    };
    rec(0, 0);
    for (int k = 0; k <= k_; ++k)
        for (int n = 0; n <= w_; ++n) {
            auto& v = basis_[k][n];
            std::sort(v.begin(), v.end());
            for (int i = 0; i < static_cast<int>(v.size()); ++i) index_[v[i]] = {k, n, i};
        }
}

int Forms::dim(int k, int n) const {
    if (k < 0 || k > k_ || n < 0 || n > w_) return 0;
    return static_cast<int>(basis_[k][n].size());
}

const std::vector<Form>& Forms::basis(int k, int n) const {
    static const std::vector<Form> empty;
    if (k < 0 || k > k_ || n < 0 || n > w_) return empty;
    return basis_[k][n];
}

Forms::Loc Forms::locate(const Form& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return {-1, -1, -1};
    return it->second;
}

int Forms::parity(const Form& f) const {
    int p = r_.deg[f[0]];
    for (std::size_t i = 1; i < f.size(); ++i) p += r_.deg[f[i]] + 1;
    return p & 1;
}

int Forms::degree(const Form& f) const {
    int p = 0;
    for (int x : f) p += r_.deg[x];
    return p;
}

Forms::Terms Forms::rmul(const Form& f, int a) const {
    Terms out;
    if (f.size() == 1) {
        for (const auto& e : r_.m(f[0], a)) out.push_back({Form{e.idx}, e.val});
        return out;
    }
    Form w(f.begin(), f.end() - 1);
    int rk = f.back();
    for (const auto& e : r_.m(rk, a))
        if (e.idx != r_.unit) {
            Form g = w;
            g.push_back(e.idx);
            out.push_back({std::move(g), e.val});
        }
    if (a != r_.unit) {
        int s = (r_.deg[rk] & 1) ? -1 : 1;
        for (auto& [g, c] : rmul(w, rk)) {
            Form h = g;
            h.push_back(a);
            out.push_back({std::move(h), -s * c});
        }
    }
    return out;
}

Forms::Terms Forms::lmul(int a, const Form& f) const {
    Terms out;
    for (const auto& e : r_.m(a, f[0])) {
        Form g = f;
        g[0] = e.idx;
        out.push_back({std::move(g), e.val});
    }
    return out;
}

Forms::Terms Forms::b_of(const Form& f) const {
    Terms out;
    if (f.size() == 1) return out;
    Form w(f.begin(), f.end() - 1);
    int a = f.back();
    int pw = parity(w), pa = r_.deg[a] & 1;
    int s = pw ? -1 : 1;
    for (auto& [g, c] : rmul(w, a)) out.push_back({g, s * c});
    int s2 = -s * ((pa && pw) ? -1 : 1);
    for (auto& [g, c] : lmul(a, w)) out.push_back({g, s2 * c});
    return out;
}

Forms::Terms Forms::d_of(const Form& f) const {
    Terms out;
    if (f[0] == r_.unit) return out;
    Form g;
    g.reserve(f.size() + 1);
    g.push_back(r_.unit);
    g.insert(g.end(), f.begin(), f.end());
    out.push_back({std::move(g), 1});
    return out;
}

Forms::Terms Forms::delta_of(const Form& f) const {
    Terms out;
    for (const auto& e : r_.d(f[0])) {
        Form g = f;
        g[0] = e.idx;
        out.push_back({std::move(g), e.val});
    }
    int p = r_.deg[f[0]];
    for (std::size_t i = 1; i < f.size(); ++i) {
        int s = (p & 1) ? -1 : 1;
        for (const auto& e : r_.d(f[i]))
            if (e.idx != r_.unit) {
                Form g = f;
                g[i] = e.idx;
                out.push_back({std::move(g), -s * e.val});
            }
        p += r_.deg[f[i]] + 1;
    }
    return out;
}

SparseMatrix Forms::assemble(int k, int n, int k2, int n2, Terms (Forms::*op)(const Form&) const) const {
    const auto& src = basis(k, n);
    MatrixBuilder mb(dim(k2, n2), static_cast<int>(src.size()));
    for (int j = 0; j < static_cast<int>(src.size()); ++j)
        for (auto& [g, c] : (this->*op)(src[j])) {
            Loc l = locate(g);
            if (l.k != k2 || l.n != n2) throw std::logic_error("forms: operator left its target space");
            mb.add(l.i, j, c);
        }
    return mb.build();
}

SparseMatrix Forms::b(int k, int n) const { return assemble(k, n, k - 1, n, &Forms::b_of); }
SparseMatrix Forms::d(int k, int n) const { return assemble(k, n, k + 1, n, &Forms::d_of); }
SparseMatrix Forms::delta(int k, int n) const {
    if (n + diff_shift_ < 0 || n + diff_shift_ > w_) return SparseMatrix(0, dim(k, n));
    return assemble(k, n, k, n + diff_shift_, &Forms::delta_of);
}

// ---------------------------------------------------------------- CoForms

CoForms::CoForms(const Coalgebra& c, int max_degree, int max_k) : f_(dual_algebra(c), max_degree, max_k + 1) {}

const SparseMatrix& CoForms::b(int k, int n) const {
    auto key = std::make_tuple('b', k, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_[key] = f_.b(k + 1, n).transpose();
}

const SparseMatrix& CoForms::d(int k, int n) const {
    auto key = std::make_tuple('d', k, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (k == 0) return cache_[key] = SparseMatrix(0, dim(0, n));
    return cache_[key] = f_.d(k - 1, n).transpose();
}

const SparseMatrix& CoForms::delta(int k, int n) const {
    auto key = std::make_tuple('v', k, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (n == 0) return cache_[key] = SparseMatrix(0, dim(k, 0));
    if (!f_.base().has_diff()) return cache_[key] = SparseMatrix(dim(k, n - 1), dim(k, n));
    return cache_[key] = f_.delta(k, n - 1).transpose();
}

int CoForms::counit_form_index() const { return f_.locate(Form{f_.base().unit}).i; }

int number_operator(int k) { return k; }

// ---------------------------------------------------------------- subspaces

SubspaceBasis natural_part(const CoForms& f, int n) { return kernel_basis(f.b(1, n)); }

SubspaceBasis omega_norm1(const CoForms& f, int n) {
    SparseMatrix m = f.b(0, n) * f.d(1, n) + (f.d(2, n) * f.b(1, n)).scaled(2);
    return kernel_basis(m);
}

SubspaceBasis natural_part2(const CoForms& f, int n) {
    return kernel_basis(vstack({f.b(2, n), f.b(1, n) * f.d(2, n)}));
}

int XComplex::ambient_dim(int t, int n) const {
    int s = 0;
    for (int k : layout[t]) s += forms->dim(k, n);
    return s;
}

int XComplex::ambient_offset(int t, int n, int k) const {
    int s = 0;
    for (int kk : layout[t]) {
        if (kk == k) return s;
        s += forms->dim(kk, n);
    }
    return -1;
}

namespace {

SubspaceBasis omega0_sub(const CoForms& f, int n, bool reduced) {
    int d = f.dim(0, n);
    if (!reduced || n != 0) return SubspaceBasis::full(d);
    std::vector<int> keep;
    int u = f.counit_form_index();
    for (int i = 0; i < d; ++i)
        if (i != u) keep.push_back(i);
    return SubspaceBasis::coordinate(d, keep);
}

SparseMatrix restrict_to(const SparseMatrix& m, const SubspaceBasis& src, const SubspaceBasis& dst, const char* what) {
    auto r = dst.try_coords_matrix(m * src.inclusion());
    if (!r) throw NaturalityFailure(std::string("image leaves the target subspace: ") + what);
    return *r;
}

void build_periodic(XComplex& x, int cap, bool x2) {
    const CoForms& f = *x.forms;
    SuperComplex& p = x.P;
    p.kind = x2 ? "X2" : "X";
    p.s = 0;
    p.b0 = 1;
    p.off = -1;
    p.resize(cap);
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) p.dims[t][n] = x.subs[t][n].dim();
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) {
            if (n >= 1) {
                MatrixBuilder mb(x.ambient_dim(t, n - 1), x.ambient_dim(t, n));
                for (int k : x.layout[t]) mb.place(f.delta(k, n), x.ambient_offset(t, n - 1, k), x.ambient_offset(t, n, k));
                p.V[t][n] = restrict_to(mb.build(), x.subs[t][n], x.subs[t][n - 1], "internal differential");
            }
            MatrixBuilder mb(x.ambient_dim(1 - t, n), x.ambient_dim(t, n));
            for (int k : x.layout[t]) {
                int so = x.ambient_offset(t, n, k);
                int up = x.ambient_offset(1 - t, n, k + 1);
                if (up >= 0) mb.place(f.b(k, n), up, so);
                int dn = x.ambient_offset(1 - t, n, k - 1);
                if (dn >= 0) mb.place(f.d(k, n), dn, so, x2 ? number_operator(k) : 1);
            }
            p.H[t][n] = restrict_to(mb.build(), x.subs[t][n], x.subs[1 - t][n], "b + dN");
        }
}

}  // namespace

XComplex x_complex(std::shared_ptr<const CoForms> f, int cap, bool reduced) {
    XComplex x;
    x.forms = std::move(f);
    x.reduced = reduced;
    x.layout = {std::vector<int>{0}, std::vector<int>{1}};
    for (int n = 0; n <= cap; ++n) {
        x.subs[0].push_back(omega0_sub(*x.forms, n, reduced));
        x.subs[1].push_back(natural_part(*x.forms, n));
    }
    build_periodic(x, cap, false);
    return x;
}

XComplex x_complex(const Coalgebra& c, int cap, bool reduced) {
    return x_complex(std::make_shared<const CoForms>(c, cap, 1), cap, reduced);
}

XComplex x2_complex(std::shared_ptr<const CoForms> f, int cap, bool reduced) {
    XComplex x;
    x.forms = std::move(f);
    x.reduced = reduced;
    x.layout = {std::vector<int>{0, 2}, std::vector<int>{1}};
    for (int n = 0; n <= cap; ++n) {
        SubspaceBasis o0 = omega0_sub(*x.forms, n, reduced);
        SubspaceBasis o2 = natural_part2(*x.forms, n);
        int d0 = x.forms->dim(0, n);
        SubspaceBasis even;
        even.ambient = d0 + x.forms->dim(2, n);
        for (int i = 0; i < o0.dim(); ++i) {
            even.vecs.push_back(o0.vecs[i]);
            even.keys.push_back(o0.keys[i]);
        }
        for (int i = 0; i < o2.dim(); ++i) {
            SparseVec v = o2.vecs[i];
            for (auto& e : v) e.idx += d0;
            even.vecs.push_back(std::move(v));
            even.keys.push_back(o2.keys[i] + d0);
        }
        x.subs[0].push_back(std::move(even));
        x.subs[1].push_back(omega_norm1(*x.forms, n));
    }
    build_periodic(x, cap, true);
    return x;
}

XComplex x2_complex(const Coalgebra& c, int cap, bool reduced) {
    return x2_complex(std::make_shared<const CoForms>(c, cap, 2), cap, reduced);
}

SuperMap inclusion_I(const XComplex& x, const XComplex& x2) {
    SuperMap m;
    int cap = x.P.cap;
    for (int t = 0; t < 2; ++t) {
        m.F[t].resize(cap + 1);
        for (int n = 0; n <= cap; ++n) {
            MatrixBuilder mb(x2.ambient_dim(t, n), x.ambient_dim(t, n));
            for (int k : x.layout[t]) mb.place(SparseMatrix::identity(x.forms->dim(k, n)), x2.ambient_offset(t, n, k), x.ambient_offset(t, n, k));
            m.F[t][n] = restrict_to(mb.build(), x.subs[t][n], x2.subs[t][n], "inclusion X -> X2");
        }
    }
    return m;
}

SuperMap induced_map(const SparseMatrix& g, const XComplex& src, const XComplex& tgt) {
    const Forms& fs = src.forms->algebra_forms();
    const Forms& ft = tgt.forms->algebra_forms();
    int cu = ft.base().unit;
    // g maps source coalgebra basis -> target coalgebra basis
    auto slot_image = [&](int x, bool barred) {
        std::vector<std::pair<int, Scalar>> out;
        for (const auto& e : g.col(x))
            if (!barred || e.idx != cu) out.emplace_back(e.idx, e.val);
        return out;
    };
    SuperMap m;
    int cap = src.P.cap;
    for (int t = 0; t < 2; ++t) {
        m.F[t].resize(cap + 1);
        for (int n = 0; n <= cap; ++n) {
            MatrixBuilder mb(tgt.ambient_dim(t, n), src.ambient_dim(t, n));
            for (int k : src.layout[t]) {
                int so = src.ambient_offset(t, n, k), to = tgt.ambient_offset(t, n, k);
                const auto& basis = fs.basis(k, n);
                for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
                    // expand the tensor product of slot images
                    std::vector<std::pair<Form, Scalar>> acc{{Form{}, Scalar(1)}};
                    for (std::size_t s = 0; s < basis[j].size(); ++s) {
                        std::vector<std::pair<Form, Scalar>> next;
                        for (auto& [f, c] : acc)
                            for (auto& [y, v] : slot_image(basis[j][s], s > 0)) {
                                Form h = f;
                                h.push_back(y);
                                next.push_back({std::move(h), c * v});
                            }
                        acc.swap(next);
                    }
                    for (auto& [f, c] : acc) {
                        auto l = ft.locate(f);
                        if (l.k != k || l.n != n) throw NaturalityFailure("induced map does not preserve degree");
                        mb.add(to + l.i, so + j, c);
                    }
                }
            }
            m.F[t][n] = restrict_to(mb.build(), src.subs[t][n], tgt.subs[t][n], "induced coalgebra map");
        }
    }
    return m;
}

// ---------------------------------------------------------------- algebra side

NaturalQuotient natural_quotient(const Forms& f, int n) {
    int d1 = f.dim(1, n);
    SubspaceBasis comm = image_basis(f.b(2, n));
    std::vector<char> is_key(d1, 0);
    for (int k : comm.keys) is_key[k] = 1;
    NaturalQuotient q;
    std::vector<int> pos(d1, -1);
    for (int i = 0; i < d1; ++i)
        if (!is_key[i]) {
            pos[i] = q.dim++;
            q.section.push_back(i);
        }
    // e_key = comm_vec - (other entries), and comm_vec is zero in the quotient
    MatrixBuilder mb(q.dim, d1);
    for (int i = 0; i < d1; ++i)
        if (!is_key[i]) mb.add(pos[i], i, 1L);
    for (int a = 0; a < comm.dim(); ++a) {
        int key = comm.keys[a];
        for (const auto& e : comm.vecs[a])
            if (e.idx != key) mb.add(pos[e.idx], key, -e.val);
    }
    q.projection = mb.build();
    return q;
}

AlgebraX x_complex_algebra(const Algebra& a) {
    require_valid(a);
    int top = 0;
    for (int d : a.deg) top = std::max(top, d);
    Forms f(a, top, 2);
    AlgebraX out;
    SuperComplex& p = out.P;
    p.kind = "X(algebra)";
    p.resize(top);
    std::vector<NaturalQuotient> nq(top + 1);
    std::vector<SparseMatrix> sec(top + 1);
    for (int n = 0; n <= top; ++n) {
        nq[n] = natural_quotient(f, n);
        p.dims[0][n] = f.dim(0, n);
        p.dims[1][n] = nq[n].dim;
        MatrixBuilder mb(f.dim(1, n), nq[n].dim);
        for (int i = 0; i < nq[n].dim; ++i) mb.add(nq[n].section[i], i, 1L);
        sec[n] = mb.build();
    }
    for (int n = 0; n <= top; ++n) {
        p.H[0][n] = nq[n].projection * f.d(0, n);
        p.H[1][n] = f.b(1, n) * sec[n];
        if (n >= 1) {
            p.V[0][n] = f.delta(0, n);
            p.V[1][n] = nq[n - 1].projection * f.delta(1, n) * sec[n];
        }
    }
    for (int n = 0; n <= top; ++n) {
        out.dim_even += p.dims[0][n];
        out.dim_odd += p.dims[1][n];
    }
    return out;
}

XComplex cc_of_algebra(const Algebra& a, int cap) {
    BarCoalgebra b = bar(a, cap);
    return x_complex(b.coalg, cap, true);
}

// ---------------------------------------------------------------- cobar side

namespace {

struct FreeX {
    const CobarAlgebra* r;
    std::map<std::pair<int, int>, int> pair_index;  // (word, letter) -> index
    std::vector<std::pair<int, int>> pairs;
};

int word_deg(const CobarAlgebra& r, const Word& w) {
    int d = 0;
    for (int l : w) d += r.letter_deg(l);
    return d;
}

}  // namespace

CobarX cc_of_coalgebra(const Coalgebra& c, int cap, bool reduced) {
    CobarX out;
    out.cobar = cobar(c, cap);
    out.reduced = reduced;
    const CobarAlgebra& r = out.cobar;
    int nl = static_cast<int>(r.letters.size());
    int nw = static_cast<int>(r.words.size());
    // even basis per degree
    SuperComplex& p = out.P;
    p.kind = "CC(coalgebra)";
    p.s = 0;
    p.b0 = 1;
    p.off = -1;
    p.resize(cap);
    std::vector<int> even_pos(nw, -1);
    std::vector<std::vector<int>> even_of(cap + 1);
    for (int i = 0; i < nw; ++i) {
        if (reduced && r.words[i].empty()) continue;
        int m = r.deg[i];
        if (m > cap) continue;
        even_pos[i] = static_cast<int>(even_of[m].size());
        even_of[m].push_back(i);
    }
    std::map<std::pair<int, int>, std::pair<int, int>> odd_pos;  // (word, letter) -> (m, pos)
    std::vector<std::vector<std::pair<int, int>>> odd_of(cap + 1);
    for (int i = 0; i < nw; ++i)
        for (int l = 0; l < nl; ++l) {
            if (r.load[i] + r.coalg.deg[r.letters[l]] > cap) continue;
            int m = r.deg[i] + r.letter_deg(l);
            if (m > cap) continue;
            odd_pos[{i, l}] = {m, static_cast<int>(odd_of[m].size())};
            odd_of[m].push_back({i, l});
        }
    for (int m = 0; m <= cap; ++m) {
        p.dims[0][m] = static_cast<int>(even_of[m].size());
        p.dims[1][m] = static_cast<int>(odd_of[m].size());
    }
    auto wd = [&](const Word& w) { return word_deg(r, w); };
    // odd element x dv  ~  (x, v); add c * (y x) dv after rotation sign handled by caller
    auto add_odd = [&](std::vector<std::pair<std::pair<int, int>, Scalar>>& acc, const Word& x, int v, const Scalar& c) {
        int xi = r.find(x);
        if (xi < 0) throw std::logic_error("cc_of_coalgebra: word outside truncation");
        acc.push_back({{xi, v}, c});
    };
    // normal form of x dv y
    auto natural = [&](std::vector<std::pair<std::pair<int, int>, Scalar>>& acc, const Word& x, int v, const Word& y,
                       const Scalar& c) {
        int s = koszul_pair_sign(wd(y), wd(x) + r.letter_deg(v) + 1);
        Word yx = y;
        yx.insert(yx.end(), x.begin(), x.end());
        add_odd(acc, yx, v, s * c);
    };
    // d(word) with the Leibniz sign, normalized
    auto d_word = [&](std::vector<std::pair<std::pair<int, int>, Scalar>>& acc, const Word& pre, const Word& w, const Scalar& c) {
        int sp = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            Word x = pre;
            x.insert(x.end(), w.begin(), w.begin() + i);
            Word y(w.begin() + i + 1, w.end());
            natural(acc, x, w[i], y, (sp & 1) ? -c : c);
            sp += r.letter_deg(w[i]);
        }
    };
    SparseMatrix dR = r.differential();
    for (int m = 0; m <= cap; ++m) {
        // H even -> odd: natural d
        {
            MatrixBuilder mb(p.dims[1][m], p.dims[0][m]);
            for (int j = 0; j < p.dims[0][m]; ++j) {
                std::vector<std::pair<std::pair<int, int>, Scalar>> acc;
                d_word(acc, {}, r.words[even_of[m][j]], 1);
                for (auto& [key, v] : acc) {
                    auto it = odd_pos.find(key);
                    if (it == odd_pos.end()) throw std::logic_error("cc_of_coalgebra: d left truncation");
                    mb.add(it->second.second, j, v);
                }
            }
            p.H[0][m] = mb.build();
        }
        // H odd -> even: b(x dv) = (-1)^|x| (x v - (-1)^{|v||x|} v x)
        {
            MatrixBuilder mb(p.dims[0][m], p.dims[1][m]);
            for (int j = 0; j < p.dims[1][m]; ++j) {
                auto [xi, v] = odd_of[m][j];
                const Word& x = r.words[xi];
                int dx = r.deg[xi], dv = r.letter_deg(v);
                int s = (dx & 1) ? -1 : 1;
                Word xv = x, vx{v};
                xv.push_back(v);
                vx.insert(vx.end(), x.begin(), x.end());
                int a = r.find(xv), b = r.find(vx);
                if (a < 0 || b < 0) throw std::logic_error("cc_of_coalgebra: b left truncation");
                if (even_pos[a] >= 0) mb.add(even_pos[a], j, s);
                if (even_pos[b] >= 0) mb.add(even_pos[b], j, -s * koszul_pair_sign(dv, dx));
            }
            p.H[1][m] = mb.build();
        }
        if (m == 0) continue;
        // V even: internal differential on words
        {
            MatrixBuilder mb(p.dims[0][m - 1], p.dims[0][m]);
            for (int j = 0; j < p.dims[0][m]; ++j)
                for (const auto& e : dR.col(even_of[m][j]))
                    if (even_pos[e.idx] >= 0) mb.add(even_pos[e.idx], j, e.val);
            p.V[0][m] = mb.build();
        }
        // V odd: delta(x dv) = (delta x) dv - (-1)^|x| x d(delta v)
        {
            MatrixBuilder mb(p.dims[1][m - 1], p.dims[1][m]);
            for (int j = 0; j < p.dims[1][m]; ++j) {
                auto [xi, v] = odd_of[m][j];
                std::vector<std::pair<std::pair<int, int>, Scalar>> acc;
                for (const auto& e : dR.col(xi)) acc.push_back({{e.idx, v}, e.val});
                int s = (r.deg[xi] & 1) ? 1 : -1;
                for (const auto& [u, c] : r.letter_diff[v]) d_word(acc, r.words[xi], u, s * c);
                for (auto& [key, val] : acc) {
                    auto it = odd_pos.find(key);
                    if (it == odd_pos.end()) throw std::logic_error("cc_of_coalgebra: delta left truncation");
                    mb.add(it->second.second, j, val);
                }
            }
            p.V[1][m] = mb.build();
        }
    }
    return out;
}

int cc_trusted(const CobarX& x) { return x.P.cap - 4; }

PeriodicReading cc_reading(const CobarX& x) {
    PeriodicReading r;
    int top = cc_trusted(x);
    if (top < 2) {
        r.even = r.odd = -1;
        return r;
    }
    r.T_even = top - (top & 1);
    r.T_odd = r.T_even + 1;
    r.even = stable_rank(x.P, r.T_even);
    r.odd = stable_rank(x.P, r.T_odd);
    return r;
}

// ---------------------------------------------------------------- (b, B)

namespace {

struct HochBasis {
    std::vector<std::vector<Form>> basis;  // per q
    std::vector<std::unordered_map<Form, int, FormHash>> index;
};

HochBasis hoch_basis(const Algebra& a, int cap) {
    HochBasis h;
    std::vector<int> bar;
    for (int i = 0; i < a.dim(); ++i)
        if (i != a.unit) bar.push_back(i);
    h.basis.resize(cap + 1);
    h.index.resize(cap + 1);
    for (int q = 0; q <= cap; ++q) {
        Form f(q + 1, 0);
        std::vector<int> pos(q + 1, 0);
        if (q > 0 && bar.empty()) continue;
        while (true) {
            f[0] = pos[0];
            for (int i = 1; i <= q; ++i) f[i] = bar[pos[i]];
            h.index[q][f] = static_cast<int>(h.basis[q].size());
            h.basis[q].push_back(f);
            int i = q;
            while (i >= 0) {
                int lim = i == 0 ? a.dim() : static_cast<int>(bar.size());
                if (++pos[i] < lim) break;
                pos[i--] = 0;
            }
            if (i < 0) break;
        }
    }
    return h;
}

SparseMatrix hoch_b(const Algebra& a, const HochBasis& h, int q) {
    MatrixBuilder mb(static_cast<int>(h.basis[q - 1].size()), static_cast<int>(h.basis[q].size()));
    for (int j = 0; j < static_cast<int>(h.basis[q].size()); ++j) {
        const Form& t = h.basis[q][j];
        for (int i = 0; i < q; ++i)
            for (const auto& e : a.m(t[i], t[i + 1])) {
                if (i > 0 && e.idx == a.unit) continue;
                Form nt(t.begin(), t.begin() + i);
                nt.push_back(e.idx);
                nt.insert(nt.end(), t.begin() + i + 2, t.end());
                mb.add(h.index[q - 1].at(nt), j, (i % 2 ? -1 : 1) * e.val);
            }
        for (const auto& e : a.m(t[q], t[0])) {
            Form nt{e.idx};
            nt.insert(nt.end(), t.begin() + 1, t.begin() + q);
            mb.add(h.index[q - 1].at(nt), j, (q % 2 ? -1 : 1) * e.val);
        }
    }
    return mb.build();
}

SparseMatrix hoch_B(const Algebra& a, const HochBasis& h, int q) {
    MatrixBuilder mb(static_cast<int>(h.basis[q + 1].size()), static_cast<int>(h.basis[q].size()));
    for (int j = 0; j < static_cast<int>(h.basis[q].size()); ++j) {
        const Form& t = h.basis[q][j];
        if (t[0] == a.unit) continue;
        for (int i = 0; i <= q; ++i) {
            Form nt{a.unit};
            nt.insert(nt.end(), t.begin() + i, t.end());
            nt.insert(nt.end(), t.begin(), t.begin() + i);
            mb.add(h.index[q + 1].at(nt), j, ((q * i) % 2) ? -1L : 1L);
        }
    }
    return mb.build();
}

void require_ungraded(const Algebra& a) {
    require_valid(a);
    for (int d : a.deg)
        if (d != 0) throw InvalidPresentation("the (b, B) oracle supports ungraded algebras only");
    if (a.has_diff()) throw InvalidPresentation("the (b, B) oracle supports algebras without differential only");
}

}  // namespace

SuperComplex connes_tsygan_total(const Algebra& a, int cap) {
    require_ungraded(a);
    HochBasis h = hoch_basis(a, cap);
    SuperComplex p;
    p.kind = "bB";
    p.s = 1;
    p.b0 = 0;
    p.off = 0;
    p.resize(cap);
    for (int q = 0; q <= cap; ++q) p.dims[0][q] = p.dims[1][q] = static_cast<int>(h.basis[q].size());
    for (int q = 1; q <= cap; ++q) p.V[0][q] = p.V[1][q] = hoch_b(a, h, q);
    for (int q = 0; q < cap; ++q) p.H[0][q] = p.H[1][q] = hoch_B(a, h, q);
    return p;
}

std::vector<int> hochschild_dims(const Algebra& a, int cap) {
    require_ungraded(a);
    HochBasis h = hoch_basis(a, cap);
    std::vector<SparseMatrix> b(cap + 1);
    for (int q = 1; q <= cap; ++q) b[q] = hoch_b(a, h, q);
    std::vector<int> out;
    for (int q = 0; q < cap; ++q) {
        SparseMatrix dout = q == 0 ? SparseMatrix(0, static_cast<int>(h.basis[0].size())) : b[q];
        out.push_back(homology_dim(b[q + 1], dout));
    }
    return out;
}

}  // namespace hcx
