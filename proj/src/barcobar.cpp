#include "hcx/barcobar.hpp"

#include <functional>

namespace hcx {

namespace {

std::string word_label(const Word& w, const std::vector<std::string>& labels) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += labels[w[i]];
    }
    return s + "]";
}

}  // namespace

int BarCoalgebra::index(const Word& w) const {
    long a = static_cast<long>(alphabet.size());
    long idx = 0, off = 0, p = 1;
    for (std::size_t l = 0; l < w.size(); ++l) {
        off += p;
        p *= a;
    }
    for (int x : w) {
        int q = letter_pos[x];
        if (q < 0) throw std::logic_error("bar: letter outside the alphabet");
        idx = idx * a + q;
    }
    return static_cast<int>(off + idx);
}

namespace {

BarCoalgebra build_bar(const Algebra& a, int cap, std::vector<int> alphabet) {
    for (int d : a.deg)
        if (d < 0) throw InvalidPresentation("bar: algebra must be nonnegatively graded");
    BarCoalgebra b;
    b.alg = a;
    b.cap = cap;
    b.letter_pos.assign(a.dim(), -1);
    for (std::size_t i = 0; i < alphabet.size(); ++i) b.letter_pos[alphabet[i]] = static_cast<int>(i);
    b.alphabet = std::move(alphabet);
    int n = static_cast<int>(b.alphabet.size());
    b.words.push_back({});
    for (int len = 1; len <= cap; ++len) {
        if (n == 0) break;
        Word w(len, 0);
        while (true) {
            Word u(len);
            for (int i = 0; i < len; ++i) u[i] = b.alphabet[w[i]];
            b.words.push_back(u);
            int i = len - 1;
            while (i >= 0 && w[i] == n - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    }
    int N = static_cast<int>(b.words.size());
    Coalgebra& c = b.coalg;
    c.name = "B(" + a.name + ")";
    c.counit = 0;
    c.comult.resize(N);
    c.labels.reserve(N);
    for (int k = 0; k < N; ++k) {
        const Word& w = b.words[k];
        int dg = 0;
        for (int x : w) dg += a.deg[x] + 1;
        c.deg.push_back(dg);
        c.weight.push_back(static_cast<int>(w.size()));
        c.labels.push_back(word_label(w, a.labels));
        for (std::size_t p = 0; p <= w.size(); ++p) {
            Word l(w.begin(), w.begin() + p), r(w.begin() + p, w.end());
            c.comult[k].push_back({b.index(l), b.index(r), 1});
        }
    }
    MatrixBuilder di(N, N), db(N, N);
    for (int k = 0; k < N; ++k) {
        const Word& w = b.words[k];
        int eps = 0;  // sum_{j<i} |a_j| + i  (0-based i)
        for (std::size_t i = 0; i < w.size(); ++i) {
            int si = (eps % 2) ? -1 : 1;
            for (const auto& e : a.d(w[i])) {
                Word v = w;
                v[i] = e.idx;
                di.add(b.index(v), k, si * e.val);
            }
            if (i + 1 < w.size()) {
                int sb = ((eps + a.deg[w[i]]) % 2) ? -1 : 1;
                for (const auto& e : a.m(w[i], w[i + 1])) {
                    Word v(w.begin(), w.begin() + i);
                    v.push_back(e.idx);
                    v.insert(v.end(), w.begin() + i + 2, w.end());
                    db.add(b.index(v), k, sb * e.val);
                }
            }
            eps += a.deg[w[i]] + 1;
        }
    }
    b.d_internal = di.build();
    b.d_bprime = db.build();
    SparseMatrix d = b.differential();
    c.diff.resize(N);
    for (int k = 0; k < N; ++k) c.diff[k] = d.col(k);
    return b;
}

}  // namespace

BarCoalgebra bar(const Algebra& a, int cap) {
    require_valid(a);
    std::vector<int> all(a.dim());
    for (int i = 0; i < a.dim(); ++i) all[i] = i;
    return build_bar(a, cap, std::move(all));
}

Algebra augmentation_adapted(const Algebra& a) {
    require_valid(a);
    if (!a.aug) throw InvalidPresentation("normalized bar: " + a.name + " has no augmentation");
    const auto& eps = *a.aug;
    int n = a.dim(), u = a.unit;
    for (int i = 0; i < n; ++i)
        for (const auto& e : a.d(i))
            if (sgn(eps[e.idx]) != 0 && sgn(e.val) != 0) {
                Scalar s = 0;
                for (const auto& f : a.d(i)) s += f.val * eps[f.idx];
                if (sgn(s) != 0) throw InvalidPresentation("normalized bar: augmentation is not a chain map");
            }
    bool plain = true;
    for (int i = 0; i < n; ++i)
        if (i != u && sgn(eps[i]) != 0) plain = false;
    if (plain) return a;
    // old basis e_i = new_i + eps_i 1; a vector in old coordinates x maps to
    // new coordinates with the unit slot picking up sum_i eps_i x_i
    auto conv = [&](const SparseVec& x) {
        std::vector<std::pair<int, Scalar>> t;
        Scalar uc = 0;
        for (const auto& e : x) {
            uc += e.val * eps[e.idx];
            if (e.idx != u) t.emplace_back(e.idx, e.val);
        }
        t.emplace_back(u, uc);
        return vec_from_pairs(std::move(t));
    };
    // new_i in old coordinates
    auto old_of = [&](int i) {
        SparseVec v{{i, 1}};
        if (i != u && sgn(eps[i]) != 0) v = vec_axpy(v, -eps[i], SparseVec{{u, 1}});
        return v;
    };
    Algebra r = a;
    r.name = a.name;
    for (int i = 0; i < n; ++i)
        if (i != u && sgn(eps[i]) != 0) r.labels[i] = "(" + a.labels[i] + "-" + eps[i].get_str() + ")";
    r.mult.clear();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec prod;
            for (const auto& x : old_of(i))
                for (const auto& y : old_of(j)) prod = vec_axpy(prod, x.val * y.val, a.m(x.idx, y.idx));
            SparseVec v = conv(prod);
            if (!v.empty()) r.set_mult(i, j, v);
        }
    if (a.has_diff())
        for (int i = 0; i < n; ++i) {
            SparseVec dv;
            for (const auto& x : old_of(i)) dv = vec_axpy(dv, x.val, a.d(x.idx));
            r.diff[i] = conv(dv);
        }
    std::vector<Scalar> au(n, Scalar(0));
    au[u] = 1;
    r.aug = au;
    require_valid(r);
    return r;
}

BarCoalgebra normalized_bar(const Algebra& a, int cap) {
    Algebra r = augmentation_adapted(a);
    std::vector<int> ideal;
    for (int i = 0; i < r.dim(); ++i)
        if (i != r.unit) ideal.push_back(i);
    BarCoalgebra b = build_bar(r, cap, std::move(ideal));
    b.normalized = true;
    b.coalg.name = "Bn(" + a.name + ")";
    return b;
}

// ---------------------------------------------------------------- tensor

int TensorCoalgebra::find(int i, int j) const {
    auto it = index.find({i, j});
    return it == index.end() ? -1 : it->second;
}

TensorCoalgebra tensor_coalgebras(const Coalgebra& c1, const Coalgebra& c2, int cap) {
    TensorCoalgebra t;
    Coalgebra& c = t.coalg;
    c.name = c1.name + "(x)" + c2.name;
    auto w1 = c1.weight.empty() ? c1.deg : c1.weight;
    auto w2 = c2.weight.empty() ? c2.deg : c2.weight;
    for (int i = 0; i < c1.dim(); ++i)
        for (int j = 0; j < c2.dim(); ++j)
            if (w1[i] + w2[j] <= cap) {
                t.index[{i, j}] = static_cast<int>(t.pairs.size());
                t.pairs.emplace_back(i, j);
                c.labels.push_back(c1.labels[i] + "(x)" + c2.labels[j]);
                c.deg.push_back(c1.deg[i] + c2.deg[j]);
                c.weight.push_back(w1[i] + w2[j]);
            }
    int N = static_cast<int>(t.pairs.size());
    c.counit = t.find(c1.counit, c2.counit);
    c.comult.resize(N);
    for (int k = 0; k < N; ++k) {
        auto [i, j] = t.pairs[k];
        std::map<std::pair<int, int>, Scalar> acc;
        for (const auto& x : c1.comult[i])
            for (const auto& y : c2.comult[j]) {
                int l = t.find(x.left, y.left), r = t.find(x.right, y.right);
                int s = koszul_pair_sign(c1.deg[x.right], c2.deg[y.left]);
                acc[{l, r}] += s * x.coef * y.coef;
            }
        for (auto& [key, v] : acc)
            if (sgn(v) != 0) c.comult[k].push_back({key.first, key.second, v});
    }
    if (c1.has_diff() || c2.has_diff()) {
        c.diff.resize(N);
        for (int k = 0; k < N; ++k) {
            auto [i, j] = t.pairs[k];
            std::vector<std::pair<int, Scalar>> terms;
            for (const auto& e : c1.d(i)) terms.emplace_back(t.find(e.idx, j), e.val);
            int s = (c1.deg[i] % 2) ? -1 : 1;
            for (const auto& e : c2.d(j)) terms.emplace_back(t.find(i, e.idx), s * e.val);
            c.diff[k] = vec_from_pairs(std::move(terms));
        }
    }
    return t;
}

TensorCoalgebra tensor_bar(const BarCoalgebra& b1, const BarCoalgebra& b2) {
    return tensor_coalgebras(b1.coalg, b2.coalg, std::min(b1.cap, b2.cap));
}

// ---------------------------------------------------------------- cobar

int CobarAlgebra::find(const Word& w) const {
    auto it = index.find(w);
    return it == index.end() ? -1 : it->second;
}

int CobarAlgebra::letter_deg(int l) const { return coalg.deg[letters[l]] - 1; }

CobarAlgebra cobar(const Coalgebra& c, int cap) {
    require_valid(c);
    for (int i = 0; i < c.dim(); ++i)
        if (c.deg[i] == 0 && i != c.counit) throw NonConnected("cobar: degree-0 part of '" + c.name + "' is not k");
    CobarAlgebra r;
    r.coalg = c;
    r.cap = cap;
    r.letter_of.assign(c.dim(), -1);
    for (int i = 0; i < c.dim(); ++i)
        if (i != c.counit && c.deg[i] <= cap) {
            r.letter_of[i] = static_cast<int>(r.letters.size());
            r.letters.push_back(i);
        }
    int nl = static_cast<int>(r.letters.size());
    // Words by increasing L, then by letters.
    std::vector<std::vector<Word>> by_load(cap + 1);
    by_load[0].push_back({});
    for (int L = 1; L <= cap; ++L)
        for (int l = 0; l < nl; ++l) {
            int dl = c.deg[r.letters[l]];
            if (dl > L) continue;
            for (const Word& w : by_load[L - dl]) {
                Word v;
                v.push_back(l);
                v.insert(v.end(), w.begin(), w.end());
                by_load[L].push_back(std::move(v));
            }
        }
    for (int L = 0; L <= cap; ++L) {
        std::sort(by_load[L].begin(), by_load[L].end());
        for (auto& w : by_load[L]) {
            int dg = 0;
            for (int l : w) dg += r.letter_deg(l);
            r.index[w] = static_cast<int>(r.words.size());
            r.words.push_back(w);
            r.deg.push_back(dg);
            r.load.push_back(L);
        }
    }
    // letter differentials
    r.letter_diff.resize(nl);
    for (int l = 0; l < nl; ++l) {
        int ci = r.letters[l];
        auto& out = r.letter_diff[l];
        for (const auto& e : c.d(ci))
            if (r.letter_of[e.idx] >= 0) out.push_back({Word{r.letter_of[e.idx]}, -e.val});
        for (const auto& x : c.comult[ci]) {
            if (x.left == c.counit || x.right == c.counit) continue;
            int s = (c.deg[x.left] % 2) ? -1 : 1;
            out.push_back({Word{r.letter_of[x.left], r.letter_of[x.right]}, s * x.coef});
        }
    }
    int N = static_cast<int>(r.words.size());
    MatrixBuilder di(N, N), db(N, N);
    for (int k = 0; k < N; ++k) {
        const Word& w = r.words[k];
        int pre = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            int s = (pre % 2) ? -1 : 1;
            for (const auto& [rep, coef] : r.letter_diff[w[i]]) {
                Word v(w.begin(), w.begin() + i);
                v.insert(v.end(), rep.begin(), rep.end());
                v.insert(v.end(), w.begin() + i + 1, w.end());
                int j = r.find(v);
                if (j < 0) throw std::logic_error("cobar: differential left the truncation");
                (rep.size() == 1 ? di : db).add(j, k, s * coef);
            }
            pre += r.letter_deg(w[i]);
        }
    }
    r.d_internal = di.build();
    r.d_bprime = db.build();
    return r;
}

Algebra CobarAlgebra::algebra() const {
    Algebra a;
    a.name = "Bc(" + coalg.name + ")";
    for (const auto& w : words) {
        std::string s = "<";
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + coalg.labels[letters[w[i]]];
        a.labels.push_back(s + ">");
    }
    a.deg = deg;
    a.unit = 0;
    int N = static_cast<int>(words.size());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (load[i] + load[j] > cap) continue;
            Word v = words[i];
            v.insert(v.end(), words[j].begin(), words[j].end());
            a.set_mult(i, j, {{find(v), 1}});
        }
    SparseMatrix d = differential();
    a.diff.resize(N);
    for (int k = 0; k < N; ++k) a.diff[k] = d.col(k);
    std::vector<Scalar> aug(N, 0);
    aug[0] = 1;
    a.aug = aug;
    return a;
}

Complex complex_from(const SparseMatrix& d, const std::vector<int>& deg, int trusted_hi) {
    Complex cx;
    cx.diff.shift = -1;
    std::map<int, std::vector<int>> members;
    for (int i = 0; i < static_cast<int>(deg.size()); ++i) members[deg[i]].push_back(i);
    std::vector<int> local(deg.size());
    for (auto& [n, idx] : members) {
        auto& labels = cx.space.comps[n];
        for (std::size_t k = 0; k < idx.size(); ++k) {
            local[idx[k]] = static_cast<int>(k);
            labels.push_back(std::to_string(idx[k]));
        }
    }
    for (auto& [n, idx] : members) {
        if (!members.count(n - 1)) continue;
        MatrixBuilder mb(static_cast<int>(members[n - 1].size()), static_cast<int>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (const auto& e : d.col(idx[k])) {
                if (deg[e.idx] != n - 1) throw std::logic_error("complex_from: differential is not of degree -1");
                mb.add(local[e.idx], static_cast<int>(k), e.val);
            }
        cx.diff.blocks[n] = mb.build();
    }
    cx.trusted_lo = members.empty() ? 0 : members.begin()->first;
    cx.trusted_hi = trusted_hi;
    return cx;
}

}  // namespace hcx
