#include "hcx/shuffle.hpp"

namespace hcx {

std::vector<std::vector<int>> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("shuffles: negative length");
    std::vector<std::vector<int>> out;
    std::vector<int> slots;  // slots of the first word, increasing
    auto emit = [&] {
        std::vector<int> perm(p + q);
        int a = 0, b = p;
        std::size_t s = 0;
        for (int i = 0; i < p + q; ++i) {
            if (s < slots.size() && slots[s] == i) {
                perm[i] = a++;
                ++s;
            } else {
                perm[i] = b++;
            }
        }
        out.push_back(std::move(perm));
    };
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(slots.size()) == p) {
            emit();
            return;
        }
        int left = p - static_cast<int>(slots.size());
        for (int i = start; i + left <= p + q; ++i) {
            slots.push_back(i);
            self(self, i + 1);
            slots.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

ShufflePair shuffle_pair(const Algebra& a1, const Algebra& a2, int cap, bool normalized) {
    ShufflePair sp;
    sp.cap = cap;
    sp.normalized = normalized;
    auto mk = normalized ? &normalized_bar : &bar;
    sp.b1 = mk(a1, cap);
    sp.b2 = mk(a2, cap);
    sp.src = tensor_bar(sp.b1, sp.b2);
    sp.tgt = mk(tensor_algebras(sp.b1.alg, sp.b2.alg), cap);
    return sp;
}

TwistingCochain shuffle_cochain(const ShufflePair& sp) {
    const Algebra& t = sp.tgt.alg;
    int n2 = sp.b2.alg.dim();
    int u1 = sp.b1.alg.unit, u2 = sp.b2.alg.unit;
    TwistingCochain th;
    th.source = sp.src.coalg;
    th.target = t;
    std::vector<SparseVec> cols(sp.src.pairs.size());
    for (std::size_t k = 0; k < sp.src.pairs.size(); ++k) {
        auto [i, j] = sp.src.pairs[k];
        const Word& w1 = sp.b1.words[i];
        const Word& w2 = sp.b2.words[j];
        if (w1.size() == 1 && w2.empty()) cols[k] = {{w1[0] * n2 + u2, 1}};
        if (w1.empty() && w2.size() == 1) cols[k] = {{u1 * n2 + w2[0], 1}};
    }
    th.map = SparseMatrix(t.dim(), static_cast<int>(cols.size()), cols);
    return th;
}

SparseMatrix shuffle_map(const ShufflePair& sp) { return lift(shuffle_cochain(sp), sp.tgt); }

SparseMatrix shuffle_formula(const ShufflePair& sp) {
    int n2 = sp.b2.alg.dim();
    int u1 = sp.b1.alg.unit, u2 = sp.b2.alg.unit;
    const auto& d1 = sp.b1.alg.deg;
    const auto& d2 = sp.b2.alg.deg;
    int N = static_cast<int>(sp.src.pairs.size());
    MatrixBuilder mb(sp.tgt.coalg.dim(), N);
    for (int k = 0; k < N; ++k) {
        auto [i, j] = sp.src.pairs[k];
        const Word& x = sp.b1.words[i];
        const Word& y = sp.b2.words[j];
        int p = static_cast<int>(x.size()), q = static_cast<int>(y.size());
        std::vector<int> letters, sdeg;
        for (int a : x) {
            letters.push_back(a * n2 + u2);
            sdeg.push_back(d1[a] + 1);
        }
        for (int b : y) {
            letters.push_back(u1 * n2 + b);
            sdeg.push_back(d2[b] + 1);
        }
        for (const auto& perm : shuffles(p, q)) {
            Word w(p + q);
            for (int s = 0; s < p + q; ++s) w[s] = letters[perm[s]];
            mb.add(sp.tgt.index(w), k, koszul_sign(perm, sdeg));
        }
    }
    return mb.build();
}

SparseMatrix shuffle_map_checked(const ShufflePair& sp) {
    SparseMatrix a = shuffle_map(sp);
    SparseMatrix b = shuffle_formula(sp);
    for (int k = 0; k < a.cols(); ++k)
        if (!vec_axpy(a.col(k), -1, b.col(k)).empty())
            throw FormulaMismatch("shuffle map: lift and formula differ on " + sp.src.coalg.labels[k]);
    return a;
}

SparseMatrix alexander_whitney(const ShufflePair& sp) {
    const Algebra& a1 = sp.b1.alg;
    const Algebra& a2 = sp.b2.alg;
    if (!a1.aug || !a2.aug) throw std::invalid_argument("alexander_whitney: both factors need an augmentation");
    int n2 = a2.dim();
    const auto& t = sp.tgt;
    MatrixBuilder mb(sp.src.coalg.dim(), t.coalg.dim());
    for (int k = 0; k < t.coalg.dim(); ++k) {
        const Word& w = t.words[k];
        int n = static_cast<int>(w.size());
        for (int p = 0; p <= n; ++p) {
            // pi1 on the first p letters, pi2 on the rest; each letter a|b
            // contributes aug2(b) a or aug1(a) b
            Scalar c = 1;
            Word x, y;
            for (int s = 0; s < p && sgn(c) != 0; ++s) {
                c *= (*a2.aug)[w[s] % n2];
                x.push_back(w[s] / n2);
            }
            for (int s = p; s < n && sgn(c) != 0; ++s) {
                c *= (*a1.aug)[w[s] / n2];
                y.push_back(w[s] % n2);
            }
            if (sgn(c) == 0) continue;
            int r = sp.src.find(sp.b1.index(x), sp.b2.index(y));
            if (r < 0) throw std::logic_error("alexander_whitney: image outside truncation");
            mb.add(r, k, c);
        }
    }
    return mb.build();
}

SparseMatrix normalized_part(const ShufflePair& sp) {
    const BarCoalgebra* bs[2] = {&sp.b1, &sp.b2};
    // a -> a - aug(a) 1 on non-unit letters; words through a unit letter are skipped
    auto expand = [](const BarCoalgebra& b, const Word& w) {
        const Algebra& a = b.alg;
        std::vector<std::pair<Word, Scalar>> terms{{Word{}, Scalar(1)}};
        for (int l : w) {
            if (l == a.unit) return std::vector<std::pair<Word, Scalar>>{};
            Scalar e = a.aug ? (*a.aug)[l] : Scalar(0);
            std::vector<std::pair<Word, Scalar>> nt;
            for (auto& [u, c] : terms) {
                Word v = u;
                v.push_back(l);
                nt.push_back({v, c});
                if (sgn(e) != 0) {
                    Word z = u;
                    z.push_back(a.unit);
                    nt.push_back({z, -c * e});
                }
            }
            terms.swap(nt);
        }
        return terms;
    };
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < sp.src.pairs.size(); ++k) {
        auto [i, j] = sp.src.pairs[k];
        auto t1 = expand(*bs[0], sp.b1.words[i]);
        auto t2 = expand(*bs[1], sp.b2.words[j]);
        if (t1.empty() || t2.empty()) continue;
        std::vector<std::pair<int, Scalar>> terms;
        for (auto& [u, c] : t1)
            for (auto& [v, d] : t2) terms.emplace_back(sp.src.find(sp.b1.index(u), sp.b2.index(v)), c * d);
        cols.push_back(vec_from_pairs(std::move(terms)));
    }
    return SparseMatrix(sp.src.coalg.dim(), static_cast<int>(cols.size()), cols);
}

}  // namespace hcx
