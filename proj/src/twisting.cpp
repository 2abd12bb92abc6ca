#include "hcx/twisting.hpp"

#include <map>

namespace hcx {

SparseMatrix coalgebra_differential(const Coalgebra& c) {
    std::vector<SparseVec> cols(c.dim());
    for (int i = 0; i < c.dim(); ++i) cols[i] = c.d(i);
    return SparseMatrix(c.dim(), c.dim(), cols);
}

namespace {

SparseMatrix algebra_differential(const Algebra& a) {
    std::vector<SparseVec> cols(a.dim());
    for (int i = 0; i < a.dim(); ++i) cols[i] = a.d(i);
    return SparseMatrix(a.dim(), a.dim(), cols);
}

}  // namespace

SparseMatrix twisting_defect(const TwistingCochain& t) {
    const Coalgebra& c = t.source;
    const Algebra& a = t.target;
    SparseMatrix dt = algebra_differential(a) * t.map + t.map * coalgebra_differential(c);
    MatrixBuilder sq(a.dim(), c.dim());
    for (int k = 0; k < c.dim(); ++k)
        for (const auto& x : c.comult[k]) {
            const auto& l = t.map.col(x.left);
            const auto& r = t.map.col(x.right);
            if (l.empty() || r.empty()) continue;
            int s = (c.deg[x.left] & 1) ? -1 : 1;
            for (const auto& e : l)
                for (const auto& f : r)
                    for (const auto& g : a.m(e.idx, f.idx)) sq.add(g.idx, k, s * x.coef * e.val * f.val * g.val);
        }
    return dt + sq.build();
}

TwistCheck is_twisting_cochain(const TwistingCochain& t) {
    TwistCheck r;
    for (int j = 0; j < t.map.cols(); ++j)
        for (const auto& e : t.map.col(j))
            if (t.target.deg[e.idx] != t.source.deg[j] - 1) {
                r.ok = false;
                r.witness = "degree mismatch on " + t.source.labels[j];
                return r;
            }
    SparseMatrix def = twisting_defect(t);
    for (int j = 0; j < def.cols(); ++j)
        if (!def.col(j).empty()) {
            r.ok = false;
            r.witness = t.source.labels[j];
            return r;
        }
    return r;
}

TwistingCochain universal_cochain(const BarCoalgebra& b) {
    TwistingCochain t;
    t.source = b.coalg;
    t.target = b.alg;
    std::vector<SparseVec> cols(b.coalg.dim());
    for (int k = 0; k < b.coalg.dim(); ++k)
        if (b.words[k].size() == 1) cols[k] = {{b.words[k][0], 1}};
    t.map = SparseMatrix(b.alg.dim(), b.coalg.dim(), cols);
    return t;
}

SparseMatrix lift_unchecked(const TwistingCochain& t, const BarCoalgebra& b) {
    const Coalgebra& c = t.source;
    int N = c.dim();
    MatrixBuilder mb(b.coalg.dim(), N);
    for (int k = 0; k < N; ++k) {
        if (k == c.counit) mb.add(0, k, 1L);
        // iterated coproduct, dropping pieces killed by theta
        std::vector<std::pair<std::vector<int>, Scalar>> layer{{{k}, Scalar(1)}};
        while (!layer.empty()) {
            std::vector<std::pair<std::vector<int>, Scalar>> next;
            for (auto& [seq, coef] : layer) {
                // emit theta^{(x)n} on seq
                std::vector<std::pair<Word, Scalar>> words{{Word{}, coef}};
                for (int x : seq) {
                    std::vector<std::pair<Word, Scalar>> nw;
                    for (auto& [w, v] : words)
                        for (const auto& e : t.map.col(x)) {
                            Word u = w;
                            u.push_back(e.idx);
                            nw.push_back({std::move(u), v * e.val});
                        }
                    words.swap(nw);
                    if (words.empty()) break;
                }
                for (auto& [w, v] : words) {
                    if (static_cast<int>(w.size()) > b.cap) throw std::out_of_range("lift: word beyond the bar's cap");
                    mb.add(b.index(w), k, v);
                }
                // split the last piece
                int last = seq.back();
                for (const auto& x : c.comult[last]) {
                    if (x.left == c.counit || x.right == c.counit) continue;
                    if (t.map.col(x.left).empty()) continue;
                    std::vector<int> s2(seq.begin(), seq.end() - 1);
                    s2.push_back(x.left);
                    s2.push_back(x.right);
                    next.push_back({std::move(s2), coef * x.coef});
                }
            }
            layer.swap(next);
        }
    }
    return mb.build();
}

SparseMatrix lift(const TwistingCochain& t, const BarCoalgebra& b) {
    auto chk = is_twisting_cochain(t);
    if (!chk.ok) throw NotATwistingCochain("lift: not a twisting cochain (witness " + chk.witness + ")");
    return lift_unchecked(t, b);
}

TwistingCochain corestrict(const SparseMatrix& f, const Coalgebra& source, const BarCoalgebra& b) {
    TwistingCochain t;
    t.source = source;
    t.target = b.alg;
    std::vector<SparseVec> cols(f.cols());
    for (int j = 0; j < f.cols(); ++j) {
        std::vector<std::pair<int, Scalar>> terms;
        for (const auto& e : f.col(j))
            if (b.words[e.idx].size() == 1) terms.emplace_back(b.words[e.idx][0], e.val);
        cols[j] = vec_from_pairs(std::move(terms));
    }
    t.map = SparseMatrix(b.alg.dim(), f.cols(), cols);
    return t;
}

bool is_coalgebra_map(const SparseMatrix& f, const Coalgebra& src, const Coalgebra& tgt, std::string* witness) {
    int nt = tgt.dim();
    for (int k = 0; k < src.dim(); ++k) {
        std::map<std::pair<int, int>, Scalar> lhs, rhs;
        for (const auto& e : f.col(k))
            for (const auto& x : tgt.comult[e.idx]) lhs[{x.left, x.right}] += e.val * x.coef;
        for (const auto& x : src.comult[k])
            for (const auto& a : f.col(x.left))
                for (const auto& b : f.col(x.right)) rhs[{a.idx, b.idx}] += x.coef * a.val * b.val;
        for (auto* m : {&lhs, &rhs})
            for (auto it = m->begin(); it != m->end();) it = sgn(it->second) == 0 ? m->erase(it) : std::next(it);
        if (lhs != rhs) {
            if (witness) *witness = src.labels[k];
            return false;
        }
    }
    (void)nt;
    return true;
}

bool is_chain_map(const SparseMatrix& f, const Coalgebra& src, const Coalgebra& tgt, std::string* witness) {
    SparseMatrix a = coalgebra_differential(tgt) * f;
    SparseMatrix b = f * coalgebra_differential(src);
    for (int j = 0; j < f.cols(); ++j) {
        SparseVec d = vec_axpy(a.col(j), -1, b.col(j));
        if (!d.empty()) {
            if (witness) *witness = src.labels[j];
            return false;
        }
    }
    return true;
}

}  // namespace hcx
