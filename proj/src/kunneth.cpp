#include "hcx/kunneth.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace hcx {

KunnethPipeline build_pipeline(const Algebra& a1, const Algebra& a2, int cap) {
    KunnethPipeline k;
    k.cap = cap;
    k.sp = shuffle_pair(a1, a2, cap, true);
    k.S = shuffle_map(k.sp);
    k.X1 = x_complex(k.sp.b1.coalg, cap, false);
    k.X2 = x_complex(k.sp.b2.coalg, cap, false);
    k.T = completed_tensor(k.X1.P, k.X2.P, cap);
    k.XX = x2_complex(k.sp.src.coalg, cap, false);
    auto f12 = std::make_shared<const CoForms>(k.sp.tgt.coalg, cap, 2);
    k.X12 = x_complex(f12, cap, false);
    k.XX12 = x2_complex(f12, cap, false);
    k.I = inclusion_I(k.X12, k.XX12);
    k.Sbar = sbar(k);
    k.P = tensor_to_x2(k);
    try {
        k.cq = cq_pairing(k);
    } catch (const NoChainExtension& e) {
        k.cq_error = e.what();
    }
    return k;
}

SuperMap sbar(const KunnethPipeline& k) { return induced_map(k.S, k.XX, k.XX12); }


namespace {

SuperMap solve_upto(const SuperComplex& src, const SuperComplex& tgt, const std::vector<FixedEntry>& fixed, int top,
                    bool* ok) {
    std::array<std::vector<int>, 2> base;
    int nv = 0;
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= top; ++n) {
            base[t].push_back(nv);
            nv += tgt.dim(t, n) * src.dim(t, n);
        }
    auto var = [&](int t, int n, int i, int j) { return base[t][n] + i * src.dim(t, n) + j; };
    std::vector<std::vector<std::pair<int, Scalar>>> rows;
    std::vector<Scalar> rhs;
    // F[tf][nf] R - L F[t][n] = 0, entrywise
    auto add_equations = [&](int tf, int nf, const SparseMatrix& R, int t, int n, const SparseMatrix& L) {
        int nrows = L.rows(), ncols = R.cols();
        std::vector<std::map<int, Scalar>> eq(static_cast<std::size_t>(nrows) * ncols);
        for (int c = 0; c < ncols; ++c)
            for (const auto& e : R.col(c))
                for (int i = 0; i < nrows; ++i) eq[i * ncols + c][var(tf, nf, i, e.idx)] += e.val;
        for (int l = 0; l < L.cols(); ++l)
            for (const auto& e : L.col(l))
                for (int c = 0; c < ncols; ++c) eq[e.idx * ncols + c][var(t, n, l, c)] -= e.val;
        for (auto& m : eq) {
            std::vector<std::pair<int, Scalar>> r;
            for (auto& [v, x] : m)
                if (sgn(x) != 0) r.emplace_back(v, x);
            if (!r.empty()) {
                rows.push_back(std::move(r));
                rhs.push_back(0);
            }
        }
    };
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= top; ++n) {
            if (src.dim(t, n) == 0) continue;
            if (tgt.dim(1 - t, n) > 0) add_equations(1 - t, n, src.H[t][n], t, n, tgt.H[t][n]);
            if (n >= 1 && tgt.dim(t, n - 1) > 0) add_equations(t, n - 1, src.V[t][n], t, n, tgt.V[t][n]);
        }
    for (const auto& f : fixed) {
        if (f.n > top) continue;
        rows.push_back({{var(f.t, f.n, f.i, f.j), Scalar(1)}});
        rhs.push_back(f.v);
    }
    std::vector<std::vector<std::pair<int, Scalar>>> by_col(nv);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto& [v, x] : rows[r]) by_col[v].emplace_back(static_cast<int>(r), x);
    std::vector<SparseVec> cols(nv);
    for (int v = 0; v < nv; ++v) cols[v] = vec_from_pairs(std::move(by_col[v]));
    SparseMatrix A(static_cast<int>(rows.size()), nv, cols);
    std::vector<std::pair<int, Scalar>> bt;
    for (std::size_t r = 0; r < rhs.size(); ++r)
        if (sgn(rhs[r]) != 0) bt.emplace_back(static_cast<int>(r), rhs[r]);
    auto x = solve(A, vec_from_pairs(std::move(bt)));
    SuperMap f;
    *ok = x.has_value();
    if (!x) return f;
    std::vector<Scalar> val(nv, Scalar(0));
    for (const auto& e : *x) val[e.idx] = e.val;
    for (int t = 0; t < 2; ++t) {
        f.F[t].resize(src.cap + 1);
        for (int n = 0; n <= src.cap; ++n) {
            MatrixBuilder mb(tgt.dim(t, n), src.dim(t, n));
            if (n <= top)
                for (int i = 0; i < tgt.dim(t, n); ++i)
                    for (int j = 0; j < src.dim(t, n); ++j) {
                        const Scalar& v = val[var(t, n, i, j)];
                        if (sgn(v) != 0) mb.add(i, j, v);
                    }
            f.F[t][n] = mb.build();
        }
    }
    return f;
}

// Position of the Omega^0 form (c) in the even part of an X-complex.
int omega0_coordinate(const XComplex& x, int c, int* weight) {
    const Forms& f = x.forms->algebra_forms();
    auto l = f.locate(Form{c});
    *weight = l.n;
    auto v = x.subs[0][l.n].try_coords(SparseVec{{x.ambient_offset(0, l.n, 0) + l.i, 1}});
    if (!v || v->size() != 1) return -1;
    return v->front().idx;
}

// Matching Omega^0 (x) Omega^0 coordinates: (position in X^2 even, position in T even) per weight.
std::vector<std::vector<std::pair<int, int>>> omega0_matching(const KunnethPipeline& k,
                                                              std::vector<std::vector<int>>* tensor_rows) {
    const Forms& fs = k.XX.forms->algebra_forms();
    std::vector<std::vector<std::pair<int, int>>> out(k.cap + 1);
    tensor_rows->assign(k.cap + 1, {});
    for (int n = 0; n <= k.cap; ++n) {
        auto blocks = tensor_blocks(k.X1.P, k.X2.P, 0, n);
        for (const auto& b : blocks)
            if (b.t1 == 0)
                for (int i = b.offset; i < b.offset + b.size; ++i) (*tensor_rows)[n].push_back(i);
        const SubspaceBasis& sub = k.XX.subs[0][n];
        int d0 = k.XX.forms->dim(0, n);
        for (int j = 0; j < sub.dim(); ++j) {
            if (sub.keys[j] >= d0) continue;
            int c = fs.basis(0, n)[sub.keys[j]][0];
            auto [c1, c2] = k.sp.src.pairs[c];
            int n1, n2;
            int p1 = omega0_coordinate(k.X1, c1, &n1);
            int p2 = omega0_coordinate(k.X2, c2, &n2);
            if (p1 < 0 || p2 < 0) continue;
            for (const auto& b : blocks)
                if (b.t1 == 0 && b.n1 == n1) out[n].emplace_back(j, b.offset + p1 * k.X2.P.dim(0, n2) + p2);
        }
    }
    return out;
}

// Shuffle product of coalgebra-side forms f1 over C1 and f2 over C2, as a
// combination of forms over C1 (x) C2. Slots of the second form are moved past
// the barred slots of the first with Koszul signs on shifted degrees.
std::vector<std::pair<Form, Scalar>> form_shuffle(const KunnethPipeline& k, const Form& f1, const Form& f2) {
    const Coalgebra& c1 = k.sp.b1.coalg;
    const Coalgebra& c2 = k.sp.b2.coalg;
    std::vector<std::pair<Form, Scalar>> out;
    int head = k.sp.src.find(f1[0], f2[0]);
    if (head < 0) return out;
    int p = static_cast<int>(f1.size()) - 1, q = static_cast<int>(f2.size()) - 1;
    int s0 = 0;
    for (int i = 1; i <= p; ++i) s0 += c1.deg[f1[i]] + 1;
    s0 *= c2.deg[f2[0]];
    std::vector<int> letters, sdeg;
    for (int i = 1; i <= p; ++i) {
        letters.push_back(k.sp.src.find(f1[i], c2.counit));
        sdeg.push_back(c1.deg[f1[i]] + 1);
    }
    for (int j = 1; j <= q; ++j) {
        letters.push_back(k.sp.src.find(c1.counit, f2[j]));
        sdeg.push_back(c2.deg[f2[j]] + 1);
    }
    for (const auto& perm : shuffles(p, q)) {
        Form g{head};
        bool ok = true;
        for (int x : perm) {
            if (letters[x] < 0) ok = false;
            g.push_back(letters[x]);
        }
        if (!ok) continue;
        int s = koszul_sign(perm, sdeg) * ((s0 & 1) ? -1 : 1);
        out.push_back({std::move(g), Scalar(s)});
    }
    return out;
}

// Image under the form shuffle of the T basis element i of parity t, weight n,
// in coordinates of the X^2 part; nullopt if it leaves that part.
std::optional<SparseVec> shuffle_image(const KunnethPipeline& k, int t, int n, int i) {
    for (const auto& b : tensor_blocks(k.X1.P, k.X2.P, t, n)) {
        if (i < b.offset || i >= b.offset + b.size) continue;
        int d2 = k.X2.P.dim(b.t2, b.n2);
        int i1 = (i - b.offset) / d2, i2 = (i - b.offset) % d2;
        const SparseVec& v1 = k.X1.subs[b.t1][b.n1].vecs[i1];
        const SparseVec& v2 = k.X2.subs[b.t2][b.n2].vecs[i2];
        const Forms& g1 = k.X1.forms->algebra_forms();
        const Forms& g2 = k.X2.forms->algebra_forms();
        const Forms& g = k.XX.forms->algebra_forms();
        // ambient slots -> forms: the X ambient is one form degree per parity
        int k1 = k.X1.layout[b.t1][0], k2 = k.X2.layout[b.t2][0];
        std::vector<std::pair<int, Scalar>> amb;
        for (const auto& e1 : v1)
            for (const auto& e2 : v2)
                for (auto& [f, c] : form_shuffle(k, g1.basis(k1, b.n1)[e1.idx], g2.basis(k2, b.n2)[e2.idx])) {
                    auto l = g.locate(f);
                    int off = k.XX.ambient_offset(t, n, l.k);
                    if (off < 0) return std::nullopt;
                    amb.emplace_back(off + l.i, c * e1.val * e2.val);
                }
        return k.XX.subs[t][n].try_coords(vec_from_pairs(std::move(amb)));
    }
    return std::nullopt;
}

}  // namespace

SuperMap solve_chain_extension(const SuperComplex& src, const SuperComplex& tgt, const std::vector<FixedEntry>& fixed,
                               const std::string& what) {
    bool ok = false;
    SuperMap f = solve_upto(src, tgt, fixed, src.cap, &ok);
    if (!ok) {
        int bad = 0;
        for (int top = 0; top <= src.cap; ++top) {
            solve_upto(src, tgt, fixed, top, &ok);
            if (!ok) {
                bad = top;
                break;
            }
        }
        throw NoChainExtension(what + ": chain-map equations are inconsistent at weight " + std::to_string(bad));
    }
    std::string why;
    if (!f.is_chain_map(src, tgt, &why)) throw NoChainExtension(what + ": solved map is not a chain map: " + why);
    return f;
}

SuperMap cq_pairing(const KunnethPipeline& k) {
    std::vector<std::vector<int>> trows;
    auto match = omega0_matching(k, &trows);
    std::vector<FixedEntry> fixed;
    for (int n = 0; n <= k.cap; ++n) {
        // every Omega^0 column of X^2 is fixed on the even blocks of the tensor
        std::map<int, std::vector<int>> hit;
        for (auto [j, i] : match[n]) hit[j].push_back(i);
        const SubspaceBasis& sub = k.XX.subs[0][n];
        int d0 = k.XX.forms->dim(0, n);
        for (int j = 0; j < sub.dim(); ++j) {
            if (sub.keys[j] >= d0) continue;
            for (int i = 0; i < k.T.dim(0, n); ++i) {
                bool one = std::count(hit[j].begin(), hit[j].end(), i) > 0;
                fixed.push_back({0, n, i, j, Scalar(one ? 1 : 0)});
            }
        }
    }
    return solve_chain_extension(k.XX.P, k.T, fixed, "cq_pairing");
}

SuperMap tensor_to_x2(const KunnethPipeline& k) {
    std::vector<FixedEntry> fixed;
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= k.cap; ++n)
            for (int i = 0; i < k.T.dim(t, n); ++i) {
                auto img = shuffle_image(k, t, n, i);
                if (!img) continue;
                for (int j = 0; j < k.XX.P.dim(t, n); ++j) fixed.push_back({t, n, j, i, vec_get(*img, j)});
            }
    return solve_chain_extension(k.T, k.XX.P, fixed, "tensor_to_x2");
}

namespace {

std::optional<SparseMatrix> inverse(const SparseMatrix& m) {
    if (m.rows() != m.cols() || rank(m) != m.rows()) return std::nullopt;
    return solve_many(m, SparseMatrix::identity(m.rows()));
}

}  // namespace

HomologyMaps s_hat_on_homology(const KunnethPipeline& k) {
    HomologyMaps h;
    for (int e = 0; e < 2; ++e) {
        int T = tower_top(k.XX.P, e);
        h.T[e] = T;
        auto hT = stable_homology(k.T, T);
        auto hXX = stable_homology(k.XX.P, T);
        auto h12 = stable_homology(k.X12.P, T);
        auto hXX12 = stable_homology(k.XX12.P, T);
        h.I[e] = stable_map(k.I, k.X12.P, h12, k.XX12.P, hXX12);
        h.Sbar[e] = stable_map(k.Sbar, k.XX.P, hXX, k.XX12.P, hXX12);
        h.P[e] = stable_map(k.P, k.T, hT, k.XX.P, hXX);
        auto ii = inverse(h.I[e]);
        if (!ii) throw SingularConstituent("H(I) is not invertible in parity " + std::to_string(e) + " at T = " + std::to_string(T));
        if (!inverse(h.P[e])) throw SingularConstituent("H(P) is not invertible in parity " + std::to_string(e) + " at T = " + std::to_string(T));
        h.s_hat[e] = *ii * h.Sbar[e] * h.P[e];
    }
    return h;
}

namespace {

bool square_commutes(const KunnethPipeline& k) {
    auto xs = x_complex(k.XX.forms, k.cap, false);
    SuperMap i_src = inclusion_I(xs, k.XX);
    SuperMap x_s = induced_map(k.S, xs, k.X12);
    return compose(k.I, x_s).F == compose(k.Sbar, i_src).F;
}

std::array<int, 2> reading(const SuperComplex& p) {
    auto r = periodic_reading(p);
    return {r.even, r.odd};
}

}  // namespace

KunnethCapResult kunneth_at_cap(const Algebra& a1, const Algebra& a2, int cap) {
    KunnethCapResult r;
    r.cap = cap;
    try {
        KunnethPipeline k = build_pipeline(a1, a2, cap);
        r.cq_exists = k.cq.has_value();
        r.cq_error = k.cq_error;
        r.cc1 = reading(k.X1.P);
        r.cc2 = reading(k.X2.P);
        r.tensor = reading(k.T);
        r.cc12 = reading(k.X12.P);
        r.x2 = reading(k.XX.P);
        r.dim_identity = true;
        for (int e = 0; e < 2; ++e) {
            int want = r.cc1[0] * r.cc2[e] + r.cc1[1] * r.cc2[1 - e];
            if (r.tensor[e] != want) r.dim_identity = false;
        }
        r.square = square_commutes(k);
        HomologyMaps h = s_hat_on_homology(k);
        for (int e = 0; e < 2; ++e) {
            r.T[e] = h.T[e];
            r.rank_i[e] = rank(h.I[e]);
            r.rank_sbar[e] = rank(h.Sbar[e]);
            r.rank_p[e] = rank(h.P[e]);
            if (k.cq) {
                auto hT = stable_homology(k.T, h.T[e]);
                auto hXX = stable_homology(k.XX.P, h.T[e]);
                r.rank_cq_p[e] = rank(stable_map(*k.cq, k.XX.P, hXX, k.T, hT) * h.P[e]);
            }
            r.rank_s_hat[e] = rank(h.s_hat[e]);
        }
        bool ok = r.dim_identity && r.square && r.tensor == r.cc12 && r.cc12 == r.x2;
        for (int e = 0; e < 2; ++e)
            ok = ok && r.rank_sbar[e] == r.x2[e] && r.rank_i[e] == r.cc12[e] && r.rank_p[e] == r.tensor[e] &&
                 r.rank_s_hat[e] == r.tensor[e] && (!r.cq_exists || r.rank_cq_p[e] == r.tensor[e]) &&
                 h.s_hat[e].rows() == h.s_hat[e].cols();
        r.pass = ok;
    } catch (const std::exception& e) {
        r.error = e.what();
        r.pass = false;
    }
    return r;
}

KunnethReport kunneth_verify(const Algebra& a1, const Algebra& a2, int cap, int jobs) {
    KunnethReport rep;
    rep.a1 = a1.name;
    rep.a2 = a2.name;
    rep.cap = cap;
    if (jobs > 1) {
        std::thread th([&] { rep.hi = kunneth_at_cap(a1, a2, cap + 1); });
        rep.lo = kunneth_at_cap(a1, a2, cap);
        th.join();
    } else {
        rep.lo = kunneth_at_cap(a1, a2, cap);
        rep.hi = kunneth_at_cap(a1, a2, cap + 1);
    }
    rep.stable = rep.lo.tensor == rep.hi.tensor && rep.lo.cc12 == rep.hi.cc12 && rep.lo.x2 == rep.hi.x2;
    rep.verdict = rep.stable && rep.lo.pass && rep.hi.pass;
    return rep;
}

}  // namespace hcx
