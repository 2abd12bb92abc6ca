#include "hcx/checks.hpp"

#include "hcx/textio.hpp"

#include <atomic>
#include <sstream>

namespace hcx {

namespace {

bool ungraded_plain(const Algebra& a) {
    if (a.has_diff()) return false;
    for (int d : a.deg)
        if (d != 0) return false;
    return true;
}

std::string square_zero(const SparseMatrix& d, const SparseMatrix& b) {
    if (!(d * d).is_zero()) return "d^2 != 0";
    if (!(b * b).is_zero()) return "b'^2 != 0";
    if (!(d * b + b * d).is_zero()) return "d b' + b' d != 0";
    return "";
}

std::string col_label(const Coalgebra& c, int j) { return c.labels[j]; }

}  // namespace

CheckResult text_round_trip(const Algebra& a) {
    CheckResult r{"text_round_trip", a.name, false, ""};
    std::string t = to_text(a);
    auto p = parse_presentation(t);
    auto* b = std::get_if<Algebra>(&p);
    if (!b) {
        r.detail = "parsed as a coalgebra";
        return r;
    }
    bool same = b->labels == a.labels && b->deg == a.deg && b->unit == a.unit && b->aug == a.aug &&
                b->has_diff() == a.has_diff();
    for (int i = 0; same && i < a.dim(); ++i) {
        same = b->d(i) == a.d(i);
        for (int j = 0; same && j < a.dim(); ++j) same = b->m(i, j) == a.m(i, j);
    }
    if (!same) {
        r.detail = "constants differ after parsing";
        return r;
    }
    r.pass = to_text(*b) == t;
    if (!r.pass) r.detail = "text differs after a second export";
    return r;
}

CheckResult bar_square_zero(const Algebra& a, int cap) {
    CheckResult r{"bar_square_zero", a.name + " W=" + std::to_string(cap), false, ""};
    auto b = bar(a, cap);
    r.detail = square_zero(b.d_internal, b.d_bprime);
    r.pass = r.detail.empty();
    if (r.pass) r.detail = "dim " + std::to_string(b.coalg.dim());
    return r;
}

CheckResult cobar_square_zero(const Coalgebra& c, int cap) {
    CheckResult r{"cobar_square_zero", c.name + " L=" + std::to_string(cap), false, ""};
    auto b = cobar(c, cap);
    r.detail = square_zero(b.d_internal, b.d_bprime);
    r.pass = r.detail.empty();
    if (r.pass) r.detail = "dim " + std::to_string(b.words.size());
    return r;
}

CheckResult twisting_universal(const Algebra& a, int cap) {
    CheckResult r{"twisting_universal", a.name + " W=" + std::to_string(cap), false, ""};
    auto b = bar(a, cap);
    auto u = universal_cochain(b);
    auto chk = is_twisting_cochain(u);
    if (!chk.ok) {
        r.detail = "defect at " + chk.witness;
        return r;
    }
    auto L = lift(u, b);
    if (!(L == SparseMatrix::identity(b.coalg.dim()))) {
        r.detail = "lift(universal) != id";
        return r;
    }
    if (!(corestrict(L, b.coalg, b).map == u.map)) {
        r.detail = "corestrict(id) != universal";
        return r;
    }
    r.pass = true;
    return r;
}

CheckResult twisting_round_trip(const Algebra& a1, const Algebra& a2, int cap) {
    CheckResult r{"twisting_round_trip", a1.name + " (x) " + a2.name + " W=" + std::to_string(cap), false, ""};
    auto sp = shuffle_pair(a1, a2, cap);
    auto th = shuffle_cochain(sp);
    auto chk = is_twisting_cochain(th);
    if (!chk.ok) {
        r.detail = "shuffle cochain defect at " + chk.witness;
        return r;
    }
    auto S = lift(th, sp.tgt);
    if (!(corestrict(S, sp.src.coalg, sp.tgt).map == th.map)) {
        r.detail = "corestrict(lift(theta)) != theta";
        return r;
    }
    auto back = lift(corestrict(S, sp.src.coalg, sp.tgt), sp.tgt);
    if (!(back == S)) {
        r.detail = "lift(corestrict(S)) != S";
        return r;
    }
    r.pass = true;
    r.detail = "dim " + std::to_string(sp.src.coalg.dim()) + " -> " + std::to_string(sp.tgt.coalg.dim());
    return r;
}

CheckResult shuffle_suite(const Algebra& a1, const Algebra& a2, int cap, bool normalized) {
    CheckResult r{normalized ? "shuffle_normalized" : "shuffle",
                  a1.name + " (x) " + a2.name + " W=" + std::to_string(cap), false, ""};
    auto sp = shuffle_pair(a1, a2, cap, normalized);
    SparseMatrix S;
    try {
        S = shuffle_map_checked(sp);
    } catch (const FormulaMismatch& e) {
        r.detail = e.what();
        return r;
    }
    std::string w;
    if (!is_coalgebra_map(S, sp.src.coalg, sp.tgt.coalg, &w)) {
        r.detail = "not a coalgebra map at " + w;
        return r;
    }
    if (!is_chain_map(S, sp.src.coalg, sp.tgt.coalg, &w)) {
        r.detail = "not a chain map at " + w;
        return r;
    }
    r.pass = true;
    return r;
}

CheckResult aw_after_shuffle(const Algebra& a1, const Algebra& a2, int cap, bool normalized) {
    CheckResult r{normalized ? "aw_shuffle_normalized" : "aw_shuffle",
                  a1.name + " (x) " + a2.name + " W=" + std::to_string(cap), false, ""};
    auto sp = shuffle_pair(a1, a2, cap, normalized);
    auto S = shuffle_map(sp);
    auto AWS = alexander_whitney(sp) * S;
    for (int j = 0; j < AWS.cols(); ++j) {
        SparseVec e{{j, Scalar(1)}};
        if (AWS.col(j) != e) {
            r.detail = "AW S != id at " + col_label(sp.src.coalg, j);
            // a second source word with the same image shows S is not injective
            for (int k = 0; k < S.cols(); ++k)
                if (k != j && !S.col(j).empty() && S.col(k) == S.col(j)) {
                    r.detail += "; S(" + col_label(sp.src.coalg, j) + ") = S(" + col_label(sp.src.coalg, k) + ")";
                    break;
                }
            return r;
        }
    }
    r.pass = true;
    return r;
}

CheckResult aw_on_normalized_part(const Algebra& a1, const Algebra& a2, int cap) {
    CheckResult r{"aw_shuffle_normalized_part", a1.name + " (x) " + a2.name + " W=" + std::to_string(cap), false, ""};
    auto sp = shuffle_pair(a1, a2, cap);
    auto N = normalized_part(sp);
    r.pass = alexander_whitney(sp) * shuffle_map(sp) * N == N;
    r.detail = std::to_string(N.cols()) + " normalized words";
    return r;
}

QuillenResult quillen_check(const Algebra& a, int cap) {
    if (!ungraded_plain(a)) throw InvalidPresentation("quillen-check: the (b, B) oracle needs an ungraded algebra without differential");
    QuillenResult q;
    XComplex x = cc_of_algebra(a, cap);
    SuperComplex o = connes_tsygan_total(a, cap);
    int top = std::min(tower_trusted(x.P), tower_trusted(o));
    q.pass = true;
    for (int T = 0; T <= top; ++T) {
        QuillenRow row{T, tower_homology_dim(x.P, T), tower_homology_dim(o, T)};
        q.pass = q.pass && row.x == row.bb;
        q.rows.push_back(row);
    }
    q.x = periodic_reading(x.P);
    q.bb = periodic_reading(o);
    q.pass = q.pass && q.x.even == q.bb.even && q.x.odd == q.bb.odd;
    return q;
}

namespace {

HPResult combine(int cap, std::vector<HPPipeline> ps) {
    HPResult r;
    r.cap = cap;
    r.pipelines = std::move(ps);
    r.even = r.pipelines.front().lo.even;
    r.odd = r.pipelines.front().lo.odd;
    r.stable = r.even >= 0 && r.odd >= 0;
    for (auto& p : r.pipelines)
        for (auto* rd : {&p.lo, &p.hi}) r.stable = r.stable && rd->even == r.even && rd->odd == r.odd;
    return r;
}

}  // namespace

HPResult hp_algebra(const Algebra& a, int cap, int jobs) {
    std::vector<std::pair<std::string, std::function<PeriodicReading(int)>>> runs;
    runs.push_back({"x_bar", [&](int w) { return periodic_reading(cc_of_algebra(a, w).P); }});
    if (ungraded_plain(a)) runs.push_back({"bB", [&](int w) { return periodic_reading(connes_tsygan_total(a, w)); }});
    if (a.aug)
        runs.push_back({"x_normalized_bar", [&](int w) {
                            return periodic_reading(x_complex(normalized_bar(a, w).coalg, w, false).P);
                        }});
    int n = static_cast<int>(runs.size());
    auto res = parallel_map<PeriodicReading>(2 * n, jobs, [&](int i) { return runs[i / 2].second(cap + i % 2); });
    std::vector<HPPipeline> ps;
    for (int i = 0; i < n; ++i) ps.push_back({runs[i].first, res[2 * i], res[2 * i + 1]});
    return combine(cap, std::move(ps));
}

HPResult hp_coalgebra(const Coalgebra& c, int cap, int jobs) {
    std::vector<std::pair<std::string, std::function<PeriodicReading(int)>>> runs;
    runs.push_back({"x", [&](int w) { return periodic_reading(x_complex(c, w, false).P); }});
    bool connected = true;
    for (int i = 0; i < c.dim(); ++i)
        if (c.deg[i] == 0 && i != c.counit) connected = false;
    if (cap >= 6 && connected)
        runs.push_back({"cobar", [&](int w) { return cc_reading(cc_of_coalgebra(c, w, false)); }});
    int n = static_cast<int>(runs.size());
    auto res = parallel_map<PeriodicReading>(2 * n, jobs, [&](int i) { return runs[i / 2].second(cap + i % 2); });
    std::vector<HPPipeline> ps;
    for (int i = 0; i < n; ++i) ps.push_back({runs[i].first, res[2 * i], res[2 * i + 1]});
    return combine(cap, std::move(ps));
}

XvsCC x_vs_cc_bar(const Algebra& a, int cap) {
    XvsCC r;
    auto b = bar(a, cap);
    XComplex x = x_complex(b.coalg, cap, true);
    CobarX cc = cc_of_coalgebra(b.coalg, cap, true);
    r.pass = true;
    int top = std::min(tower_trusted(x.P), cc_trusted(cc));
    for (int T = 0; T <= top; ++T) {
        QuillenRow row{T, tower_homology_dim(x.P, T), tower_homology_dim(cc.P, T)};
        r.pass = r.pass && row.x == row.bb;
        r.rows.push_back(row);
    }
    r.x = periodic_reading(x.P);
    r.cc = cc_reading(cc);
    r.pass = r.pass && r.cc.even >= 0 && r.x.even == r.cc.even && r.x.odd == r.cc.odd;
    return r;
}

XvsCC x2_vs_cc_tensor(const Algebra& a1, const Algebra& a2, int cap) {
    XvsCC r;
    auto b1 = bar(a1, cap), b2 = bar(a2, cap);
    Coalgebra c = tensor_bar(b1, b2).coalg;
    XComplex x = x2_complex(c, cap, true);
    CobarX cc = cc_of_coalgebra(c, cap, true);
    r.x = periodic_reading(x.P);
    r.cc = cc_reading(cc);
    r.pass = r.cc.even >= 0 && r.x.even == r.cc.even && r.x.odd == r.cc.odd;
    return r;
}

}  // namespace hcx
