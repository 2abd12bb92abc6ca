#include "hcx/presentations.hpp"

#include "hcx/graded.hpp"

#include <map>
#include <regex>
#include <sstream>
#include <tuple>

namespace hcx {

namespace {
const SparseVec kEmpty;

std::string vec_str(const SparseVec& v, const std::vector<std::string>& labels) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : v) {
        if (!first) os << " + ";
        first = false;
        os << e.val.get_str() << "*" << labels[e.idx];
    }
    return os.str();
}

bool same(const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].idx != b[i].idx || a[i].val != b[i].val) return false;
    return true;
}
}  // namespace

const SparseVec& Algebra::m(int i, int j) const {
    auto it = mult.find(static_cast<std::int64_t>(i) * dim() + j);
    return it == mult.end() ? kEmpty : it->second;
}

const SparseVec& Algebra::d(int i) const { return diff.empty() ? kEmpty : diff[i]; }

bool Algebra::has_diff() const {
    for (const auto& v : diff)
        if (!v.empty()) return true;
    return false;
}

void Algebra::set_mult(int i, int j, SparseVec v) {
    auto key = static_cast<std::int64_t>(i) * dim() + j;
    if (v.empty())
        mult.erase(key);
    else
        mult[key] = std::move(v);
}

SparseVec Algebra::mul(const SparseVec& x, const SparseVec& y) const {
    std::vector<std::pair<int, Scalar>> t;
    for (const auto& a : x)
        for (const auto& b : y)
            for (const auto& e : m(a.idx, b.idx)) t.emplace_back(e.idx, a.val * b.val * e.val);
    return vec_from_pairs(std::move(t));
}

const SparseVec& Coalgebra::d(int i) const { return diff.empty() ? kEmpty : diff[i]; }

bool Coalgebra::has_diff() const {
    for (const auto& v : diff)
        if (!v.empty()) return true;
    return false;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << c.axiom << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.pass) os << " (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- validators

ValidationReport validate_algebra(const Algebra& a) {
    ValidationReport r;
    int n = a.dim();
    auto basis = [](int i) { return SparseVec{{i, 1}}; };

    AxiomCheck degs{"degrees", true, ""};
    for (int i = 0; i < n; ++i)
        if (a.deg[i] < 0) {
            degs.pass = false;
            degs.witness = "negative degree on " + a.labels[i];
            break;
        }
    r.checks.push_back(degs);

    AxiomCheck homog{"grading", true, ""};
    for (const auto& [key, v] : a.mult) {
        int i = static_cast<int>(key / n), j = static_cast<int>(key % n);
        for (const auto& e : v)
            if (a.deg[e.idx] != a.deg[i] + a.deg[j]) {
                homog.pass = false;
                homog.witness = a.labels[i] + "*" + a.labels[j] + " not homogeneous";
            }
        if (!homog.pass) break;
    }
    r.checks.push_back(homog);

    AxiomCheck unit{"unit", true, ""};
    if (a.unit < 0 || a.unit >= n || a.deg[a.unit] != 0) {
        unit.pass = false;
        unit.witness = "unit must be a degree-0 basis element";
    } else {
        for (int i = 0; i < n && unit.pass; ++i) {
            if (!same(a.m(a.unit, i), basis(i))) {
                unit.pass = false;
                unit.witness = "1*" + a.labels[i] + " = " + vec_str(a.m(a.unit, i), a.labels);
            } else if (!same(a.m(i, a.unit), basis(i))) {
                unit.pass = false;
                unit.witness = a.labels[i] + "*1 = " + vec_str(a.m(i, a.unit), a.labels);
            }
        }
    }
    r.checks.push_back(unit);

    AxiomCheck assoc{"associativity", true, ""};
    for (int i = 0; i < n && assoc.pass; ++i)
        for (int j = 0; j < n && assoc.pass; ++j)
            for (int k = 0; k < n && assoc.pass; ++k) {
                SparseVec lhs = a.mul(a.m(i, j), basis(k));
                SparseVec rhs = a.mul(basis(i), a.m(j, k));
                if (!same(lhs, rhs)) {
                    assoc.pass = false;
                    assoc.witness = "(" + a.labels[i] + "," + a.labels[j] + "," + a.labels[k] + ")";
                }
            }
    r.checks.push_back(assoc);

    if (a.has_diff()) {
        AxiomCheck ddeg{"differential degree", true, ""};
        for (int i = 0; i < n && ddeg.pass; ++i)
            for (const auto& e : a.d(i))
                if (a.deg[e.idx] != a.deg[i] - 1) {
                    ddeg.pass = false;
                    ddeg.witness = "d(" + a.labels[i] + ")";
                }
        r.checks.push_back(ddeg);
        AxiomCheck sq{"d^2 = 0", true, ""};
        auto dv = [&](const SparseVec& x) {
            std::vector<std::pair<int, Scalar>> t;
            for (const auto& e : x)
                for (const auto& f : a.d(e.idx)) t.emplace_back(f.idx, e.val * f.val);
            return vec_from_pairs(std::move(t));
        };
        for (int i = 0; i < n && sq.pass; ++i)
            if (!dv(a.d(i)).empty()) {
                sq.pass = false;
                sq.witness = "d(d(" + a.labels[i] + "))";
            }
        r.checks.push_back(sq);
        AxiomCheck leib{"Leibniz", true, ""};
        for (int i = 0; i < n && leib.pass; ++i)
            for (int j = 0; j < n && leib.pass; ++j) {
                SparseVec lhs = dv(a.m(i, j));
                SparseVec rhs = a.mul(a.d(i), basis(j));
                SparseVec t2 = a.mul(basis(i), a.d(j));
                rhs = vec_axpy(rhs, a.deg[i] % 2 ? -1 : 1, t2);
                if (!same(lhs, rhs)) {
                    leib.pass = false;
                    leib.witness = "d(" + a.labels[i] + "*" + a.labels[j] + ")";
                }
            }
        r.checks.push_back(leib);
    }

    if (a.aug) {
        AxiomCheck au{"augmentation", true, ""};
        const auto& e = *a.aug;
        if (static_cast<int>(e.size()) != n) {
            au.pass = false;
            au.witness = "wrong length";
        } else {
            if (e[a.unit] != 1) {
                au.pass = false;
                au.witness = "aug(1) != 1";
            }
            for (int i = 0; i < n && au.pass; ++i)
                if (a.deg[i] != 0 && sgn(e[i]) != 0) {
                    au.pass = false;
                    au.witness = "nonzero on positive degree " + a.labels[i];
                }
            auto ev = [&](const SparseVec& x) {
                Scalar s = 0;
                for (const auto& t : x) s += t.val * e[t.idx];
                return s;
            };
            for (int i = 0; i < n && au.pass; ++i)
                for (int j = 0; j < n && au.pass; ++j)
                    if (ev(a.m(i, j)) != e[i] * e[j]) {
                        au.pass = false;
                        au.witness = "aug(" + a.labels[i] + "*" + a.labels[j] + ")";
                    }
        }
        r.checks.push_back(au);
    }
    return r;
}

ValidationReport validate_coalgebra(const Coalgebra& c) {
    ValidationReport r;
    int n = c.dim();
    // Δ as a linear map to pairs
    auto delta = [&](int k) {
        std::vector<std::pair<std::int64_t, Scalar>> t;
        for (const auto& x : c.comult[k]) t.emplace_back(static_cast<std::int64_t>(x.left) * n + x.right, x.coef);
        return t;
    };
    AxiomCheck degs{"degrees", true, ""};
    for (int i = 0; i < n; ++i)
        if (c.deg[i] < 0) {
            degs.pass = false;
            degs.witness = "negative degree on " + c.labels[i];
            break;
        }
    for (int k = 0; k < n && degs.pass; ++k)
        for (const auto& x : c.comult[k])
            if (c.deg[x.left] + c.deg[x.right] != c.deg[k]) {
                degs.pass = false;
                degs.witness = "Delta(" + c.labels[k] + ") not homogeneous";
                break;
            }
    r.checks.push_back(degs);

    AxiomCheck counit{"counit", true, ""};
    if (c.counit < 0 || c.counit >= n || c.deg[c.counit] != 0) {
        counit.pass = false;
        counit.witness = "counit must be dual to a degree-0 basis element";
    } else {
        for (int k = 0; k < n && counit.pass; ++k) {
            std::vector<std::pair<int, Scalar>> l, rr;
            for (const auto& x : c.comult[k]) {
                if (x.left == c.counit) l.emplace_back(x.right, x.coef);
                if (x.right == c.counit) rr.emplace_back(x.left, x.coef);
            }
            SparseVec e{{k, 1}};
            if (!same(vec_from_pairs(l), e) || !same(vec_from_pairs(rr), e)) {
                counit.pass = false;
                counit.witness = "counit fails on " + c.labels[k];
            }
        }
    }
    r.checks.push_back(counit);

    AxiomCheck coassoc{"coassociativity", true, ""};
    for (int k = 0; k < n && coassoc.pass; ++k) {
        // (Δ⊗1)Δ vs (1⊗Δ)Δ as maps to triples
        std::map<std::tuple<int, int, int>, Scalar> lhs, rhs;
        for (const auto& x : c.comult[k]) {
            for (const auto& y : c.comult[x.left]) lhs[{y.left, y.right, x.right}] += x.coef * y.coef;
            for (const auto& y : c.comult[x.right]) rhs[{x.left, y.left, y.right}] += x.coef * y.coef;
        }
        auto clean = [](std::map<std::tuple<int, int, int>, Scalar>& m) {
            for (auto it = m.begin(); it != m.end();) it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
        };
        clean(lhs);
        clean(rhs);
        if (lhs != rhs) {
            coassoc.pass = false;
            coassoc.witness = "on " + c.labels[k];
        }
    }
    r.checks.push_back(coassoc);
    (void)delta;

    if (c.has_diff()) {
        AxiomCheck ddeg{"differential degree", true, ""};
        for (int i = 0; i < n && ddeg.pass; ++i)
            for (const auto& e : c.d(i))
                if (c.deg[e.idx] != c.deg[i] - 1) {
                    ddeg.pass = false;
                    ddeg.witness = "d(" + c.labels[i] + ")";
                }
        r.checks.push_back(ddeg);
        auto dv = [&](const SparseVec& x) {
            std::vector<std::pair<int, Scalar>> t;
            for (const auto& e : x)
                for (const auto& f : c.d(e.idx)) t.emplace_back(f.idx, e.val * f.val);
            return vec_from_pairs(std::move(t));
        };
        AxiomCheck sq{"d^2 = 0", true, ""};
        for (int i = 0; i < n && sq.pass; ++i)
            if (!dv(c.d(i)).empty()) {
                sq.pass = false;
                sq.witness = "d(d(" + c.labels[i] + "))";
            }
        r.checks.push_back(sq);
        AxiomCheck coder{"coderivation", true, ""};
        for (int k = 0; k < n && coder.pass; ++k) {
            std::map<std::pair<int, int>, Scalar> lhs, rhs;
            for (const auto& f : c.d(k))
                for (const auto& x : c.comult[f.idx]) lhs[{x.left, x.right}] += f.val * x.coef;
            for (const auto& x : c.comult[k]) {
                for (const auto& f : c.d(x.left)) rhs[{f.idx, x.right}] += x.coef * f.val;
                Scalar s = c.deg[x.left] % 2 ? -1 : 1;
                for (const auto& f : c.d(x.right)) rhs[{x.left, f.idx}] += s * x.coef * f.val;
            }
            auto clean = [](std::map<std::pair<int, int>, Scalar>& m) {
                for (auto it = m.begin(); it != m.end();) it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
            };
            clean(lhs);
            clean(rhs);
            if (lhs != rhs) {
                coder.pass = false;
                coder.witness = "on " + c.labels[k];
            }
        }
        r.checks.push_back(coder);
    }
    return r;
}

void require_valid(const Algebra& a) {
    auto r = validate_algebra(a);
    if (!r.ok()) throw InvalidPresentation("algebra '" + a.name + "' invalid:\n" + r.summary());
}

void require_valid(const Coalgebra& c) {
    auto r = validate_coalgebra(c);
    if (!r.ok()) throw InvalidPresentation("coalgebra '" + c.name + "' invalid:\n" + r.summary());
}

// ---------------------------------------------------------------- builtins

namespace {

Algebra make(std::string name, std::vector<std::string> labels) {
    Algebra a;
    a.name = std::move(name);
    a.labels = std::move(labels);
    a.deg.assign(a.labels.size(), 0);
    a.unit = 0;
    for (int i = 0; i < a.dim(); ++i) {
        a.set_mult(0, i, {{i, 1}});
        a.set_mult(i, 0, {{i, 1}});
    }
    return a;
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"ground_field", "dual_numbers", "trunc_poly(3)", "product_kk", "upper_triangular_2"};
}

Algebra builtin(const std::string& raw) {
    std::string name = raw;
    if (name == "k") name = "ground_field";
    if (name == "k[e]" || name == "k[eps]") name = "dual_numbers";
    if (name == "kxk" || name == "k*k") name = "product_kk";
    if (name == "ground_field") {
        Algebra a = make(name, {"1"});
        a.aug = std::vector<Scalar>{1};
        return a;
    }
    if (name == "dual_numbers") {
        Algebra a = make(name, {"1", "e"});
        a.aug = std::vector<Scalar>{1, 0};
        return a;
    }
    std::smatch m;
    static const std::regex tp(R"(trunc_poly\((\d+)\))");
    if (std::regex_match(name, m, tp)) {
        int n = std::stoi(m[1]);
        if (n < 1) throw UnknownName("trunc_poly needs n >= 1");
        std::vector<std::string> labels{"1"};
        for (int i = 1; i < n; ++i) labels.push_back(i == 1 ? "x" : "x^" + std::to_string(i));
        Algebra a = make(name, labels);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                if (i + j < n) a.set_mult(i, j, {{i + j, 1}});
        std::vector<Scalar> aug(n, 0);
        aug[0] = 1;
        a.aug = aug;
        return a;
    }
    if (name == "product_kk") {
        // basis 1 = (1,1), f = (1,0); f is idempotent
        Algebra a = make(name, {"1", "f"});
        a.set_mult(1, 1, {{1, 1}});
        a.aug = std::vector<Scalar>{1, 1};
        return a;
    }
    if (name == "upper_triangular_2") {
        // basis 1, e11, e12 (e22 = 1 - e11)
        Algebra a = make(name, {"1", "e11", "e12"});
        a.set_mult(1, 1, {{1, 1}});
        a.set_mult(1, 2, {{2, 1}});
        a.aug = std::vector<Scalar>{1, 1, 0};
        return a;
    }
    throw UnknownName("unknown builtin algebra '" + raw + "'");
}

// ---------------------------------------------------------------- tensor / dual

Algebra tensor_algebras(const Algebra& a1, const Algebra& a2) {
    Algebra t;
    t.name = a1.name + "(x)" + a2.name;
    int n1 = a1.dim(), n2 = a2.dim();
    auto id = [n2](int i, int j) { return i * n2 + j; };
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            t.labels.push_back(a1.labels[i] + "|" + a2.labels[j]);
            t.deg.push_back(a1.deg[i] + a2.deg[j]);
        }
    t.unit = id(a1.unit, a2.unit);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n1; ++k)
                for (int l = 0; l < n2; ++l) {
                    const auto& x = a1.m(i, k);
                    const auto& y = a2.m(j, l);
                    if (x.empty() || y.empty()) continue;
                    int s = koszul_pair_sign(a2.deg[j], a1.deg[k]);
                    std::vector<std::pair<int, Scalar>> terms;
                    for (const auto& e : x)
                        for (const auto& f : y) terms.emplace_back(id(e.idx, f.idx), s * e.val * f.val);
                    t.set_mult(id(i, j), id(k, l), vec_from_pairs(std::move(terms)));
                }
    if (a1.has_diff() || a2.has_diff()) {
        t.diff.assign(n1 * n2, {});
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                std::vector<std::pair<int, Scalar>> terms;
                for (const auto& e : a1.d(i)) terms.emplace_back(id(e.idx, j), e.val);
                int s = a1.deg[i] % 2 ? -1 : 1;
                for (const auto& f : a2.d(j)) terms.emplace_back(id(i, f.idx), s * f.val);
                t.diff[id(i, j)] = vec_from_pairs(std::move(terms));
            }
    }
    if (a1.aug && a2.aug) {
        std::vector<Scalar> au(n1 * n2);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) au[id(i, j)] = (*a1.aug)[i] * (*a2.aug)[j];
        t.aug = au;
    }
    return t;
}

Coalgebra dualize(const Algebra& a) {
    if (a.has_diff()) throw InvalidPresentation("dualize: algebras with a differential are not supported");
    Coalgebra c;
    c.name = "dual(" + a.name + ")";
    for (const auto& l : a.labels) c.labels.push_back(l + "*");
    c.deg = a.deg;
    c.weight = a.deg;
    c.counit = a.unit;
    c.comult.assign(a.dim(), {});
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (const auto& e : a.m(i, j)) c.comult[e.idx].push_back({i, j, e.val});
    return c;
}

Algebra dual_algebra(const Coalgebra& c) {
    Algebra r;
    r.name = "dual(" + c.name + ")";
    r.labels = c.labels;
    r.deg = c.deg;
    r.unit = c.counit;
    int n = c.dim();
    std::unordered_map<std::int64_t, std::vector<std::pair<int, Scalar>>> acc;
    for (int k = 0; k < n; ++k)
        for (const auto& x : c.comult[k]) acc[static_cast<std::int64_t>(x.left) * n + x.right].emplace_back(k, x.coef);
    for (auto& [key, terms] : acc) {
        SparseVec v = vec_from_pairs(std::move(terms));
        if (!v.empty()) r.mult[key] = std::move(v);
    }
    if (c.has_diff()) {
        std::vector<std::vector<std::pair<int, Scalar>>> t(n);
        for (int k = 0; k < n; ++k)
            for (const auto& e : c.d(k)) t[e.idx].emplace_back(k, e.val);
        r.diff.assign(n, {});
        for (int i = 0; i < n; ++i) r.diff[i] = vec_from_pairs(std::move(t[i]));
    }
    return r;
}

}  // namespace hcx
