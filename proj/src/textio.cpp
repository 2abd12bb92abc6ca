#include "hcx/textio.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hcx {

ParseError::ParseError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

namespace {

std::string first_failure(const ValidationReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass) return c.axiom + " fails at " + c.witness;
    return "ok";
}

}  // namespace

ValidationError::ValidationError(ValidationReport r)
    : std::runtime_error("validation failed: " + first_failure(r)), report(std::move(r)) {}

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

Scalar parse_rational(const std::string& s, int line) {
    static const std::string ok = "+-/0123456789";
    if (s.empty() || s.find_first_not_of(ok) != std::string::npos)
        throw ParseError(line, "bad coefficient '" + s + "' (expected an integer or p/q)");
    Scalar q;
    try {
        std::string t = s[0] == '+' ? s.substr(1) : s;
        if (q.set_str(t, 10) != 0) throw ParseError(line, "bad coefficient '" + s + "'");
    } catch (const std::invalid_argument&) {
        throw ParseError(line, "bad coefficient '" + s + "'");
    }
    if (q.get_den() == 0) throw ParseError(line, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

int parse_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
}

struct Raw {
    std::map<std::string, std::pair<std::string, int>> keys;                       // key -> (value, line)
    std::map<std::string, std::vector<std::pair<std::vector<std::string>, int>>> sections;  // rows with line
};

Raw scan(const std::string& text) {
    static const std::set<std::string> known_keys{"name", "kind", "field", "basis", "degrees", "weights", "unit", "counit"};
    static const std::set<std::string> known_sections{"mult", "comult", "diff", "aug"};
    Raw r;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    std::string section;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find_first_of(" \t") == std::string::npos) {
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(section)) throw ParseError(no, "unknown section [" + section + "]");
            if (r.sections.count(section)) throw ParseError(no, "duplicate section [" + section + "]");
            r.sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (section.empty() || eq != std::string::npos) {
            if (!section.empty()) throw ParseError(no, "key = value line inside section [" + section + "]");
            if (eq == std::string::npos) throw ParseError(no, "expected key = value");
            std::string k = trim(line.substr(0, eq));
            if (!known_keys.count(k)) throw ParseError(no, "unknown key '" + k + "'");
            if (r.keys.count(k)) throw ParseError(no, "duplicate key '" + k + "'");
            r.keys[k] = {trim(line.substr(eq + 1)), no};
            continue;
        }
        r.sections[section].push_back({split(line), no});
    }
    return r;
}

const std::pair<std::string, int>& need(const Raw& r, const std::string& k) {
    auto it = r.keys.find(k);
    if (it == r.keys.end()) throw ParseError(0, "missing key '" + k + "'");
    return it->second;
}

void reject(const Raw& r, const std::string& what, const std::string& kind) {
    auto it = r.keys.find(what);
    if (it != r.keys.end()) throw ParseError(it->second.second, "'" + what + "' is not allowed for a " + kind);
    if (r.sections.count(what)) throw ParseError(0, "section [" + what + "] is not allowed for a " + kind);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    Raw r = scan(text);
    std::string kind = need(r, "kind").first;
    if (kind != "algebra" && kind != "coalgebra") throw ParseError(need(r, "kind").second, "kind must be algebra or coalgebra");
    auto [field, fline] = need(r, "field");
    if (field != "Q") throw ParseError(fline, "only field = Q is supported");
    std::string name = need(r, "name").first;
    auto [bstr, bline] = need(r, "basis");
    std::vector<std::string> labels = split(bstr);
    if (labels.empty()) throw ParseError(bline, "empty basis");
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!pos.emplace(labels[i], static_cast<int>(i)).second) throw ParseError(bline, "repeated basis label '" + labels[i] + "'");
    int n = static_cast<int>(labels.size());
    auto elem = [&](const std::string& s, int line) {
        auto it = pos.find(s);
        if (it != pos.end()) return it->second;
        int v = -1;
        if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) v = parse_int(s, line);
        if (v < 0 || v >= n) throw ParseError(line, "unknown basis element '" + s + "'");
        return v;
    };
    std::vector<int> deg(n, 0);
    if (r.keys.count("degrees")) {
        auto [dstr, dline] = r.keys.at("degrees");
        auto ds = split(dstr);
        if (static_cast<int>(ds.size()) != n) throw ParseError(dline, "degrees must list one entry per basis element");
        for (int i = 0; i < n; ++i) deg[i] = parse_int(ds[i], dline);
    }
    auto rows = [&](const std::string& s) -> const std::vector<std::pair<std::vector<std::string>, int>>& {
        static const std::vector<std::pair<std::vector<std::string>, int>> none;
        auto it = r.sections.find(s);
        return it == r.sections.end() ? none : it->second;
    };
    std::vector<SparseVec> diff;
    if (r.sections.count("diff")) {
        std::vector<std::vector<std::pair<int, Scalar>>> acc(n);
        for (auto& [f, line] : rows("diff")) {
            if (f.size() != 3) throw ParseError(line, "diff rows are: source target coefficient");
            acc[elem(f[0], line)].emplace_back(elem(f[1], line), parse_rational(f[2], line));
        }
        diff.resize(n);
        for (int i = 0; i < n; ++i) diff[i] = vec_from_pairs(std::move(acc[i]));
    }
    if (kind == "algebra") {
        reject(r, "counit", kind);
        reject(r, "comult", kind);
        reject(r, "weights", kind);
        Algebra a;
        a.name = name;
        a.labels = labels;
        a.deg = deg;
        auto [u, uline] = need(r, "unit");
        a.unit = elem(u, uline);
        std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> acc;
        for (auto& [f, line] : rows("mult")) {
            if (f.size() != 4) throw ParseError(line, "mult rows are: i j k coefficient");
            acc[{elem(f[0], line), elem(f[1], line)}].emplace_back(elem(f[2], line), parse_rational(f[3], line));
        }
        for (auto& [ij, t] : acc) {
            SparseVec v = vec_from_pairs(std::move(t));
            if (!v.empty()) a.set_mult(ij.first, ij.second, v);
        }
        a.diff = diff;
        if (r.sections.count("aug")) {
            std::vector<Scalar> au(n, Scalar(0));
            std::set<int> seen;
            for (auto& [f, line] : rows("aug")) {
                if (f.size() != 2) throw ParseError(line, "aug rows are: element value");
                int i = elem(f[0], line);
                if (!seen.insert(i).second) throw ParseError(line, "repeated aug entry");
                au[i] = parse_rational(f[1], line);
            }
            a.aug = au;
        }
        return a;
    }
    reject(r, "unit", kind);
    reject(r, "mult", kind);
    reject(r, "aug", kind);
    Coalgebra c;
    c.name = name;
    c.labels = labels;
    c.deg = deg;
    if (r.keys.count("weights")) {
        auto [wstr, wline] = r.keys.at("weights");
        auto ws = split(wstr);
        if (static_cast<int>(ws.size()) != n) throw ParseError(wline, "weights must list one entry per basis element");
        for (auto& w : ws) c.weight.push_back(parse_int(w, wline));
    }
    if (c.weight.empty()) c.weight = deg;
    auto [cu, culine] = need(r, "counit");
    c.counit = elem(cu, culine);
    c.comult.resize(n);
    std::map<std::tuple<int, int, int>, Scalar> acc;
    for (auto& [f, line] : rows("comult")) {
        if (f.size() != 4) throw ParseError(line, "comult rows are: k i j coefficient");
        acc[{elem(f[0], line), elem(f[1], line), elem(f[2], line)}] += parse_rational(f[3], line);
    }
    for (auto& [kij, v] : acc)
        if (sgn(v) != 0) c.comult[std::get<0>(kij)].push_back({std::get<1>(kij), std::get<2>(kij), v});
    c.diff = diff;
    return c;
}

ValidationReport validation_report(const Presentation& p) {
    return std::visit(
        [](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Algebra>)
                return validate_algebra(x);
            else
                return validate_coalgebra(x);
        },
        p);
}

void validate(const Presentation& p) {
    auto r = validation_report(p);
    if (!r.ok()) throw ValidationError(std::move(r));
}

const std::string& presentation_name(const Presentation& p) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, p);
}

Presentation read_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

Presentation load_presentation(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_presentation(arg);
    try {
        return builtin(arg);
    } catch (const UnknownName&) {
        throw ParseError(0, "'" + arg + "' is neither a readable file nor a builtin name");
    }
}

namespace {

void header(std::ostringstream& o, const std::string& name, const char* kind, const std::vector<std::string>& labels,
            const std::vector<int>& deg) {
    o << "name = " << name << "\nkind = " << kind << "\nfield = Q\nbasis =";
    for (auto& l : labels) o << " " << l;
    o << "\ndegrees =";
    for (int d : deg) o << " " << d;
    o << "\n";
}

void diff_section(std::ostringstream& o, const std::vector<SparseVec>& diff, const std::vector<std::string>& labels) {
    bool any = false;
    for (auto& v : diff) any = any || !v.empty();
    if (!any) return;
    o << "\n[diff]\n";
    for (std::size_t i = 0; i < diff.size(); ++i)
        for (auto& e : diff[i]) o << labels[i] << " " << labels[e.idx] << " " << e.val.get_str() << "\n";
}

}  // namespace

std::string to_text(const Algebra& a) {
    std::ostringstream o;
    header(o, a.name, "algebra", a.labels, a.deg);
    o << "unit = " << a.labels[a.unit] << "\n\n[mult]\n";
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (auto& e : a.m(i, j))
                o << a.labels[i] << " " << a.labels[j] << " " << a.labels[e.idx] << " " << e.val.get_str() << "\n";
    diff_section(o, a.diff, a.labels);
    if (a.aug) {
        o << "\n[aug]\n";
        for (int i = 0; i < a.dim(); ++i)
            if (sgn((*a.aug)[i]) != 0) o << a.labels[i] << " " << (*a.aug)[i].get_str() << "\n";
    }
    return o.str();
}

std::string to_text(const Coalgebra& c) {
    std::ostringstream o;
    header(o, c.name, "coalgebra", c.labels, c.deg);
    if (!c.weight.empty() && c.weight != c.deg) {
        o << "weights =";
        for (int w : c.weight) o << " " << w;
        o << "\n";
    }
    o << "counit = " << c.labels[c.counit] << "\n\n[comult]\n";
    for (int k = 0; k < c.dim(); ++k)
        for (auto& t : c.comult[k])
            o << c.labels[k] << " " << c.labels[t.left] << " " << c.labels[t.right] << " " << t.coef.get_str() << "\n";
    diff_section(o, c.diff, c.labels);
    return o.str();
}

}  // namespace hcx
