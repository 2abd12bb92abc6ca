// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Usage: hcx_acceptance <path to hcx executable>
#include "hcx/checks.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

using namespace hcx;

namespace {

// Time limits in seconds.
constexpr double kLimitSquareZero = 120;
constexpr double kLimitShuffle = 120;
constexpr double kLimitQuillen = 300;
constexpr double kLimitKunnethPair = 600;

// Criteria known to be unattainable as stated. They still print FAIL; the
// exit status only ignores them. Criterion 3 asks for AW o S = id, but S is
// not injective on the unnormalized bar: S([1] (x) []) = S([] (x) [1]).
const std::set<int> kExpectedFail{3};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(1);
    o << s << " s";
    return o.str();
}

std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
    }
};

int unexpected = 0;

void report(const Criterion& c, double seconds) {
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    bool expected = kExpectedFail.count(c.id) > 0;
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << secs(seconds) << "]";
    if (!c.pass && expected) std::cout << " (expected: unattainable as stated)";
    if (c.pass && expected) std::cout << " (expected to fail; the known obstruction is gone)";
    std::cout << std::endl;
    if (c.pass == expected) ++unexpected;
}

void check(const CheckResult& r, Criterion& c) { c.require(r.pass, r.suite + " " + r.subject + (r.detail.empty() ? "" : ": " + r.detail)); }

void criterion1() {
    auto t0 = Clock::now();
    Criterion c{1, "square-zero sweep (bar W <= 6, cobar L <= 6)"};
    for (const auto& n : builtin_names()) {
        Algebra a = builtin(n);
        bool bar_ok = true, cobar_ok = true;
        std::string why;
        for (int w = 0; w <= 6; ++w) {
            auto r = bar_square_zero(a, w);
            if (!r.pass) bar_ok = false, why = r.subject + " " + r.detail;
        }
        for (int L = 0; L <= 6; ++L) {
            auto r = cobar_square_zero(bar(a, L).coalg, L);
            if (!r.pass) cobar_ok = false, why = r.subject + " " + r.detail;
        }
        c.require(bar_ok && cobar_ok, n + (why.empty() ? "" : ": " + why));
    }
    double s = since(t0);
    c.require(s < kLimitSquareZero, "runtime " + secs(s) + " < " + secs(kLimitSquareZero));
    report(c, s);
}

void criterion2() {
    auto t0 = Clock::now();
    Criterion c{2, "twisting cochains and lift/corestrict at cap 4"};
    for (const auto& n : builtin_names()) check(twisting_universal(builtin(n), 4), c);
    for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
             {"dual_numbers", "ground_field"}, {"dual_numbers", "dual_numbers"}, {"product_kk", "ground_field"}})
        check(twisting_round_trip(builtin(x), builtin(y), 4), c);
    report(c, since(t0));
}

void criterion3() {
    auto t0 = Clock::now();
    Criterion c{3, "shuffle map: lift = formula, DG coalgebra map, AW o S = id"};
    Algebra e = builtin("dual_numbers"), k = builtin("ground_field");
    for (int w = 0; w <= 5; ++w) {
        check(shuffle_suite(e, e, w, false), c);
        check(shuffle_suite(e, k, w, false), c);
    }
    check(shuffle_suite(e, e, 5, true), c);
    check(aw_after_shuffle(e, e, 5, true), c);
    check(aw_on_normalized_part(e, e, 5), c);
    check(aw_after_shuffle(e, e, 5, false), c);
    double s = since(t0);
    c.require(s < kLimitShuffle, "runtime " + secs(s) + " < " + secs(kLimitShuffle));
    report(c, s);
}

void criterion4() {
    auto t0 = Clock::now();
    Criterion c{4, "X(BA) against the (b, B) oracle at caps 5 and 6"};
    for (const std::string n : {"ground_field", "dual_numbers", "trunc_poly(3)", "product_kk"})
        for (int w : {5, 6}) {
            auto q = quillen_check(builtin(n), w);
            std::string dims;
            for (auto& r : q.rows) dims += " " + std::to_string(r.x) + "/" + std::to_string(r.bb);
            c.require(q.pass, n + " W=" + std::to_string(w) + " HC" + dims + " HP " + pair_str(q.x.even, q.x.odd) + "/" +
                                  pair_str(q.bb.even, q.bb.odd));
        }
    double s = since(t0);
    c.require(s < kLimitQuillen, "runtime " + secs(s) + " < " + secs(kLimitQuillen));
    report(c, s);
}

void criterion5() {
    auto t0 = Clock::now();
    Criterion c{5, "HP dims, two pipelines, caps W and W+1"};
    const std::vector<std::tuple<std::string, int, int>> want{
        {"ground_field", 1, 0}, {"dual_numbers", 1, 0}, {"product_kk", 2, 0}};
    for (const auto& [n, ev, od] : want) {
        auto r = hp_algebra(builtin(n), 5);
        std::string line = n + " " + pair_str(r.even, r.odd) + " stable=" + (r.stable ? "yes" : "no") + " via";
        for (auto& p : r.pipelines) line += " " + p.name;
        c.require(r.stable && r.even == ev && r.odd == od, line);
    }
    report(c, since(t0));
}

void criterion6() {
    auto t0 = Clock::now();
    Criterion c{6, "X(C) and X^2(C) against CC(C) from the cobar, cap 6"};
    for (const std::string n : {"ground_field", "dual_numbers", "product_kk"}) {
        auto r = x_vs_cc_bar(builtin(n), 6);
        std::string dims;
        for (auto& row : r.rows) dims += " " + std::to_string(row.x) + "/" + std::to_string(row.bb);
        c.require(r.pass, "C = bar(" + n + ") HC" + dims + " HP " + pair_str(r.x.even, r.x.odd) + "/" +
                              pair_str(r.cc.even, r.cc.odd));
    }
    for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{"ground_field", "ground_field"},
                                                                      {"dual_numbers", "ground_field"}}) {
        auto r = x2_vs_cc_tensor(builtin(x), builtin(y), 6);
        c.require(r.pass, "C = B(" + x + ") (x) B(" + y + ") HP " + pair_str(r.x.even, r.x.odd) + "/" +
                              pair_str(r.cc.even, r.cc.odd));
    }
    report(c, since(t0));
}

void criterion7() {
    auto t0 = Clock::now();
    Criterion c{7, "Kunneth comparison at cap 5 with cap 6 agreement"};
    for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{"ground_field", "ground_field"},
                                                                      {"dual_numbers", "ground_field"},
                                                                      {"dual_numbers", "dual_numbers"},
                                                                      {"product_kk", "ground_field"}}) {
        auto p0 = Clock::now();
        auto rep = kunneth_verify(builtin(x), builtin(y), 5);
        double s = since(p0);
        std::string err = rep.lo.error.empty() ? rep.hi.error : rep.lo.error;
        c.require(rep.verdict && s < kLimitKunnethPair,
                  x + " (x) " + y + " dims " + pair_str(rep.lo.tensor[0], rep.lo.tensor[1]) + " stable=" +
                      (rep.stable ? "yes" : "no") + " " + secs(s) + (err.empty() ? "" : " " + err));
    }
    report(c, since(t0));
}

std::string run(const std::string& cmd, int* status) {
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) {
        *status = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    *status = pclose(f);
    return out;
}

void criterion8(const std::string& cli) {
    auto t0 = Clock::now();
    Criterion c{8, "byte-identical reports across runs and --jobs"};
    const std::vector<std::string> cmds{
        "homology dual_numbers --theory hp --cap 6",
        "kunneth k k --cap 5",
        "kunneth dual_numbers ground_field --cap 5 --format json",
        "quillen-check 'trunc_poly(3)' --cap 5",
        "bar product_kk --cap 4 --dims",
        "selftest",
    };
    for (const auto& cmd : cmds) {
        int s1 = 0, s2 = 0, s3 = 0;
        std::string base = "'" + cli + "' " + cmd;
        std::string a = run(base + " --jobs 1 --seed 1", &s1);
        std::string b = run(base + " --jobs 1 --seed 1", &s2);
        std::string d = run(base + " --jobs 3 --seed 5", &s3);
        c.require(s1 == 0 && s2 == 0 && s3 == 0 && !a.empty() && a == b && a == d,
                  cmd + " (" + std::to_string(a.size()) + " bytes)");
    }
    report(c, since(t0));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: hcx_acceptance <hcx executable>\n";
        return 2;
    }
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(argv[1]);
    std::cout << (unexpected == 0 ? "acceptance: all criteria as expected" : "acceptance: unexpected results") << std::endl;
    return unexpected == 0 ? 0 : 1;
}
