// Invariant suites shared by the selftest command and the acceptance run.
#pragma once

#include "hcx/kunneth.hpp"
#include "hcx/shuffle.hpp"
#include "hcx/xforms.hpp"

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hcx {

struct CheckResult {
    std::string suite;
    std::string subject;
    bool pass = false;
    std::string detail;
};

// to_text, parse and to_text again give the same text and the same constants.
CheckResult text_round_trip(const Algebra& a);

// d^2 = 0, b'^2 = 0, d b' + b' d = 0 on the bar at the cap.
CheckResult bar_square_zero(const Algebra& a, int cap);
// The same identities on the cobar of a connected coalgebra.
CheckResult cobar_square_zero(const Coalgebra& c, int cap);

// Universal cochain is twisting; lift(universal) = id; corestrict(id) = universal.
CheckResult twisting_universal(const Algebra& a, int cap);
// The shuffle cochain is twisting, corestrict(lift(theta)) = theta and
// lift(corestrict(S)) = S.
CheckResult twisting_round_trip(const Algebra& a1, const Algebra& a2, int cap);

// Lift against the explicit shuffle formula, coalgebra and chain map checks.
CheckResult shuffle_suite(const Algebra& a1, const Algebra& a2, int cap, bool normalized);
// AW o S = id on the whole source. Holds on normalized bars; on the
// unnormalized bar it fails and the detail names a witness.
CheckResult aw_after_shuffle(const Algebra& a1, const Algebra& a2, int cap, bool normalized);
// AW o S restricted to the normalized part of the unnormalized source.
CheckResult aw_on_normalized_part(const Algebra& a1, const Algebra& a2, int cap);

struct QuillenRow {
    int T = 0;
    int x = 0, bb = 0;
};
struct QuillenResult {
    std::vector<QuillenRow> rows;  // tower levels in the common trusted range
    PeriodicReading x, bb;
    bool pass = false;
};
// dim H_T of the reduced X(BA) against the (b, B) oracle, plus the periodic
// readings. Ungraded algebras without differential only.
QuillenResult quillen_check(const Algebra& a, int cap);

struct HPPipeline {
    std::string name;
    PeriodicReading lo, hi;  // caps W and W+1
};
struct HPResult {
    int cap = 0;
    std::vector<HPPipeline> pipelines;
    int even = 0, odd = 0;
    bool stable = false;  // every pipeline and both caps agree
};
// x_bar: reduced X of the unnormalized bar. bB: (b, B) oracle (ungraded, no
// differential). x_normalized_bar: unreduced X of the normalized bar (needs
// an augmentation).
HPResult hp_algebra(const Algebra& a, int cap, int jobs = 1);
// x: X(C), unreduced. cobar: unreduced X of the cobar, read in its trusted range
// (cap >= 6, connected C only).
HPResult hp_coalgebra(const Coalgebra& c, int cap, int jobs = 1);

struct XvsCC {
    std::vector<QuillenRow> rows;  // x = X-type complex, bb = cobar CC
    PeriodicReading x, cc;
    bool pass = false;
};
// X(bar A) against CC(bar A) from the cobar.
XvsCC x_vs_cc_bar(const Algebra& a, int cap);
// X^2(BA1 (x) BA2) against CC of the same coalgebra: periodic dims only.
XvsCC x2_vs_cc_tensor(const Algebra& a1, const Algebra& a2, int cap);

// Runs f(0..n-1) on up to `jobs` threads; results land in index order.
template <class R>
std::vector<R> parallel_map(int n, int jobs, const std::function<R(int)>& f) {
    std::vector<std::optional<R>> out(n);
    std::vector<std::exception_ptr> err(n);
    auto run = [&](int i) {
        try {
            out[i] = f(i);
        } catch (...) {
            err[i] = std::current_exception();
        }
    };
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) run(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(jobs, n); ++t)
            pool.emplace_back([&] {
                for (int i; (i = next++) < n;) run(i);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<R> res;
    for (int i = 0; i < n; ++i) {
        if (err[i]) std::rethrow_exception(err[i]);
        res.push_back(std::move(*out[i]));
    }
    return res;
}

}  // namespace hcx
