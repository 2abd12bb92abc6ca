// Kunneth comparison CC(A1) (x)^ CC(A2) -> CC(A1 (x) A2) through X^2 of the
// tensor product of bar coalgebras.
#pragma once

#include "hcx/shuffle.hpp"
#include "hcx/xforms.hpp"

#include <array>
#include <optional>

namespace hcx {

class SingularConstituent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoChainExtension : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All complexes and maps of the comparison at one cap. Bars are normalized,
// so the X-complexes are taken unreduced.
struct KunnethPipeline {
    int cap = 0;
    ShufflePair sp;
    SparseMatrix S;
    XComplex X1, X2;       // CC(A1), CC(A2)
    SuperComplex T;        // CC(A1) (x)^ CC(A2)
    XComplex XX;           // X^2(BA1 (x) BA2)
    XComplex X12, XX12;    // CC(A1 (x) A2) and its X^2
    SuperMap I, Sbar;      // X12 -> XX12, XX -> XX12
    SuperMap P;            // T -> XX
    std::optional<SuperMap> cq;  // XX -> T when the fixed block extends
    std::string cq_error;
};

KunnethPipeline build_pipeline(const Algebra& a1, const Algebra& a2, int cap);

SuperMap sbar(const KunnethPipeline& k);

// Entry (i, j) of F[t][n] pinned to v.
struct FixedEntry {
    int t, n, i, j;
    Scalar v;
};
// Chain map src -> tgt with the pinned entries, all other entries solved
// exactly from the chain-map equations (free entries set to zero).
// NoChainExtension names the lowest weight at which the system fails.
SuperMap solve_chain_extension(const SuperComplex& src, const SuperComplex& tgt, const std::vector<FixedEntry>& fixed,
                               const std::string& what);

// Chain map X^2(BA1 (x) BA2) -> CC(A1) (x)^ CC(A2). On C = BA1 (x) BA2 it is
// c1 (x) c2 -> c1 (x) c2 into the Omega^0 (x) Omega^0 block and zero into
// the Omega^1 (x) Omega^1 block; every other entry is solved. Does not exist
// for every pair (see tensor_to_x2).
SuperMap cq_pairing(const KunnethPipeline& k);
// Chain map CC(A1) (x)^ CC(A2) -> X^2(BA1 (x) BA2). A column is pinned to the
// shuffle product of forms whenever that product lies in X^2 (always on
// Omega^0 (x) Omega^0, where it is c1 (x) c2 -> c1 (x) c2); the remaining
// columns are solved.
SuperMap tensor_to_x2(const KunnethPipeline& k);

// Periodic homology matrices per parity, read at the tower top.
struct HomologyMaps {
    std::array<int, 2> T{};
    std::array<SparseMatrix, 2> I, Sbar, P, s_hat;
};
// H(S^) = H(I)^-1 H(Sbar) H(P); SingularConstituent if H(I) or H(P) is not
// invertible.
HomologyMaps s_hat_on_homology(const KunnethPipeline& k);

struct KunnethCapResult {
    int cap = 0;
    std::array<int, 2> T{};
    std::array<int, 2> tensor{}, cc12{}, x2{};  // periodic dims (even, odd)
    std::array<int, 2> cc1{}, cc2{};
    std::array<int, 2> rank_sbar{}, rank_i{}, rank_p{}, rank_s_hat{};
    std::array<int, 2> rank_cq_p{};  // rank of H(cq) H(P) when cq exists
    bool cq_exists = false;
    std::string cq_error;
    bool square = false;        // I o X(S) = Sbar o I on chains
    bool dim_identity = false;  // field Kunneth for the completed tensor
    bool pass = false;
    std::string error;
};

struct KunnethReport {
    std::string a1, a2;
    int cap = 0;
    KunnethCapResult lo, hi;  // caps W and W+1
    bool stable = false;
    bool verdict = false;
};

KunnethCapResult kunneth_at_cap(const Algebra& a1, const Algebra& a2, int cap);
KunnethReport kunneth_verify(const Algebra& a1, const Algebra& a2, int cap, int jobs = 1);

}  // namespace hcx
