// Graded spaces, Koszul signs, Z-graded complexes and weight-graded
// supercomplexes with their periodic (direct product) towers.
#pragma once

#include "hcx/exactlin.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace hcx {

// (-1)^(a*b)
inline int koszul_pair_sign(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

// Sign of moving element perm[i] to position i, for elements of the given
// degrees: (-1)^(number of inverted pairs of odd elements).
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

struct GradedSpace {
    std::map<int, std::vector<std::string>> comps;
    int dim(int n) const;
};

struct GradedMap {
    int shift = 0;
    std::map<int, SparseMatrix> blocks;  // source degree -> matrix
};

// Z-graded chain complex with differential of degree -1 and a trusted window.
struct Complex {
    GradedSpace space;
    GradedMap diff;  // shift -1
    int trusted_lo = 0;
    int trusted_hi = 0;

    int dim(int n) const { return space.dim(n); }
    // d_n : C_n -> C_{n-1}; an empty matrix of the right shape if absent.
    SparseMatrix d(int n) const;
    int homology_dim(int n) const;
    // Checks d_{n-1} d_n = 0 for all n; returns the first failing degree or -1.
    int first_square_failure() const;
};

Complex tensor(const Complex& x, const Complex& y);

// Supercomplex graded by a weight n in [0, cap]. Parts (t, n) with t = 0 even,
// 1 odd. V[t][n] : (t,n) -> (t,n-1); H[t][n] : (t,n) -> (1-t,n+s).
// The direct-product total in degree T is Q_T = prod_c (type (b0+c)%2, weight
// n = T - c(1+s) - off).
struct SuperComplex {
    std::string kind;
    int cap = 0;
    int s = 0;
    int b0 = 1;
    int off = -1;
    std::array<std::vector<int>, 2> dims;
    std::array<std::vector<SparseMatrix>, 2> V;
    std::array<std::vector<SparseMatrix>, 2> H;

    void resize(int cap_);
    int dim(int t, int n) const;
    // D^2 = 0 componentwise. Returns "" if it holds, else a description.
    std::string check() const;
};

// Weight-preserving map between supercomplexes with the same conventions.
struct SuperMap {
    std::array<std::vector<SparseMatrix>, 2> F;  // F[t][n]
    bool is_chain_map(const SuperComplex& src, const SuperComplex& tgt, std::string* why = nullptr) const;
};

SuperMap compose(const SuperMap& g, const SuperMap& f);

// Completed tensor: weight-n part = sum over n1+n2 = n, parities add. The
// second factor's maps carry (-1)^(t1+n1). Inside a block the index is
// i1*dim2 + i2; blocks ordered by (t1, n1).
struct TensorBlock {
    int t1, t2, n1, n2, offset, size;
};
SuperComplex completed_tensor(const SuperComplex& x, const SuperComplex& y, int cap);
std::vector<TensorBlock> tensor_blocks(const SuperComplex& x, const SuperComplex& y, int t, int n);

// ---------------------------------------------------------------- tower

struct TowerColumn {
    int c, t, n, offset;
};

std::vector<TowerColumn> tower_layout(const SuperComplex& p, int T, int* total = nullptr);
int tower_dim(const SuperComplex& p, int T);
SparseMatrix tower_D(const SuperComplex& p, int T);  // Q_T -> Q_{T-1}
SparseMatrix tower_S(const SuperComplex& p, int T);  // Q_T -> Q_{T-2}
SparseMatrix tower_map(const SuperMap& f, const SuperComplex& src, const SuperComplex& tgt, int T);

// Largest T of parity eps whose column-0 weight is within the cap.
int tower_top(const SuperComplex& p, int eps);
// Largest T for which dim H_T(Q) is fully determined by the truncation.
int tower_trusted(const SuperComplex& p);
int tower_homology_dim(const SuperComplex& p, int T);
// rank of S_* : H_T -> H_{T-2}
int stable_rank(const SuperComplex& p, int T);
// rank of (S f)_* : H_T(src) -> H_{T-2}(tgt)
int stable_map_rank(const SuperMap& f, const SuperComplex& src, const SuperComplex& tgt, int T);

// Image of S_* : H_T -> H_{T-2} with explicit coordinates.
struct StableHomology {
    int T = 0;
    Homology h;            // homology of Q_{T-2}
    SubspaceBasis image;   // in h coordinates
    SparseMatrix lift;     // column i: cycle z in Q_T with [S z] = image.vecs[i]
    int dim() const { return image.dim(); }
};
StableHomology stable_homology(const SuperComplex& p, int T);
// Matrix of f_* from src's stable image to tgt's stable image. Throws
// NotInSubspace if the image leaves tgt's stable part.
SparseMatrix stable_map(const SuperMap& f, const SuperComplex& src, const StableHomology& hs,
                        const SuperComplex& tgt, const StableHomology& ht);

// Periodic reading (even, odd) at the top of the tower.
struct PeriodicReading {
    int even = 0, odd = 0;
    int T_even = -1, T_odd = -1;
};
PeriodicReading periodic_reading(const SuperComplex& p);

}  // namespace hcx
