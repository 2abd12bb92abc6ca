// Shuffle and Alexander-Whitney maps between B(A1) (x) B(A2) and B(A1 (x) A2).
#pragma once

#include "hcx/twisting.hpp"

namespace hcx {

class FormulaMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (p, q)-shuffles as output orders: entry i is the input position placed at
// slot i (inputs 0..p-1 from the first word, p..p+q-1 from the second).
// Ordered lexicographically by the slots taken by the first word.
std::vector<std::vector<int>> shuffles(int p, int q);

struct ShufflePair {
    BarCoalgebra b1, b2;   // bars of the factors at the cap
    TensorCoalgebra src;   // B(A1) (x) B(A2), total weight <= cap
    BarCoalgebra tgt;      // B(A1 (x) A2)
    int cap = 0;
    bool normalized = false;
};
// With normalized = true all three bars are normalized (factors rebased to
// augmentation-adapted bases first).
ShufflePair shuffle_pair(const Algebra& a1, const Algebra& a2, int cap, bool normalized = false);

// theta(c1 (x) c2) = theta_1(c1) eps(c2) (x) 1 + eps(c1) 1 (x) theta_2(c2)
TwistingCochain shuffle_cochain(const ShufflePair& sp);

// S as the lift of the shuffle cochain.
SparseMatrix shuffle_map(const ShufflePair& sp);
// S from the signed shuffle formula on words.
SparseMatrix shuffle_formula(const ShufflePair& sp);
// Both, compared; throws FormulaMismatch with the first differing source word.
SparseMatrix shuffle_map_checked(const ShufflePair& sp);

// AW(c1..cn) = sum_p (pi1 c1 .. pi1 cp) (x) (pi2 c_{p+1} .. pi2 cn), with
// pi1 = 1 (x) aug, pi2 = aug (x) 1. Needs both augmentations.
SparseMatrix alexander_whitney(const ShufflePair& sp);

// Columns spanning the normalized part of the source: words in letters
// a - aug(a) 1 for the non-unit basis letters a.
SparseMatrix normalized_part(const ShufflePair& sp);

}  // namespace hcx
