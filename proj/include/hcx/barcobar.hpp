// Weight-truncated bar and cobar constructions.
#pragma once

#include "hcx/graded.hpp"
#include "hcx/presentations.hpp"

#include <map>
#include <vector>

namespace hcx {

using Word = std::vector<int>;

class NonConnected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unnormalized bar construction on all of A, words of length <= cap ordered
// by (length, letters). Coalgebra degree of a word = sum(|a_i| + 1), weight =
// length. The word index is offset[length] + base-dim(A) value of the letters.
struct BarCoalgebra {
    Algebra alg;
    int cap = 0;
    std::vector<int> alphabet;    // letters in use (all of A unless normalized)
    std::vector<int> letter_pos;  // basis index -> position in alphabet or -1
    bool normalized = false;
    Coalgebra coalg;
    std::vector<Word> words;
    SparseMatrix d_internal;  // d: weight preserving
    SparseMatrix d_bprime;    // b': lowers weight by one

    int index(const Word& w) const;
    SparseMatrix differential() const { return d_internal + d_bprime; }
};

BarCoalgebra bar(const Algebra& a, int cap);

// The same algebra in the basis {1, e - aug(e) 1}; requires an augmentation
// that is a chain map and a unit that is a basis element.
Algebra augmentation_adapted(const Algebra& a);
// Normalized bar: words in the augmentation ideal only, built over the
// adapted basis. A sub-DG-coalgebra of the unnormalized bar.
BarCoalgebra normalized_bar(const Algebra& a, int cap);

// Tensor product of two coalgebras truncated at total weight <= cap, with the
// Koszul-signed coproduct. Basis order: (i, j) pairs in lexicographic order.
struct TensorCoalgebra {
    Coalgebra coalg;
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> index;
    int find(int i, int j) const;
};

TensorCoalgebra tensor_coalgebras(const Coalgebra& c1, const Coalgebra& c2, int cap);
TensorCoalgebra tensor_bar(const BarCoalgebra& b1, const BarCoalgebra& b2);

// Cobar construction on the coaugmentation coideal of C. Letters are the
// basis elements of C other than the counit element, with degree |c| - 1.
// Words are truncated by the total C-degree L = sum |c_i| <= cap; the
// differential preserves or lowers L, so the truncation is a subcomplex.
struct CobarAlgebra {
    Coalgebra coalg;
    int cap = 0;
    std::vector<int> letters;  // basis indices of C used as letters
    std::vector<int> letter_of;  // basis index -> letter index or -1
    std::vector<Word> words;     // in letter indices
    std::vector<int> deg;        // cobar degree per word
    std::vector<int> load;       // L per word
    std::map<Word, int> index;
    // Per letter: d(s^-1 c) = -s^-1(d_C c) + sum of signed pairs from the reduced coproduct.
    std::vector<std::vector<std::pair<Word, Scalar>>> letter_diff;
    SparseMatrix d_internal;
    SparseMatrix d_bprime;

    int find(const Word& w) const;
    int letter_deg(int l) const;
    SparseMatrix differential() const { return d_internal + d_bprime; }
    // As an algebra presentation (product = concatenation within the cap).
    Algebra algebra() const;
};

CobarAlgebra cobar(const Coalgebra& c, int cap);

// Chain complex of a square differential graded by the given degrees.
Complex complex_from(const SparseMatrix& d, const std::vector<int>& deg, int trusted_hi);

}  // namespace hcx
