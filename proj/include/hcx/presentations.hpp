// Finite-dimensional DG algebras and coalgebras given by structure constants.
#pragma once

#include "hcx/exactlin.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hcx {

class InvalidPresentation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownName : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The unit is required to be a basis element.
struct Algebra {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> deg;
    int unit = 0;
    std::unordered_map<std::int64_t, SparseVec> mult;  // key i*dim+j
    std::vector<SparseVec> diff;                       // empty vector = zero differential
    std::optional<std::vector<Scalar>> aug;

    int dim() const { return static_cast<int>(deg.size()); }
    const SparseVec& m(int i, int j) const;
    const SparseVec& d(int i) const;
    bool has_diff() const;
    void set_mult(int i, int j, SparseVec v);
    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
};

struct CoTerm {
    int left;
    int right;
    Scalar coef;
};

// The counit is the coordinate functional of basis element `counit`.
struct Coalgebra {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> deg;
    std::vector<int> weight;  // truncation weight; equals deg unless set otherwise
    int counit = 0;
    std::vector<std::vector<CoTerm>> comult;
    std::vector<SparseVec> diff;

    int dim() const { return static_cast<int>(deg.size()); }
    const SparseVec& d(int i) const;
    bool has_diff() const;
};

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;
    bool ok() const;
    std::string summary() const;
};

ValidationReport validate_algebra(const Algebra& a);
ValidationReport validate_coalgebra(const Coalgebra& c);
void require_valid(const Algebra& a);
void require_valid(const Coalgebra& c);

// ground_field, dual_numbers, trunc_poly(n), product_kk, upper_triangular_2.
// Short aliases k, k[e], kxk are accepted as well.
Algebra builtin(const std::string& name);
std::vector<std::string> builtin_names();

Algebra tensor_algebras(const Algebra& a1, const Algebra& a2);
Coalgebra dualize(const Algebra& a);
// Dual algebra R = C^*: product = transpose of the coproduct, unit = counit
// element, differential = transpose of the coalgebra differential.
Algebra dual_algebra(const Coalgebra& c);

}  // namespace hcx
