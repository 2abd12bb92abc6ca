// Noncommutative differential forms, X- and X^2-complexes, and the periodic
// cyclic complexes built from them.
#pragma once

#include "hcx/barcobar.hpp"
#include "hcx/graded.hpp"
#include "hcx/presentations.hpp"

#include <memory>
#include <unordered_map>

namespace hcx {

class NaturalityFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Form = std::vector<int>;  // slots r0, r1, ..., rk

struct FormHash {
    std::size_t operator()(const Form& f) const noexcept;
};

// Algebra-side forms r0 dr1 ... drk over a finite graded algebra R (unit a
// basis element), graded by form degree k <= K and total degree n <= W.
class Forms {
public:
    Forms(Algebra r, int max_degree, int max_k);

    const Algebra& base() const { return r_; }
    int max_degree() const { return w_; }
    int max_k() const { return k_; }
    int dim(int k, int n) const;
    const std::vector<Form>& basis(int k, int n) const;
    // (k, n, position) of a basis form
    struct Loc {
        int k, n, i;
    };
    Loc locate(const Form& f) const;
    int parity(const Form& f) const;
    int degree(const Form& f) const;

    SparseMatrix b(int k, int n) const;      // Omega^k_n -> Omega^{k-1}_n
    SparseMatrix d(int k, int n) const;      // Omega^k_n -> Omega^{k+1}_n
    SparseMatrix delta(int k, int n) const;  // Omega^k_n -> Omega^k_{n+t}, t = degree of R's differential

    using Terms = std::vector<std::pair<Form, Scalar>>;
    Terms b_of(const Form& f) const;
    Terms d_of(const Form& f) const;
    Terms delta_of(const Form& f) const;
    Terms rmul(const Form& f, int a) const;
    Terms lmul(int a, const Form& f) const;

private:
    SparseMatrix assemble(int k, int n, int k2, int n2, Terms (Forms::*op)(const Form&) const) const;
    Algebra r_;
    int w_, k_;
    int diff_shift_ = -1;
    std::vector<std::vector<std::vector<Form>>> basis_;  // [k][n]
    std::unordered_map<Form, Loc, FormHash> index_;
};

// Coalgebra-side forms Omega^k C = C (x) Cbar^k, realized as the formal duals
// of the algebra-side forms over R = C^*. Matrices are cached.
class CoForms {
public:
    CoForms(const Coalgebra& c, int max_degree, int max_k);
    const Forms& algebra_forms() const { return f_; }
    int dim(int k, int n) const { return f_.dim(k, n); }
    const SparseMatrix& b(int k, int n) const;      // Omega^k_n -> Omega^{k+1}_n
    const SparseMatrix& d(int k, int n) const;      // Omega^k_n -> Omega^{k-1}_n
    const SparseMatrix& delta(int k, int n) const;  // Omega^k_n -> Omega^k_{n-1}
    int counit_form_index() const;                  // position of the counit in Omega^0_0

private:
    Forms f_;
    mutable std::map<std::tuple<char, int, int>, SparseMatrix> cache_;
};

int number_operator(int k);

// Coalgebra-side X-type complex together with its ambient form data.
struct XComplex {
    SuperComplex P;
    std::shared_ptr<const CoForms> forms;
    std::array<std::vector<int>, 2> layout;  // form degrees in the even/odd ambient
    std::array<std::vector<SubspaceBasis>, 2> subs;
    bool reduced = true;

    int ambient_dim(int t, int n) const;
    int ambient_offset(int t, int n, int k) const;
};

// Cocommutator part Omega^1 C_natural = ker(b: Omega^1 -> Omega^2) per degree.
SubspaceBasis natural_part(const CoForms& f, int n);
// Degree-1 normalized forms: ker(b d + 2 d b) on Omega^1.
SubspaceBasis omega_norm1(const CoForms& f, int n);
// Omega^2_natural: ker b on Omega^2 intersected with ker(b d).
SubspaceBasis natural_part2(const CoForms& f, int n);

// Reduced X-complex: even part C with the counit line removed, odd part
// Omega^1 C_natural. Parts graded by coalgebra degree n <= cap.
XComplex x_complex(const Coalgebra& c, int cap, bool reduced = true);
XComplex x_complex(std::shared_ptr<const CoForms> f, int cap, bool reduced = true);
XComplex x2_complex(const Coalgebra& c, int cap, bool reduced = true);
XComplex x2_complex(std::shared_ptr<const CoForms> f, int cap, bool reduced = true);

// The inclusion X(C) -> X^2(C).
SuperMap inclusion_I(const XComplex& x, const XComplex& x2);

// Map of X-type complexes induced slotwise by a degree-0 coalgebra map g
// (columns = source basis, rows = target basis) that preserves the counit.
SuperMap induced_map(const SparseMatrix& g, const XComplex& src, const XComplex& tgt);

// Algebra side, finite algebra: X(A) = A <-> Omega^1 A_natural.
struct AlgebraX {
    SuperComplex P;
    int dim_even = 0, dim_odd = 0;
};
// Commutator quotient Omega^1 A / [A, Omega^1 A] with a projection and the
// basis forms used as a section.
struct NaturalQuotient {
    int dim = 0;
    SparseMatrix projection;
    std::vector<int> section;
};
NaturalQuotient natural_quotient(const Forms& f, int n);
AlgebraX x_complex_algebra(const Algebra& a);

// CC(A) := reduced X of the bar coalgebra.
XComplex cc_of_algebra(const Algebra& a, int cap);

// CC(C) := X of the cobar algebra (algebra side, quasi-free model
// Omega^1_natural = R (x) V), graded by cobar degree, truncated by the total
// C-degree of the letters.
struct CobarX {
    SuperComplex P;
    CobarAlgebra cobar;
    bool reduced = true;
};
CobarX cc_of_coalgebra(const Coalgebra& c, int cap, bool reduced = true);
// Cycles of tower level T need letters of total degree about T + 4, so
// dim H_T is trusted for T <= cap - 4 only (may be negative). The periodic
// reading is the stable rank at the highest trusted even level and the odd
// level above it; below cap 6 it is unavailable (even = odd = -1).
int cc_trusted(const CobarX& x);
PeriodicReading cc_reading(const CobarX& x);

// Normalized (b, B) mixed complex of an ungraded algebra, Hochschild degree <= cap.
SuperComplex connes_tsygan_total(const Algebra& a, int cap);
std::vector<int> hochschild_dims(const Algebra& a, int cap);

}  // namespace hcx
